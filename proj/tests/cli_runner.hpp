// Runs the cone-hull executable and captures exit code, stdout and stderr.
#ifndef CONE_HULL_TESTS_CLI_RUNNER_HPP
#define CONE_HULL_TESTS_CLI_RUNNER_HPP

#include <fcntl.h>
#include <spawn.h>
#include <sys/wait.h>
#include <unistd.h>

#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

extern char** environ;

namespace cli {

struct Result {
    int code = -1;
    std::string out;
    std::string err;
};

inline std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

inline std::filesystem::path scratch_dir() {
    static const std::filesystem::path dir = [] {
        std::string tmpl = (std::filesystem::temp_directory_path() / "cone-hull-test-XXXXXX").string();
        if (!mkdtemp(tmpl.data())) throw std::runtime_error("mkdtemp failed");
        return std::filesystem::path(tmpl);
    }();
    return dir;
}

inline std::filesystem::path write_temp(const std::string& name, const std::string& text) {
    const auto p = scratch_dir() / name;
    std::ofstream(p, std::ios::binary) << text;
    return p;
}

// extra_env entries look like "NAME=value"
inline Result run(const std::string& exe, const std::vector<std::string>& args,
                  const std::vector<std::string>& extra_env = {}) {
    static int counter = 0;
    const auto base = scratch_dir() / ("run" + std::to_string(counter++));
    const std::string out_path = base.string() + ".out", err_path = base.string() + ".err";

    std::vector<std::string> argv_s{exe};
    argv_s.insert(argv_s.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& a : argv_s) argv.push_back(a.data());
    argv.push_back(nullptr);

    std::vector<std::string> env_s;
    for (char** e = environ; *e; ++e) env_s.emplace_back(*e);
    env_s.insert(env_s.end(), extra_env.begin(), extra_env.end());
    std::vector<char*> envp;
    for (auto& e : env_s) envp.push_back(e.data());
    envp.push_back(nullptr);

    posix_spawn_file_actions_t fa;
    posix_spawn_file_actions_init(&fa);
    posix_spawn_file_actions_addopen(&fa, 1, out_path.c_str(), O_WRONLY | O_CREAT | O_TRUNC, 0644);
    posix_spawn_file_actions_addopen(&fa, 2, err_path.c_str(), O_WRONLY | O_CREAT | O_TRUNC, 0644);
    pid_t pid = 0;
    const int rc = posix_spawn(&pid, exe.c_str(), &fa, nullptr, argv.data(), envp.data());
    posix_spawn_file_actions_destroy(&fa);
    if (rc != 0) throw std::runtime_error("cannot spawn " + exe);
    int status = 0;
    waitpid(pid, &status, 0);

    Result r;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(out_path);
    r.err = slurp(err_path);
    std::filesystem::remove(out_path);
    std::filesystem::remove(err_path);
    return r;
}

struct Demo {
    std::string name;
    std::vector<std::string> args;
};

// Reads demos/manifest.json into argument lists for `run`.
inline std::vector<Demo> demos(const std::filesystem::path& dir) {
    const auto m = nlohmann::json::parse(slurp(dir / "manifest.json"));
    std::vector<Demo> out;
    for (const auto& d : m.at("demos")) {
        Demo demo{d.at("name").get<std::string>(), {}};
        for (const auto& c : d.at("command")) demo.args.push_back(c.get<std::string>());
        demo.args.insert(demo.args.end(), {"--input", (dir / d.at("input").get<std::string>()).string(), "--format",
                                           d.at("format").get<std::string>()});
        if (d.contains("seed")) demo.args.insert(demo.args.end(), {"--seed", std::to_string(d.at("seed").get<long long>())});
        if (d.contains("m")) demo.args.insert(demo.args.end(), {"--m", std::to_string(d.at("m").get<long long>())});
        out.push_back(std::move(demo));
    }
    return out;
}

}  // namespace cli

#endif
