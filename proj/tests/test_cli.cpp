#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cli_runner.hpp"
#include "io.hpp"

#include "cone_hull/polytope.hpp"

#include <cmath>
#include <sstream>

using namespace cone_hull;

namespace {

const std::string exe = CONE_HULL_EXE;
const std::filesystem::path demo_dir = DEMO_DIR;

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> cells;
        std::istringstream l(line);
        std::string cell;
        while (std::getline(l, cell, ',')) cells.push_back(cell);
        rows.push_back(cells);
    }
    return rows;
}

std::string reprint(const std::string& json_text) {
    std::ostringstream o;
    io::write_json(io::Json::parse(json_text), o);
    return o.str();
}

}  // namespace

TEST_CASE("vsk grid on the torus reproduces the support function") {
    const auto r = cli::run(exe, {"vsk", "grid", "--input", (demo_dir / "torus_simplex.json").string(), "--format", "csv"});
    REQUIRE(r.code == 0);
    const auto rows = csv_rows(r.out);
    REQUIRE(rows.size() == 82);
    CHECK(rows[0] == std::vector<std::string>{"x_1", "x_2", "value", "s_1", "s_2"});
    const auto s = RationalPolytope::simplex(2);
    for (std::size_t i = 1; i < rows.size(); ++i) {
        VectorQ x(2);
        x << parse_rational(rows[i][0]), parse_rational(rows[i][1]);
        CHECK(std::stod(rows[i][2]) == to_double(support(s, x)));
    }
}

TEST_CASE("grid flag overrides the document") {
    const auto r = cli::run(exe, {"vsk", "grid", "--input", (demo_dir / "torus_simplex.json").string(), "--format", "csv",
                                  "--grid", "0:1:2", "--grid", "1/2:1/2:1"});
    REQUIRE(r.code == 0);
    CHECK(r.out == "x_1,x_2,value,s_1,s_2\n0,0.5,0.5,0,1\n1,0.5,1,1,0\n");
}

TEST_CASE("schema errors exit 2 with a field path") {
    auto bad = cli::write_temp("bad.json", "{\"S\": {\"dim\": 2, \"vertices\": [[0, 0], [1");
    auto r = cli::run(exe, {"vsk", "eval", "--input", bad.string()});
    CHECK(r.code == 2);
    CHECK(r.err.find("$: malformed JSON") != std::string::npos);
    CHECK(r.out.empty());

    bad = cli::write_temp("bad_field.json", R"({"S": {"dim": 2, "vertices": [[0, 0], [1, "q"]]}, "x": [0, 0]})");
    r = cli::run(exe, {"vsk", "eval", "--input", bad.string()});
    CHECK(r.code == 2);
    CHECK(r.err.find("$.S.vertices[1][1]") != std::string::npos);

    bad = cli::write_temp("unknown.json", R"({"S": {"dim": 1, "vertices": [[0], [1]]}, "x": [0], "colour": 1})");
    r = cli::run(exe, {"vsk", "eval", "--input", bad.string()});
    CHECK(r.code == 2);
    CHECK(r.err.find("$.colour") != std::string::npos);

    bad = cli::write_temp("piece.json",
                          R"({"S": {"dim": 2, "vertices": [[0, 0], [1, 0]]}, "K": {"dim": 2, "pieces": [{"J": [3], "A": [[0]]}]}, "x": [0, 0]})");
    r = cli::run(exe, {"vsk", "eval", "--input", bad.string()});
    CHECK(r.code == 2);
    CHECK(r.err.find("$.K.pieces[0].J") != std::string::npos);

    r = cli::run(exe, {"vsk", "eval"});
    CHECK(r.code == 2);
    r = cli::run(exe, {"nonsense"});
    CHECK(r.code == 2);
}

TEST_CASE("precondition violation exits 2 and names the hypothesis") {
    const auto in = cli::write_temp(
        "pre.json",
        R"({"S": {"dim": 2, "vertices": [[0, 0], [1, 0]]}, "K": {"dim": 2, "pieces": [{"J": [1], "A": [[0]]}]}, "x": [1, 2]})");
    const auto r = cli::run(exe, {"vsk", "eval", "--input", in.string()});
    CHECK(r.code == 2);
    CHECK(r.err.find("S ∩ R^{*n}_+ = ∅") != std::string::npos);
    CHECK(r.err.find("axis piece") != std::string::npos);

    const auto beta = cli::write_temp("beta.json", R"({"S": {"dim": 2, "vertices": [[0, 0], [1, 0], [0, 1]]}, "beta": [1, 0]})");
    CHECK(cli::run(exe, {"approx", "escape", "--input", beta.string()}).code == 2);
}

TEST_CASE("budget override exits 3") {
    const auto in = cli::write_temp("budget.json", R"({"S": {"dim": 2, "vertices": [[0, 0], [1, 0], [1, 1]]}, "m": 300})");
    CHECK(cli::run(exe, {"polytope", "exponents", "--input", in.string()}, {"CONE_HULL_BUDGET=50"}).code == 3);
    CHECK(cli::run(exe, {"polytope", "exponents", "--input", in.string(), "--m", "3"}, {"CONE_HULL_BUDGET=50"}).code == 0);
    CHECK(cli::run(exe, {"polytope", "exponents", "--input", in.string()}, {"CONE_HULL_BUDGET=lots"}).code == 2);
}

TEST_CASE("float literals switch to floating arithmetic") {
    const auto exact = cli::write_temp("e.json", R"({"S": {"dim": 2, "vertices": [[0, 0], [1, 1]]}, "x": ["1/3", 1]})");
    const auto flt = cli::write_temp("f.json", R"({"S": {"dim": 2, "vertices": [[0, 0], [1, 1]]}, "x": [0.25, 1]})");
    const auto a = io::Json::parse(cli::run(exe, {"vsk", "eval", "--input", exact.string()}).out);
    const auto b = io::Json::parse(cli::run(exe, {"vsk", "eval", "--input", flt.string()}).out);
    CHECK(a["arithmetic"] == "exact");
    CHECK(a["value_exact"] == "4/3");
    CHECK(b["arithmetic"] == "floating");
    CHECK(b["value"].get<double>() == doctest::Approx(1.25));
}

TEST_CASE("runge demo report respects the analytic tail") {
    const auto r = cli::run(exe, {"approx", "run", "--input", (demo_dir / "runge_geometric.json").string()});
    REQUIRE(r.code == 0);
    const auto j = io::Json::parse(r.out);
    CHECK(j["report"]["sup_err_hull"].get<double>() <= std::pow(4.0, -5) / 3 * (1 + 1e-12));
    CHECK(j["report"]["norm_equality_holds"] == true);
    CHECK(j["rows"].size() == 21);
}

TEST_CASE("outputs are deterministic and round-trip") {
    for (const auto& d : cli::demos(demo_dir)) {
        CAPTURE(d.name);
        const auto first = cli::run(exe, d.args);
        REQUIRE(first.code == 0);
        CHECK(cli::run(exe, d.args).out == first.out);
        const bool json = std::find(d.args.begin(), d.args.end(), "json") != d.args.end();
        if (json) CHECK(reprint(first.out) == first.out);
    }

    // an emitted polytope feeds back in as an input polytope
    const auto in = cli::write_temp("sec.json", R"({"S": {"dim": 3, "vertices": [["0","0","0"],["2","0","1"],["0","2","1/2"]]}, "J": [1, 3]})");
    const auto sec = io::Json::parse(cli::run(exe, {"polytope", "section", "--input", in.string()}).out);
    io::Json again{{"S", sec["section"]}, {"xi", {1, 1}}};
    const auto back = cli::write_temp("back.json", again.dump());
    const auto r = cli::run(exe, {"polytope", "support", "--input", back.string()});
    REQUIRE(r.code == 0);
    CHECK(io::Json::parse(r.out)["value_exact"] == "3");

    const auto out_file = cli::scratch_dir() / "written.json";
    const auto w = cli::run(exe, {"polytope", "section", "--input", in.string(), "--out", out_file.string()});
    CHECK(w.code == 0);
    CHECK(w.out.empty());
    CHECK(cli::slurp(out_file) == cli::run(exe, {"polytope", "section", "--input", in.string()}).out);
}
