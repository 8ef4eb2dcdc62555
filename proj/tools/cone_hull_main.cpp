#include "io.hpp"

#include "cone_hull/approx.hpp"
#include "cone_hull/errors.hpp"
#include "cone_hull/exact_linalg.hpp"
#include "cone_hull/extremal.hpp"
#include "cone_hull/lattice.hpp"
#include "cone_hull/polytope.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>

using namespace cone_hull;
using io::Json;
using io::to_json;

namespace {

struct Context {
    io::Document doc;
    std::uint64_t seed = 0;
    std::optional<double> tol;
    std::optional<long long> m;
    std::vector<std::string> grid;
    std::uint64_t budget = kDefaultEnumerationBudget;
};

std::uint64_t budget_from_env() {
    const char* env = std::getenv("CONE_HULL_BUDGET");
    if (!env || !*env) return kDefaultEnumerationBudget;
    try {
        std::size_t used = 0;
        const unsigned long long b = std::stoull(env, &used);
        if (used != std::string(env).size() || b == 0) throw std::invalid_argument(env);
        return b;
    } catch (const std::exception&) {
        throw SchemaError(std::string("CONE_HULL_BUDGET: expected a positive integer, got '") + env + "'");
    }
}

long long scale_m(const Context& c) {
    long long m = c.m ? *c.m : c.doc.integer("m");
    if (m < 1) throw SchemaError("$.m: m must be >= 1");
    return m;
}

Json to_json_s(const VectorQ& v) { return to_json(v); }
Json to_json_s(const VectorXd& v) { return to_json(v); }

ReinhardtBody<Rational> body_or_torus(const Context& c, Eigen::Index n) {
    return c.doc.has("K") ? c.doc.body(n) : ReinhardtBody<Rational>::torus(n);
}

Json polytope_json(const RationalPolytope& s) {
    Json v = Json::array();
    for (const auto& p : s.vertices()) v.push_back(to_json(p));
    return Json{{"dim", s.dim()}, {"vertices", v}};
}

Json point_row(const char* prefix, const VectorXd& x) {
    Json row = Json::object();
    for (Eigen::Index j = 0; j < x.size(); ++j) row[std::string(prefix) + std::to_string(j + 1)] = x(j);
    return row;
}

// polytope ------------------------------------------------------------------

Json polytope_support(const Context& c) {
    const auto s = c.doc.polytope();
    const VectorQ xi = c.doc.rational_vector("xi", s.dim());
    const Rational v = support(s, xi);
    return Json{{"xi", to_json(xi)}, {"value", to_double(v)}, {"value_exact", to_json(v)}};
}

Json polytope_contains(const Context& c) {
    const auto s = c.doc.polytope();
    const VectorQ x = c.doc.rational_vector("x", s.dim());
    const auto cert = contains(s, x);
    Json out{{"x", to_json(x)}, {"inside", cert.inside}};
    if (cert.inside) {
        Json w = Json::array();
        for (std::size_t i = 0; i < s.vertices().size(); ++i) {
            const Rational& l = cert.weights(static_cast<Eigen::Index>(i));
            if (l != 0) w.push_back(Json{{"vertex", to_json(s.vertices()[i])}, {"weight", to_json(l)}});
        }
        out["weights"] = w;
    } else {
        out["separator"] = to_json(cert.separator);
        out["separator_support"] = to_json(support(s, cert.separator));
        out["separator_value"] = to_json(cert.separator.dot(x));
    }
    return out;
}

Json polytope_refine(const Context& c) {
    const auto s = c.doc.polytope();
    const long long m = scale_m(c);
    const auto r = refine(s, m, c.budget);
    Json out = polytope_json(r);
    out = Json{{"m", m}, {"refined", out}};
    return out;
}

Json polytope_exponents(const Context& c) {
    const auto s = c.doc.polytope();
    const long long m = scale_m(c);
    const auto e = enumerate_exponents(s, m, c.budget);
    Json rows = Json::array();
    for (const auto& p : e.points) {
        Json row = Json::object();
        for (Eigen::Index j = 0; j < p.size(); ++j) row["a_" + std::to_string(j + 1)] = p(j);
        rows.push_back(row);
    }
    return Json{{"m", m}, {"count", e.points.size()}, {"rows", rows}};
}

Json distance_json(const LatticeDistance& d) {
    return Json{{"distance", d.distance}, {"exact", to_json(d.exact)}, {"nearest", to_json(d.nearest)},
                {"box", d.box},           {"bound", d.bound},          {"bound_holds", d.bound_holds}};
}

Json polytope_distance(const Context& c) {
    const auto s = c.doc.polytope();
    if (!c.doc.has("m_max")) return distance_json(lattice_distance(s));
    const long long m_max = c.doc.integer("m_max");
    if (m_max < 1) throw SchemaError("$.m_max: must be >= 1");
    Json rows = Json::array();
    for (const auto& r : distance_growth(s, m_max, DistanceNorm::Euclidean, c.budget))
        rows.push_back(Json{{"m", r.m},
                            {"d_m", r.d_m},
                            {"root", r.root},
                            {"root_bound", r.root_bound},
                            {"full_dimensional", r.full_dimensional},
                            {"holds", r.holds}});
    return Json{{"m_max", m_max}, {"rows", rows}};
}

Json polytope_dual(const Context& c) {
    const auto s = c.doc.polytope();
    const auto cone = dual_cone(s);
    Json gens = Json::array(), halves = Json::array();
    for (const auto& g : cone.generators) gens.push_back(to_json(g));
    for (const auto& h : cone.dual_halfspaces) halves.push_back(to_json(h));
    Json out{{"dim", cone.dim}, {"cone_generators", gens}, {"dual_halfspaces", halves}};
    if (cone.dual_generators) {
        Json rays = Json::array(), lin = Json::array();
        for (const auto& r : cone.dual_generators->rays) rays.push_back(to_json(r));
        for (const auto& l : cone.dual_generators->lineality) lin.push_back(to_json(l));
        out["dual_generators"] = Json{{"rays", rays}, {"lineality", lin}};
    }
    return out;
}

Json polytope_section(const Context& c) {
    const auto s = c.doc.polytope();
    const auto J = c.doc.index_set("J", s.dim());
    Json jj = Json::array();
    for (auto j : J) jj.push_back(j + 1);
    return Json{{"J", jj}, {"section", polytope_json(section(s, J))}};
}

// lattice -------------------------------------------------------------------

Json lattice_independent(const Context& c) {
    const auto s = c.doc.polytope();
    const auto alphas = independent_exponents(s);
    MatrixZ m(s.dim(), s.dim());
    Json a = Json::array();
    for (std::size_t k = 0; k < alphas.size(); ++k) {
        m.col(static_cast<Eigen::Index>(k)) = alphas[k].cast<BigInt>();
        a.push_back(to_json(alphas[k]));
    }
    return Json{{"alphas", a}, {"determinant", determinant(m).str()}};
}

Json lattice_separate(const Context& c) {
    const auto s = c.doc.polytope();
    const VectorXcd z = c.doc.complex_vector("z", s.dim());
    const VectorXcd w = c.doc.complex_vector("w", s.dim());
    const auto cert = separate_points(s, z, w);
    return Json{{"alpha", to_json(cert.alpha)},
                {"witness_kind", cert.witness_kind == WitnessKind::ModulusDiffers ? "modulus-differs" : "argument-differs"},
                {"z_alpha", to_json(monomial(z, cert.alpha))},
                {"w_alpha", to_json(monomial(w, cert.alpha))},
                {"difference", cert.difference}};
}

Json lattice_fibers(const Context& c) {
    const auto s = c.doc.polytope();
    const auto map = fiber_structure(s);
    auto columns = [](const MatrixZ& m) {
        Json out = Json::array();
        for (Eigen::Index k = 0; k < m.cols(); ++k) out.push_back(to_json(VectorZ(m.col(k))));
        return out;
    };
    Json t_verts = Json::array();
    for (const auto& v : map.T_vertices) t_verts.push_back(to_json(v));
    Json out{{"ell", map.ell},
             {"L_columns", columns(map.matrix_L)},
             {"kernel_generators", columns(map.kernel_gens)},
             {"T_vertices", t_verts},
             {"minor_gcd", map.ell > 0 ? maximal_minor_gcd(map.matrix_L).str() : std::string("1")}};
    if (c.doc.has("z")) {
        const VectorXcd z = c.doc.complex_vector("z", s.dim());
        out["F_L_z"] = to_json(map.apply(z));
        if (c.doc.has("t")) {
            const VectorXcd y = fiber_through(map, z, c.doc.complex_vector("t", s.dim() - map.ell));
            out["fiber_point"] = to_json(y);
            out["F_L_fiber_point"] = to_json(map.apply(y));
        }
    }
    return out;
}

Json lattice_pullback(const Context& c) {
    const Json& raw = c.doc.root().at("alphas");
    if (!raw.is_array() || raw.empty()) throw SchemaError("$.alphas: expected a nonempty array of exponent vectors");
    const auto n = static_cast<Eigen::Index>(raw.size());
    const auto alphas = c.doc.lattice_points("alphas", n);
    const auto box = proper_box_pullback(alphas, c.doc.real("R"), c.doc.real("r"));
    Json sides = Json::array();
    for (const auto& [lo, hi] : box.sides) sides.push_back(Json::array({lo, hi}));
    return Json{{"box", sides}};
}

// vsk -----------------------------------------------------------------------

template <typename Scalar>
Json vsk_value_json(const VskValue<Scalar>& v) {
    Json out{{"value", to_double(v.value)}};
    if constexpr (std::is_same_v<Scalar, Rational>) out["value_exact"] = to_json(v.value);
    out["maximizer_s"] = to_json_s(v.maximizer_s);
    out["active_a"] = to_json_s(v.active_a);
    return out;
}

template <typename Scalar>
Vector<Scalar> as_scalar(const VectorQ& v) {
    if constexpr (std::is_same_v<Scalar, Rational>) return v;
    else return to_double(v);
}

// Runs f<Rational> or f<double> depending on whether the inputs were all exact.
template <typename F>
Json with_arithmetic(const Context& c, F&& f) {
    Json out = c.doc.floating() ? f(double{}) : f(Rational{});
    out["arithmetic"] = c.doc.floating() ? "floating" : "exact";
    return out;
}

Json vsk_eval(const Context& c) {
    const auto s = c.doc.polytope();
    const auto k = body_or_torus(c, s.dim());
    const VectorQ x = c.doc.rational_vector("x", s.dim());
    return with_arithmetic(c, [&](auto tag) {
        using Scalar = decltype(tag);
        Json out{{"x", to_json(x)}};
        out.update(vsk_value_json(eval_vsk(s, k.template cast<Scalar>(), as_scalar<Scalar>(x))));
        return out;
    });
}

struct GridAxis {
    Rational lo, hi;
    long long steps;
};

std::vector<GridAxis> grid_axes(const Context& c, Eigen::Index n) {
    std::vector<std::string> specs = c.grid;
    if (specs.empty() && c.doc.has("grid")) specs = c.doc.strings("grid");
    if (static_cast<Eigen::Index>(specs.size()) != n)
        throw SchemaError("grid: need one xmin:xmax:steps entry per coordinate (" + std::to_string(n) + ")");
    std::vector<GridAxis> out;
    for (std::size_t i = 0; i < specs.size(); ++i) {
        const std::string where = "grid[" + std::to_string(i) + "]";
        const auto a = specs[i].find(':');
        const auto b = a == std::string::npos ? a : specs[i].find(':', a + 1);
        if (b == std::string::npos) throw SchemaError(where + ": expected xmin:xmax:steps");
        try {
            GridAxis g{parse_rational(specs[i].substr(0, a)), parse_rational(specs[i].substr(a + 1, b - a - 1)), 0};
            const Rational steps = parse_rational(specs[i].substr(b + 1));
            if (denominator(steps) != 1 || steps < 1) throw SchemaError("steps must be a positive integer");
            g.steps = numerator(steps).convert_to<long long>();
            if (g.steps == 1 && g.lo != g.hi) throw SchemaError("one step needs xmin = xmax");
            out.push_back(g);
        } catch (const SchemaError& e) {
            throw SchemaError(where + ": " + e.what());
        }
    }
    return out;
}

Json vsk_grid(const Context& c) {
    const auto s = c.doc.polytope();
    const auto k = body_or_torus(c, s.dim());
    const auto axes = grid_axes(c, s.dim());
    const Eigen::Index n = s.dim();
    return with_arithmetic(c, [&](auto tag) {
        using Scalar = decltype(tag);
        const auto ks = k.template cast<Scalar>();
        Json rows = Json::array();
        std::vector<long long> idx(static_cast<std::size_t>(n), 0);
        for (;;) {
            VectorQ x(n);
            for (Eigen::Index j = 0; j < n; ++j) {
                const auto& g = axes[static_cast<std::size_t>(j)];
                x(j) = g.steps == 1 ? g.lo : g.lo + (g.hi - g.lo) * Rational(idx[static_cast<std::size_t>(j)]) / Rational(g.steps - 1);
            }
            const auto v = eval_vsk(s, ks, as_scalar<Scalar>(x));
            Json row = point_row("x_", to_double(x));
            row["value"] = to_double(v.value);
            for (Eigen::Index j = 0; j < n; ++j) row["s_" + std::to_string(j + 1)] = to_double(v.maximizer_s(j));
            rows.push_back(row);
            // first coordinate varies slowest
            Eigen::Index j = n - 1;
            while (j >= 0 && ++idx[static_cast<std::size_t>(j)] == axes[static_cast<std::size_t>(j)].steps) idx[static_cast<std::size_t>(j--)] = 0;
            if (j < 0) break;
        }
        return Json{{"rows", rows}};
    });
}

Json vsk_hull(const Context& c) {
    const auto s = c.doc.polytope();
    const auto k = body_or_torus(c, s.dim());
    const VectorQ x = c.doc.rational_vector("x", s.dim());
    return with_arithmetic(c, [&](auto tag) {
        using Scalar = decltype(tag);
        const auto cert = hull_membership(s, k.template cast<Scalar>(), as_scalar<Scalar>(x));
        Json out{{"x", to_json(x)}, {"inside", cert.inside}};
        if (cert.inside) {
            out["a"] = to_json_s(cert.a);
            out["t"] = to_json_s(cert.t);
        } else {
            out["separator"] = to_json_s(cert.separator);
            out["margin"] = to_double(cert.margin);
        }
        return out;
    });
}

Json vsk_siciak(const Context& c) {
    const auto s = c.doc.polytope();
    const auto k = body_or_torus(c, s.dim());
    const VectorQ x = c.doc.rational_vector("x", s.dim());
    const long long m = scale_m(c);
    return with_arithmetic(c, [&](auto tag) {
        using Scalar = decltype(tag);
        const auto ks = k.template cast<Scalar>();
        const Scalar sm = siciak_monomial(s, ks, m, as_scalar<Scalar>(x), c.budget);
        const Scalar v = eval_vsk(s, ks, as_scalar<Scalar>(x)).value;
        return Json{{"m", m}, {"x", to_json(x)}, {"siciak", to_double(sm)}, {"vsk", to_double(v)}, {"gap", to_double(Scalar(v - sm))}};
    });
}

Json vsk_axes(const Context& c) {
    const auto s = c.doc.polytope();
    const auto k = body_or_torus(c, s.dim());
    const auto J = c.doc.index_set("J", s.dim());
    const VectorQ x = c.doc.rational_vector("x", static_cast<Eigen::Index>(J.size()));
    return with_arithmetic(c, [&](auto tag) {
        using Scalar = decltype(tag);
        Json jj = Json::array();
        for (auto j : J) jj.push_back(j + 1);
        const Scalar v = vsk_on_axes(s, k.template cast<Scalar>(), J, as_scalar<Scalar>(x));
        return Json{{"J", jj}, {"x", to_json(x)}, {"value", to_double(v)}};
    });
}

Json vsk_sample(const Context& c) {
    const auto s = c.doc.polytope();
    const auto k = body_or_torus(c, s.dim()).cast<double>();
    const double depth = c.doc.has("depth") ? c.doc.real("depth") : 5.0;
    const long long count = c.doc.has("count") ? c.doc.integer("count") : 100;
    if (count < 0) throw SchemaError("$.count: must be >= 0");
    Json rows = Json::array();
    for (const auto& p : hull_sampler(s, k, depth, static_cast<std::size_t>(count), c.seed)) rows.push_back(point_row("x_", p));
    return Json{{"depth", depth}, {"seed", c.seed}, {"rows", rows}};
}

// approx --------------------------------------------------------------------

Json approx_run(const Context& c) {
    const auto s = c.doc.polytope();
    const auto k = body_or_torus(c, s.dim()).cast<double>();
    const auto f = c.doc.series(s);
    const long long N = c.doc.integer("N");
    const double depth = c.doc.has("depth") ? c.doc.real("depth") : 5.0;
    const long long count = c.doc.has("count") ? c.doc.integer("count") : 200;
    if (N < 0) throw SchemaError("$.N: must be >= 0");
    if (count < 1) throw SchemaError("$.count: must be >= 1");
    const double tol = c.tol.value_or(1e-6);

    const auto rep = hull_vs_K_gap(f, N, k, depth, static_cast<std::size_t>(count), c.seed, tol);
    const auto tr = truncate(f, N);
    Json report{{"N", rep.N},
                {"m_N", rep.m_N},
                {"critical_alpha", tr.critical_alpha ? to_json(*tr.critical_alpha) : Json(nullptr)},
                {"retained_terms", tr.terms.size()},
                {"sup_err_K", rep.sup_err_K},
                {"sup_err_hull", rep.sup_err_hull},
                {"sup_f_K", rep.sup_f_K},
                {"sup_f_hull", rep.sup_f_hull},
                {"k_samples", rep.k_samples},
                {"hull_samples", rep.hull_samples},
                {"norm_equality_holds", rep.norm_equality_holds}};

    const long long lo = c.doc.has("N_min") ? c.doc.integer("N_min") : N;
    const long long hi = c.doc.has("N_max") ? c.doc.integer("N_max") : N;
    if (lo < 0 || hi < lo) throw SchemaError("$.N_min: need 0 <= N_min <= N_max");
    const auto k_pts = hull_sampler(s, k, 0.0, static_cast<std::size_t>(count), c.seed);
    const auto hull_pts = hull_sampler(s, k, depth, static_cast<std::size_t>(count), c.seed);
    Json rows = Json::array();
    for (long long n = lo; n <= hi; ++n)
        rows.push_back(Json{{"N", n},
                            {"m_N", truncate(f, n).m_N},
                            {"sup_err_K", sup_error(f, n, k_pts)},
                            {"sup_err_hull", sup_error(f, n, hull_pts)}});
    return Json{{"depth", depth}, {"seed", c.seed}, {"report", report}, {"rows", rows}};
}

Json approx_escape(const Context& c) {
    const auto s = c.doc.polytope();
    const LatticeVector beta = c.doc.lattice_vector("beta", s.dim());
    std::vector<VectorQ> a_pts;
    if (c.doc.has("K")) a_pts = c.doc.body(s.dim()).full_support_points();
    const auto w = escape_witness(s, beta, a_pts);
    Json rows = Json::array();
    for (const auto& g : w.growth) rows.push_back(Json{{"t", g.t}, {"modulus", g.modulus}});
    return Json{{"beta", to_json(beta)},
                {"xi", to_json(w.xi)},
                {"support_xi", to_json(support(s, w.xi))},
                {"beta_dot_xi", to_json(to_rational(beta).dot(w.xi))},
                {"x0", to_json(w.x0)},
                {"rows", rows}};
}

Json approx_domain(const Context& c) {
    const auto s = c.doc.polytope();
    const auto d = c.doc.rational_points("D", s.dim());
    if (d.empty()) throw SchemaError("$.D: needs at least one point");
    const auto hull = convergence_hull(s, d);
    Json ineq = Json::array();
    for (std::size_t i = 0; i < hull.normals.size(); ++i)
        ineq.push_back(Json{{"normal", to_json(hull.normals[i])}, {"offset", hull.offsets[i].str()}});
    Json out{{"inequalities", ineq}};
    if (c.doc.has("points")) {
        Json rows = Json::array();
        for (const auto& p : c.doc.rational_points("points", s.dim())) {
            Json row = point_row("x_", to_double(p));
            row["inside"] = hull.contains(p);
            rows.push_back(row);
        }
        out["rows"] = rows;
    }
    return out;
}

using Command = std::function<Json(const Context&)>;

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Cone-restricted polynomial approximation: polytopes, lattices, extremal functions, series."};
    app.name("cone-hull");
    app.require_subcommand(1);

    std::string input, format = "json", out_path;
    std::uint64_t seed = 0;
    std::optional<double> tol;
    std::optional<long long> m;
    std::vector<std::string> grid;
    app.add_option("--input", input, "Input JSON bundle")->check(CLI::ExistingFile);
    app.add_option("--seed", seed, "Random seed (default 0)");
    app.add_option("--tol", tol, "Floating tolerance override");
    app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--out", out_path, "Write output to this file instead of stdout");
    app.add_option("--m", m, "Scaling m (overrides the input field)");
    app.add_option("--grid", grid, "xmin:xmax:steps, once per coordinate");

    const std::map<std::string, std::map<std::string, Command>> groups{
        {"polytope",
         {{"support", polytope_support}, {"contains", polytope_contains}, {"refine", polytope_refine},
          {"exponents", polytope_exponents}, {"distance", polytope_distance}, {"dual", polytope_dual},
          {"section", polytope_section}}},
        {"lattice",
         {{"independent", lattice_independent}, {"separate", lattice_separate}, {"fibers", lattice_fibers},
          {"pullback", lattice_pullback}}},
        {"vsk",
         {{"eval", vsk_eval}, {"grid", vsk_grid}, {"hull", vsk_hull}, {"siciak", vsk_siciak}, {"axes", vsk_axes},
          {"sample", vsk_sample}}},
        {"approx", {{"run", approx_run}, {"escape", approx_escape}, {"domain", approx_domain}}},
    };
    std::string chosen_group, chosen_leaf;
    for (const auto& [group, leaves] : groups) {
        auto* g = app.add_subcommand(group, group + " operations");
        g->require_subcommand(1);
        g->fallthrough();
        for (const auto& [leaf, fn] : leaves) {
            auto* l = g->add_subcommand(leaf);
            l->fallthrough();
            l->callback([&, group = group, leaf = leaf] {
                chosen_group = group;
                chosen_leaf = leaf;
            });
        }
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (input.empty()) throw SchemaError("--input: an input file is required");
        if (tol) {
            if (!(*tol > 0)) throw SchemaError("--tol: must be positive");
            ScalarTraits<double>::tolerance = *tol;
        }
        Context ctx{io::Document::from_file(input), seed, tol, m, grid, budget_from_env()};
        Json result{{"command", chosen_group + " " + chosen_leaf}};
        result.update(groups.at(chosen_group).at(chosen_leaf)(ctx));

        std::ostringstream text;
        if (format == "csv") io::write_csv(result, text);
        else io::write_json(result, text);
        if (out_path.empty()) {
            std::cout << text.str();
        } else {
            std::ofstream out(out_path, std::ios::binary);
            if (!out) throw SchemaError("--out: cannot open " + out_path);
            out << text.str();
        }
        return 0;
    } catch (const BudgetExceeded& e) {
        std::cerr << "budget exceeded: " << e.what() << "\n";
        return 3;
    } catch (const SchemaError& e) {
        std::cerr << "schema error: " << e.what() << "\n";
        return 2;
    } catch (const PreconditionViolated& e) {
        std::cerr << "precondition violated: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
}
