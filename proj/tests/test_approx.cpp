#include "cone_hull/approx.hpp"
#include "cone_hull/errors.hpp"

#include "generators.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <random>

using namespace cone_hull;
using oracle::points;
using oracle::q;

namespace {

RationalPolytope make(std::initializer_list<std::initializer_list<const char*>> rows) {
    auto pts = points(rows);
    return RationalPolytope(pts[0].size(), pts);
}

LatticeVector lv(std::initializer_list<long long> xs) {
    LatticeVector v(static_cast<Eigen::Index>(xs.size()));
    Eigen::Index i = 0;
    for (long long x : xs) v(i++) = x;
    return v;
}

VectorXd d2(double a, double b) {
    VectorXd v(2);
    v << a, b;
    return v;
}

const RationalPolytope& diag() {
    static const RationalPolytope s = make({{"0", "0"}, {"1", "1"}});
    return s;
}

}  // namespace

TEST_CASE("series construction") {
    auto wedge = make({{"0", "0"}, {"1", "0"}, {"1", "1"}});
    CHECK_THROWS_AS(ConeSeries::from_terms(diag(), {{lv({1, 0}), {1, 0}}}), PreconditionViolated);
    CHECK_THROWS_AS(ConeSeries::geometric(diag(), lv({0, 0}), 0.5), PreconditionViolated);
    CHECK_THROWS_AS(ConeSeries::from_terms(wedge, {{lv({1, 0}), {1, 0}}, {lv({1, 0}), {2, 0}}}),
                    PreconditionViolated);
    CHECK_NOTHROW(ConeSeries::from_terms(wedge, {{lv({2, 1}), {1, 0}}}));
}

TEST_CASE("truncation") {
    auto g = ConeSeries::geometric(diag(), lv({1, 1}), 0.25);
    auto t = truncate(g, 6);
    REQUIRE(t.terms.size() == 4);
    for (std::size_t k = 0; k < 4; ++k) {
        CHECK(t.terms[k].alpha == lv({static_cast<long long>(k), static_cast<long long>(k)}));
        CHECK(std::abs(t.terms[k].coeff - std::pow(0.25, static_cast<double>(k))) < 1e-15);
    }
    CHECK(t.m_N == 3);
    auto t0 = truncate(g, 0);
    CHECK(t0.terms.size() == 1);
    CHECK(t0.m_N == 0);
    CHECK_FALSE(t0.critical_alpha.has_value());

    auto wedge = make({{"0", "0"}, {"1", "0"}, {"1", "1"}});
    auto f = ConeSeries::from_terms(wedge, {{lv({0, 0}), {1, 0}}, {lv({2, 1}), {1, 0}}, {lv({1, 1}), {0, 1}}});
    auto tf = truncate(f, 3);
    CHECK(tf.m_N == 2);
    REQUIRE(tf.critical_alpha.has_value());
    CHECK(*tf.critical_alpha == lv({2, 1}));

    // minimality: every retained alpha lies in m_N S, the critical one leaves (m_N - 1) S
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 10; ++trial) {
        auto s = gen::random_full_polytope(rng, 2, 3, 3, 2);
        std::vector<SeriesTerm> terms;
        for (const auto& alpha : enumerate_exponents(s, 4).points) terms.push_back({alpha, {1, 0}});
        auto tr = truncate(ConeSeries::from_terms(s, terms), 5);
        for (const auto& term : tr.terms)
            CHECK(contains(s, VectorQ(to_rational(term.alpha) / Rational(std::max<long long>(tr.m_N, 1)))).inside);
        if (tr.critical_alpha && tr.m_N > 1)
            CHECK_FALSE(contains(s, VectorQ(to_rational(*tr.critical_alpha) / Rational(tr.m_N - 1))).inside);
    }
}

TEST_CASE("geometric tail on hull samples") {
    auto g = ConeSeries::geometric(diag(), lv({1, 1}), 0.25);
    const auto torus = ReinhardtBody<double>::torus(2);
    auto hull = hull_sampler(diag(), torus, 5.0, 200, 1);
    const double err10 = sup_error(g, 10, hull);
    CHECK(err10 <= std::pow(4.0, -5) / 3 + 1e-15);
    CHECK(err10 == doctest::Approx(std::pow(4.0, -5) / 3).epsilon(1e-12));  // x = 0 is a sample
    for (long long N = 0; N <= 24; ++N) {
        const double bound = std::pow(0.25, static_cast<double>(N / 2 + 1)) / 0.75;
        CHECK(sup_error(g, N, hull) <= bound * (1 + 1e-12));
    }
    CHECK(sup_error(g, 200, hull) < 1e-15);
    CHECK(sup_modulus(g, hull) == doctest::Approx(4.0 / 3.0).epsilon(1e-12));

    std::vector<VectorXd> far{d2(2, 2)};
    CHECK_THROWS_AS(sup_error(g, 4, far), DivergentOnSample);
    auto big = ConeSeries::from_terms(diag(), {{lv({1, 1}), {1, 0}}});
    CHECK_THROWS_AS(sup_modulus(big, {d2(400, 400)}), DivergentOnSample);
}

TEST_CASE("torus orbit search for complex coefficients") {
    // f = 1 - z1 z2 peaks at z1 z2 = -1 on the unit torus
    auto f = ConeSeries::from_terms(diag(), {{lv({0, 0}), {1, 0}}, {lv({1, 1}), {-1, 0}}});
    CHECK_FALSE(f.nonnegative_coefficients());
    CHECK(sup_modulus(f, {d2(0, 0)}) == doctest::Approx(2.0));
    auto g = ConeSeries::geometric(diag(), lv({1, 1}), Complex(-0.25, 0));
    CHECK(sup_modulus(g, {d2(0, 0)}) == doctest::Approx(4.0 / 3.0));
}

TEST_CASE("hull versus K report") {
    auto g = ConeSeries::geometric(diag(), lv({1, 1}), 0.25);
    auto r = hull_vs_K_gap(g, 10, ReinhardtBody<double>::torus(2), 5.0, 100, 2);
    CHECK(r.m_N == 5);
    CHECK(r.sup_f_K == doctest::Approx(4.0 / 3.0));
    CHECK(r.sup_f_hull == doctest::Approx(4.0 / 3.0));
    CHECK(r.norm_equality_holds);
    CHECK(r.sup_err_hull <= std::pow(4.0, -5) / 3 + 1e-15);

    auto one = ConeSeries::from_terms(diag(), {{lv({0, 0}), {1, 0}}});
    auto r1 = hull_vs_K_gap(one, 3, ReinhardtBody<double>::torus(2), 5.0, 50, 2);
    CHECK(r1.sup_f_K == 1);
    CHECK(r1.sup_f_hull == 1);
    CHECK(r1.sup_err_hull == 0);

    // random geometric instances keep the hull norm equal to the K norm
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> c(0.05, 0.3);
    for (int trial = 0; trial < 5; ++trial) {
        auto s = gen::random_full_polytope(rng, 2, 3, 1, 2);
        auto alphas = enumerate_exponents(s, 2).points;
        LatticeVector a0 = alphas.back();
        auto k = ReinhardtBody<Rational>::from_log_points(2, points({{"0", "0"}, {"-1/4", "1/4"}})).cast<double>();
        auto rep = hull_vs_K_gap(ConeSeries::geometric(s, a0, c(rng)), 6, k, 5.0, 80, trial);
        CHECK(rep.norm_equality_holds);
    }
}

TEST_CASE("escape witness") {
    auto w = escape_witness(diag(), lv({1, 0}));
    CHECK(w.xi == q({"1", "-1"}));
    REQUIRE(w.growth.size() == 5);
    CHECK(w.growth.back().t == 20);
    CHECK(w.growth.back().modulus == doctest::Approx(std::exp(20.0)));
    CHECK(w.growth.back().modulus > 1e8);
    CHECK_THROWS_AS(escape_witness(RationalPolytope::simplex(2), lv({1, 0})), BetaInCone);
    auto wedge = make({{"0", "0"}, {"1", "0"}, {"1", "1"}});
    auto v = escape_witness(wedge, lv({0, 1}));
    CHECK(v.xi == q({"-1", "1"}));
    CHECK(support(wedge, v.xi) <= 0);

    // barycenter start point
    auto shifted = escape_witness(diag(), lv({1, 0}), points({{"1", "0"}, {"1", "2"}}));
    CHECK(shifted.x0 == q({"1", "1"}));
    CHECK(shifted.growth.front().modulus == doctest::Approx(std::exp(1.0)));
}

TEST_CASE("escape dichotomy") {
    const auto torus = ReinhardtBody<double>::torus(2);
    for (const auto& s : {diag(), make({{"0", "0"}, {"1", "0"}, {"1", "1"}}), make({{"0", "0"}, {"2", "1"}, {"1", "2"}})}) {
        auto hull = hull_sampler(s, torus, 10.0, 150, 4);
        auto k_pts = hull_sampler(s, torus, 0.0, 10, 4);
        for (long long a = -3; a <= 6; ++a)
            for (long long b = -3; b <= 6; ++b) {
                const LatticeVector beta = lv({a, b});
                bool escapes = true;
                try {
                    auto w = escape_witness(s, beta);
                    CHECK(support(s, w.xi) <= 0);
                    CHECK(to_rational(beta).dot(w.xi) >= 1);
                } catch (const BetaInCone&) {
                    escapes = false;
                }
                auto sup = [&](const std::vector<VectorXd>& pts) {
                    double m = 0;
                    for (const auto& x : pts) m = std::max(m, std::exp(beta.cast<double>().dot(x)));
                    return m;
                };
                const bool bounded = sup(hull) <= sup(k_pts) + 1e-9;
                CHECK(escapes != bounded);
            }
    }
}

TEST_CASE("convergence hull") {
    auto h = convergence_hull(diag(), {q({"0", "0"})});
    REQUIRE(h.normals.size() == 1);
    CHECK(to_lattice(h.normals[0]) == lv({1, 1}));
    CHECK(h.offsets[0] == 0);

    auto o = convergence_hull(RationalPolytope::simplex(2), {q({"0", "0"})});
    CHECK(o.normals.size() == 2);
    CHECK(o.contains(q({"-1", "-3"})));
    CHECK_FALSE(o.contains(q({"1/100", "-3"})));

    std::mt19937_64 rng(6);
    std::uniform_real_distribution<double> u(-3, 3);
    std::uniform_int_distribution<int> c(-6, 6);
    for (int trial = 0; trial < 6; ++trial) {
        const Eigen::Index n = 2 + trial % 2;
        auto s = trial == 0 ? diag() : gen::random_polytope(rng, n, 3, 2, 2);
        const Eigen::Index dim = s.dim();
        std::vector<VectorQ> d;
        for (int i = 0; i < 4; ++i) {
            VectorQ p(dim);
            for (Eigen::Index j = 0; j < dim; ++j) p(j) = Rational(c(rng), 3);
            d.push_back(p);
        }
        auto hull = convergence_hull(s, d);
        auto kq = ReinhardtBody<Rational>::from_log_points(dim, d);
        auto k = kq.cast<double>();
        for (int i = 0; i < 500; ++i) {
            VectorXd x(dim);
            for (Eigen::Index j = 0; j < dim; ++j) x(j) = u(rng);
            CHECK(hull.contains(x) == hull_membership(s, k, x).inside);
        }
        for (int i = 0; i < 30; ++i) {
            VectorQ x(dim);
            for (Eigen::Index j = 0; j < dim; ++j) x(j) = Rational(c(rng), 2);
            CHECK(hull.contains(x) == hull_membership(s, kq, x).inside);
        }
    }
}
