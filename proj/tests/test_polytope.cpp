#include "cone_hull/errors.hpp"
#include "cone_hull/polytope.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <random>
#include <set>

using namespace cone_hull;
using oracle::points;
using oracle::q;

namespace {

RationalPolytope make(std::initializer_list<std::initializer_list<const char*>> rows) {
    auto pts = points(rows);
    return RationalPolytope(pts[0].size(), pts);
}

const RationalPolytope& sigma2() {
    static const RationalPolytope s = RationalPolytope::simplex(2);
    return s;
}

const RationalPolytope& wedge() {
    static const RationalPolytope s = make({{"0", "0"}, {"1", "0"}, {"1", "1"}});
    return s;
}

std::vector<std::vector<long long>> as_lists(const std::vector<LatticeVector>& pts) {
    std::vector<std::vector<long long>> out;
    for (const auto& p : pts) out.emplace_back(p.data(), p.data() + p.size());
    return out;
}

// Random polytope in R^n_+ containing the origin: vertices with small denominators.
RationalPolytope random_polytope(std::mt19937_64& rng, Eigen::Index n, int count, int den, int top) {
    std::uniform_int_distribution<int> coord(0, top * den);
    std::vector<VectorQ> pts{VectorQ::Zero(n)};
    for (int i = 0; i < count; ++i) {
        VectorQ p(n);
        for (Eigen::Index j = 0; j < n; ++j) p(j) = Rational(coord(rng), den);
        pts.push_back(p);
    }
    return RationalPolytope(n, pts);
}

}  // namespace

TEST_CASE("construction validates and prunes") {
    CHECK_THROWS_AS(make({{"1", "0"}, {"0", "1"}}), InvalidPolytope);  // origin missing
    CHECK_THROWS_AS(make({{"0", "0"}, {"-1", "1"}}), InvalidPolytope);
    auto s = make({{"0", "0"}, {"1", "0"}, {"1", "1"}, {"1/2", "1/4"}, {"1", "1/2"}});
    CHECK(s.vertices().size() == 3);
    // origin inside but not a vertex is accepted
    auto t = make({{"2", "0"}, {"0", "2"}, {"0", "0"}, {"1/2", "1/2"}});
    CHECK(t.vertices().size() == 3);
    auto u = make({{"0", "0"}, {"1", "1"}});
    CHECK(u.span_dimension() == 1);
    CHECK_FALSE(u.full_dimensional());
}

TEST_CASE("support function") {
    CHECK(support(sigma2(), q({"3", "-1"})) == Rational(3));
    CHECK(support(sigma2(), q({"0", "0"})) == Rational(0));
    CHECK(support(wedge(), q({"-1", "2"})) == Rational(1));
    CHECK_THROWS_AS(support(sigma2(), q({"1"})), DimensionMismatch);
}

TEST_CASE("support is positively homogeneous and subadditive") {
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<int> c(-9, 9);
    for (int trial = 0; trial < 30; ++trial) {
        auto s = random_polytope(rng, 2 + trial % 2, 4, 3, 2);
        const Eigen::Index n = s.dim();
        VectorQ xi(n), eta(n);
        for (Eigen::Index j = 0; j < n; ++j) {
            xi(j) = Rational(c(rng), 4);
            eta(j) = Rational(c(rng), 5);
        }
        const Rational lambda(std::abs(c(rng)) + 1, 7);
        CHECK(support(s, VectorQ(lambda * xi)) == lambda * support(s, xi));
        CHECK(support(s, VectorQ(xi + eta)) <= support(s, xi) + support(s, eta));
    }
}

TEST_CASE("contains returns verifiable certificates") {
    auto in = contains(sigma2(), q({"1/2", "1/4"}));
    REQUIRE(in.inside);
    // vertices are stored as 0, e1, e2
    CHECK(in.weights(0) == Rational(1, 4));
    CHECK(in.weights(1) == Rational(1, 2));
    CHECK(in.weights(2) == Rational(1, 4));

    auto out = contains(sigma2(), q({"1", "1"}));
    REQUIRE_FALSE(out.inside);
    CHECK(out.separator == q({"1", "1"}));
    CHECK(support(sigma2(), out.separator) == Rational(1));

    // Frozen from the Caratheodory oracle: (1/2, 3/4) is outside the wedge.
    REQUIRE_FALSE(oracle::in_hull(wedge().vertices(), q({"1/2", "3/4"})));
    CHECK_FALSE(contains(wedge(), q({"1/2", "3/4"})).inside);
}

TEST_CASE("contains agrees with the Caratheodory oracle and certificates verify") {
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<int> c(0, 12);
    for (int trial = 0; trial < 20; ++trial) {
        auto s = random_polytope(rng, 2 + trial % 2, 4, 2, 2);
        for (int k = 0; k < 10; ++k) {
            VectorQ x(s.dim());
            for (Eigen::Index j = 0; j < s.dim(); ++j) x(j) = Rational(c(rng), 6);
            auto cert = contains(s, x);
            CHECK(cert.inside == oracle::in_hull(s.vertices(), x));
            if (cert.inside) {
                VectorQ rebuilt = VectorQ::Zero(s.dim());
                Rational total = 0;
                for (std::size_t i = 0; i < s.vertices().size(); ++i) {
                    CHECK(cert.weights(static_cast<Eigen::Index>(i)) >= 0);
                    rebuilt += cert.weights(static_cast<Eigen::Index>(i)) * s.vertices()[i];
                    total += cert.weights(static_cast<Eigen::Index>(i));
                }
                CHECK(total == 1);
                CHECK(rebuilt == x);
            } else {
                CHECK(cert.separator.dot(x) > support(s, cert.separator));
            }
        }
    }
}

TEST_CASE("refine") {
    auto seg = make({{"0", "0"}, {"1", "1/2"}});
    auto r1 = refine(seg, 1);
    CHECK(r1.vertices().size() == 1);
    CHECK(r1.vertices()[0].isZero());
    CHECK(refine(seg, 2) == seg);
    for (long long m : {1, 2, 5}) CHECK(refine(sigma2(), m) == sigma2());
}

TEST_CASE("refine is contained in S, idempotent, and keeps the exponent set") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 12; ++trial) {
        auto s = random_polytope(rng, 2 + trial % 2, 3, 3, 1);
        for (long long m : {1, 2, 3}) {
            auto r = refine(s, m);
            for (const auto& v : r.vertices()) CHECK(oracle::in_hull(s.vertices(), v));
            CHECK(refine(r, m) == r);
            CHECK(as_lists(enumerate_exponents(r, m).points) == as_lists(enumerate_exponents(s, m).points));
        }
    }
}

TEST_CASE("enumerate_exponents") {
    auto e = enumerate_exponents(sigma2(), 2);
    std::set<std::vector<long long>> got;
    for (const auto& p : as_lists(e.points)) got.insert(p);
    CHECK(got == std::set<std::vector<long long>>{{0, 0}, {1, 0}, {0, 1}, {2, 0}, {1, 1}, {0, 2}});
    CHECK(as_lists(enumerate_exponents(wedge(), 1).points) == std::vector<std::vector<long long>>{{0, 0}, {1, 0}, {1, 1}});
    // Frozen from the box-scan oracle with membership 0 <= a2 <= a1 <= 2.
    const auto frozen = as_lists(oracle::box_scan(wedge().vertices(), 2));
    CHECK(frozen == std::vector<std::vector<long long>>{{0, 0}, {1, 0}, {1, 1}, {2, 0}, {2, 1}, {2, 2}});
    CHECK(as_lists(enumerate_exponents(wedge(), 2).points) == frozen);
    CHECK_THROWS_AS(enumerate_exponents(sigma2(), 1000, 1000), BudgetExceeded);
}

TEST_CASE("enumerate_exponents matches the box-scan oracle") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 12; ++trial) {
        auto s = random_polytope(rng, 2 + trial % 2, 3, 2, 1);
        for (long long m : {1, 3}) {
            auto got = as_lists(enumerate_exponents(s, m).points);
            CHECK(got == as_lists(oracle::box_scan(s.vertices(), m)));
            for (const auto& a : enumerate_exponents(s, m).points)
                CHECK(contains(s, VectorQ(to_rational(a) / Rational(m))).inside);
        }
    }
}

TEST_CASE("lattice_distance") {
    auto square = make({{"0", "0"}, {"1", "0"}, {"0", "1"}, {"1", "1"}});
    auto d = lattice_distance(square);
    CHECK(d.exact == Rational(1));
    CHECK(d.bound == doctest::Approx(1 / std::sqrt(2.0)));
    CHECK(d.bound_holds);

    auto two_sigma = sigma2().scaled(Rational(2));
    // Frozen from the brute-force polygon-distance oracle over [-1, 3]^2.
    const Rational frozen = oracle::lattice_sq_distance(two_sigma.vertices());
    REQUIRE(frozen == Rational(1, 2));
    d = lattice_distance(two_sigma);
    CHECK(d.exact == frozen);
    CHECK(d.distance == doctest::Approx(0.70710678118654752));
    CHECK(d.bound == doctest::Approx(0.35355339059327376));
    CHECK(d.bound_holds);

    CHECK_THROWS_AS(lattice_distance(make({{"0", "0"}, {"2", "2"}})), EmptyInterior);
    CHECK_THROWS_AS(lattice_distance(make({{"0", "0"}, {"1/2", "0"}, {"0", "1"}})), PreconditionViolated);
}

TEST_CASE("lattice_distance matches the brute-force oracle exactly (n = 2, 3)") {
    std::mt19937_64 rng(29);
    int checked = 0;
    for (int trial = 0; trial < 60 && checked < 25; ++trial) {
        const Eigen::Index n = 2 + trial % 2;
        auto s = random_polytope(rng, n, n == 2 ? 3 : 3, 1, n == 2 ? 3 : 2);
        if (!s.full_dimensional()) continue;
        ++checked;
        CHECK(lattice_distance(s).exact == oracle::lattice_sq_distance(s.vertices()));
    }
    CHECK(checked >= 20);
}

TEST_CASE("L1 lattice distance dominates the Euclidean one") {
    auto two_sigma = sigma2().scaled(Rational(2));
    auto l1 = lattice_distance(two_sigma, DistanceNorm::L1);
    CHECK(l1.exact == Rational(1));
    CHECK(l1.distance >= lattice_distance(two_sigma).distance);
}

TEST_CASE("distance_growth") {
    for (const auto& row : distance_growth(sigma2(), 6)) {
        CHECK(row.d_m == doctest::Approx(1 / std::sqrt(2.0)));
        CHECK(row.holds);
    }
    auto s = make({{"0", "0"}, {"1", "0"}, {"1", "1/2"}});
    auto rows = distance_growth(s, 3);
    CHECK(rows[0].d_m <= 1.0);
    CHECK_FALSE(rows[0].full_dimensional);
    CHECK(rows[1].full_dimensional);
    // phi_S(1) = 3/2
    CHECK(rows[1].d_m >= 1 / (std::sqrt(2.0) * 2 * 1.5));
    // Frozen from the oracle: 2 S_2 = ch{(0,0),(2,0),(2,1)}.
    const auto frozen = oracle::lattice_sq_distance(oracle::points({{"0", "0"}, {"2", "0"}, {"2", "1"}}));
    CHECK(rows[1].d_m == doctest::Approx(std::sqrt(to_double(frozen))));
}

TEST_CASE("dual_cone") {
    auto orthant = dual_cone(sigma2());
    REQUIRE(orthant.dual_generators);
    CHECK(orthant.dual_generators->rays.size() == 2);
    CHECK(orthant.dual_generators->lineality.empty());

    auto w = dual_cone(wedge());
    REQUIRE(w.dual_generators);
    std::set<std::vector<long long>> rays;
    for (const auto& r : w.dual_generators->rays) rays.insert({r(0).convert_to<long long>(), r(1).convert_to<long long>()});
    CHECK(rays == std::set<std::vector<long long>>{{1, -1}, {0, 1}});
    for (const auto& r : w.dual_generators->rays)
        for (const auto& g : w.generators) CHECK((to_rational(r).dot(to_rational(g))) >= 0);

    auto origin = dual_cone(make({{"0", "0", "0"}}));
    REQUIRE(origin.dual_generators);
    CHECK(origin.dual_generators->rays.empty());
    CHECK(origin.dual_generators->lineality.size() == 3);
    CHECK(origin.generators.empty());

    auto big = dual_cone(RationalPolytope::simplex(4));
    CHECK_FALSE(big.dual_generators);
    CHECK(big.dual_halfspaces.size() == 4);
}

TEST_CASE("dual_cone rays match a brute-force oracle and pass sampling") {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        const Eigen::Index n = 2 + trial % 2;
        auto s = random_polytope(rng, n, 3, 2, 2);
        auto cone = dual_cone(s);
        REQUIRE(cone.dual_generators);
        auto dirs = all_directions(*cone.dual_generators);

        // Brute force for the pointed part: null directions of (n-1)-subsets of
        // the constraint rows, kept when feasible and not in the lineality space.
        std::set<std::vector<Rational>> brute;
        if (cone.dual_generators->lineality.empty()) {
            const auto& h = cone.dual_halfspaces;
            oracle::subsets(h.size(), static_cast<std::size_t>(n - 1), [&](const std::vector<std::size_t>& pick) {
                std::vector<std::vector<Rational>> a;
                for (auto i : pick) {
                    std::vector<Rational> row;
                    for (Eigen::Index j = 0; j < n; ++j) row.push_back(Rational(h[i](j)));
                    a.push_back(row);
                }
                // Direction: cross product (n = 3) or perpendicular (n = 2).
                VectorQ d(n);
                if (n == 2) {
                    d << -a[0][1], a[0][0];
                } else {
                    d << a[0][1] * a[1][2] - a[0][2] * a[1][1], a[0][2] * a[1][0] - a[0][0] * a[1][2],
                        a[0][0] * a[1][1] - a[0][1] * a[1][0];
                }
                if (d.isZero()) return;
                for (int sign : {1, -1}) {
                    VectorQ cand = Rational(sign) * d;
                    bool ok = true;
                    for (const auto& row : h)
                        if (to_rational(row).dot(cand) < 0) ok = false;
                    if (ok) {
                        auto p = to_rational(primitive_direction(cand));
                        brute.insert(std::vector<Rational>(p.data(), p.data() + p.size()));
                    }
                }
            });
            std::set<std::vector<Rational>> got;
            for (const auto& r : cone.dual_generators->rays) {
                auto p = to_rational(r);
                got.insert(std::vector<Rational>(p.data(), p.data() + p.size()));
            }
            // Every DD ray is a brute-force candidate; candidates that are not
            // extreme must be nonnegative combinations of the DD rays.
            for (const auto& g : got) CHECK(brute.count(g) == 1);
        }

        // Sampling: nonnegative combinations of the generators satisfy <x, v> >= 0.
        for (int k = 0; k < 1000 / 20; ++k) {
            VectorXd x = VectorXd::Zero(n);
            for (const auto& d : dirs) x += unit(rng) * to_double(to_rational(d));
            for (const auto& v : s.vertices_double()) CHECK(x.dot(v) >= -1e-12);
        }
        // Bidual: every generator of Gamma is nonnegative on every generator of Gamma°.
        for (const auto& g : cone.generators)
            for (const auto& d : dirs) CHECK(to_rational(g).dot(to_rational(d)) >= 0);
    }
}

TEST_CASE("section") {
    auto s1 = section(wedge(), {0});
    CHECK(s1 == make({{"0"}, {"1"}}));
    auto s2 = section(wedge(), {1});
    CHECK(s2.vertices().size() == 1);
    CHECK(s2.vertices()[0].isZero());
    CHECK(section(sigma2(), {0, 1}) == sigma2());
    CHECK_THROWS_AS(section(sigma2(), {}), PreconditionViolated);
}

TEST_CASE("section reproduces the restricted support identity") {
    std::mt19937_64 rng(37);
    std::uniform_int_distribution<int> c(-6, 6);
    for (int trial = 0; trial < 20; ++trial) {
        auto s = random_polytope(rng, 3, 4, 2, 2);
        // Put a few vertices on coordinate planes so sections are nontrivial.
        std::vector<VectorQ> pts = s.vertices();
        for (std::size_t i = 0; i < pts.size(); i += 2) pts[i](2) = 0;
        RationalPolytope t(3, pts);
        const std::vector<Eigen::Index> J{0, 1};
        auto sj = section(t, J);
        VectorQ xi(2);
        xi << c(rng), c(rng);
        // Support of S ∩ R^J at (xi, 0) taken over a dense exact brute force on the face.
        VectorQ lifted(3);
        lifted << xi(0), xi(1), -1000;  // strongly penalize leaving the face x3 = 0
        CHECK(support(sj, xi) == support(t, lifted));
    }
}

TEST_CASE("ray scale and minimal scaling") {
    CHECK(*minimal_scaling(wedge(), (LatticeVector(2) << 2, 1).finished()) == 2);
    CHECK(*minimal_scaling(make({{"0", "0"}, {"1", "1"}}), (LatticeVector(2) << 3, 3).finished()) == 3);
    CHECK(*minimal_scaling(wedge(), LatticeVector::Zero(2)) == 0);
    CHECK_FALSE(minimal_scaling(wedge(), (LatticeVector(2) << 0, 1).finished()));
    CHECK(in_cone(wedge(), q({"3", "2"})));
    CHECK_FALSE(in_cone(wedge(), q({"1", "2"})));
}
