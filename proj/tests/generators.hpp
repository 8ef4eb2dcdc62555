// Random instances shared by unit and acceptance tests.
#ifndef CONE_HULL_TEST_GENERATORS_HPP
#define CONE_HULL_TEST_GENERATORS_HPP

#include "cone_hull/polytope.hpp"

#include <complex>
#include <random>
#include <vector>

namespace gen {

using namespace cone_hull;

// Polytope in R^n_+ containing the origin; coordinates in [0, top] with denominator den.
inline RationalPolytope random_polytope(std::mt19937_64& rng, Eigen::Index n, int count, int den, int top) {
    std::uniform_int_distribution<int> coord(0, top * den);
    std::vector<VectorQ> pts{VectorQ::Zero(n)};
    for (int i = 0; i < count; ++i) {
        VectorQ p(n);
        for (Eigen::Index j = 0; j < n; ++j) p(j) = Rational(coord(rng), den);
        pts.push_back(p);
    }
    return RationalPolytope(n, pts);
}

inline RationalPolytope random_full_polytope(std::mt19937_64& rng, Eigen::Index n, int count, int den, int top) {
    for (;;) {
        auto s = random_polytope(rng, n, count, den, top);
        if (s.full_dimensional()) return s;
    }
}

// Polytope spanning an ell-dimensional subspace: nonnegative combinations of ell integer directions.
inline RationalPolytope random_lower_dim(std::mt19937_64& rng, Eigen::Index n, Eigen::Index ell) {
    std::uniform_int_distribution<int> entry(0, 3);
    std::uniform_int_distribution<int> weight(0, 4);
    for (;;) {
        std::vector<VectorQ> dirs;
        for (Eigen::Index k = 0; k < ell; ++k) {
            VectorQ d(n);
            for (Eigen::Index j = 0; j < n; ++j) d(j) = entry(rng);
            dirs.push_back(d);
        }
        std::vector<VectorQ> pts{VectorQ::Zero(n)};
        for (int i = 0; i < ell + 2; ++i) {
            VectorQ p = VectorQ::Zero(n);
            for (const auto& d : dirs) p += Rational(weight(rng), 2) * d;
            pts.push_back(p);
        }
        RationalPolytope s(n, pts);
        if (s.span_dimension() == ell) return s;
    }
}

inline Eigen::VectorXcd random_torus_point(std::mt19937_64& rng, Eigen::Index n, double log_radius = 1.0) {
    std::uniform_real_distribution<double> lr(-log_radius, log_radius);
    std::uniform_real_distribution<double> arg(-3.14159265358979, 3.14159265358979);
    Eigen::VectorXcd z(n);
    for (Eigen::Index j = 0; j < n; ++j) z(j) = std::polar(std::exp(lr(rng)), arg(rng));
    return z;
}

}  // namespace gen

#endif
