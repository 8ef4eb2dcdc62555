#include "cone_hull/approx.hpp"

#include "cone_hull/cone_rays.hpp"
#include "cone_hull/errors.hpp"
#include "cone_hull/linear_program.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace cone_hull {

namespace {

const double kLogGuard = std::log(kOverflowGuard);

void check_exponent(const RationalPolytope& s, const LatticeVector& alpha) {
    if (alpha.size() != s.dim()) throw DimensionMismatch("series exponent has wrong dimension");
    if (alpha.minCoeff() < 0) throw PreconditionViolated("series exponent has a negative entry");
    if (!in_cone(s, to_rational(alpha)))
        throw PreconditionViolated("series exponent lies outside the cone R_+ S");
}

long long degree(const LatticeVector& alpha) { return alpha.sum(); }

Complex term_value(const SeriesTerm& term, const VectorXd& x, const VectorXd& theta) {
    if (term.coeff == Complex(0, 0)) return {0, 0};
    const VectorXd a = term.alpha.cast<double>();
    const double log_mod = std::log(std::abs(term.coeff)) + a.dot(x);
    if (log_mod > kLogGuard) throw DivergentOnSample("series term exceeds the overflow guard at a sample");
    return std::polar(std::exp(log_mod), std::arg(term.coeff) + a.dot(theta));
}

// Angle grid covering each torus orbit: a single point when coefficients are nonnegative.
template <typename F>
double sup_over_orbits(const ConeSeries& f, const std::vector<VectorXd>& samples, F&& modulus) {
    const Eigen::Index n = f.dim();
    double best = 0;
    for (const auto& x : samples) {
        if (x.size() != n) throw DimensionMismatch("sample has wrong dimension");
        if (f.nonnegative_coefficients()) {
            best = std::max(best, modulus(x, VectorXd::Zero(n)));
            continue;
        }
        if (f.is_geometric()) {
            // |f| depends on theta only through <alpha0, theta>
            const Eigen::Index j = [&] {
                Eigen::Index k = 0;
                while (f.alpha0()(k) == 0) ++k;
                return k;
            }();
            for (int step = 0; step < kTorusAngles; ++step) {
                VectorXd theta = VectorXd::Zero(n);
                theta(j) = 2 * std::numbers::pi * step / (kTorusAngles * static_cast<double>(f.alpha0()(j)));
                best = std::max(best, modulus(x, theta));
            }
            continue;
        }
        std::vector<int> idx(static_cast<std::size_t>(n), 0);
        for (;;) {
            VectorXd theta(n);
            for (Eigen::Index j = 0; j < n; ++j)
                theta(j) = 2 * std::numbers::pi * idx[static_cast<std::size_t>(j)] / kTorusAngles;
            best = std::max(best, modulus(x, theta));
            Eigen::Index j = 0;
            while (j < n && ++idx[static_cast<std::size_t>(j)] == kTorusAngles) idx[static_cast<std::size_t>(j++)] = 0;
            if (j == n) break;
        }
    }
    return best;
}

}  // namespace

ConeSeries ConeSeries::from_terms(const RationalPolytope& s, std::vector<SeriesTerm> terms) {
    for (const auto& t : terms) check_exponent(s, t.alpha);
    std::sort(terms.begin(), terms.end(), [](const SeriesTerm& a, const SeriesTerm& b) {
        if (degree(a.alpha) != degree(b.alpha)) return degree(a.alpha) < degree(b.alpha);
        return std::lexicographical_compare(a.alpha.data(), a.alpha.data() + a.alpha.size(), b.alpha.data(),
                                            b.alpha.data() + b.alpha.size());
    });
    for (std::size_t i = 1; i < terms.size(); ++i)
        if (terms[i].alpha == terms[i - 1].alpha) throw PreconditionViolated("series lists an exponent twice");
    ConeSeries f(s);
    f.terms_ = std::move(terms);
    return f;
}

ConeSeries ConeSeries::geometric(const RationalPolytope& s, const LatticeVector& alpha0, Complex c) {
    check_exponent(s, alpha0);
    if (alpha0.isZero()) throw PreconditionViolated("geometric series needs a nonzero alpha0");
    ConeSeries f(s);
    f.geometric_ = true;
    f.alpha0_ = alpha0;
    f.ratio_ = c;
    return f;
}

bool ConeSeries::nonnegative_coefficients() const {
    if (geometric_) return ratio_.imag() == 0 && ratio_.real() >= 0;
    return std::all_of(terms_.begin(), terms_.end(),
                       [](const SeriesTerm& t) { return t.coeff.imag() == 0 && t.coeff.real() >= 0; });
}

std::vector<SeriesTerm> ConeSeries::truncated_terms(long long N) const {
    std::vector<SeriesTerm> out;
    if (N < 0) return out;
    if (geometric_) {
        Complex coeff(1, 0);
        for (long long k = 0; k * degree(alpha0_) <= N; ++k) {
            out.push_back({LatticeVector(k * alpha0_), coeff});
            coeff *= ratio_;
        }
        return out;
    }
    for (const auto& t : terms_)
        if (degree(t.alpha) <= N) out.push_back(t);
    return out;
}

Complex ConeSeries::geometric_q(const VectorXd& x, const VectorXd& theta) const {
    if (ratio_ == Complex(0, 0)) return {0, 0};
    const VectorXd a = alpha0_.cast<double>();
    const double log_mod = std::log(std::abs(ratio_)) + a.dot(x);
    if (log_mod >= 0) throw DivergentOnSample("geometric ratio |c z^alpha0| >= 1 at a sample");
    return std::polar(std::exp(log_mod), std::arg(ratio_) + a.dot(theta));
}

Complex ConeSeries::value(const VectorXd& x, const VectorXd& theta) const {
    if (x.size() != dim() || theta.size() != dim()) throw DimensionMismatch("evaluation point has wrong dimension");
    if (geometric_) return Complex(1, 0) / (Complex(1, 0) - geometric_q(x, theta));
    Complex sum(0, 0);
    for (const auto& t : terms_) sum += term_value(t, x, theta);
    return sum;
}

Complex ConeSeries::tail(const VectorXd& x, const VectorXd& theta, long long N) const {
    if (x.size() != dim() || theta.size() != dim()) throw DimensionMismatch("evaluation point has wrong dimension");
    if (N < 0) return value(x, theta);
    if (geometric_) {
        const Complex q = geometric_q(x, theta);
        const long long kept = N / degree(alpha0_);
        return std::pow(q, static_cast<int>(kept + 1)) / (Complex(1, 0) - q);
    }
    Complex sum(0, 0);
    for (const auto& t : terms_)
        if (degree(t.alpha) > N) sum += term_value(t, x, theta);
    return sum;
}

Truncation truncate(const ConeSeries& f, long long N) {
    if (N < 0) throw PreconditionViolated("truncate: N must be >= 0");
    Truncation out;
    out.terms = f.truncated_terms(N);
    for (const auto& t : out.terms) {
        const auto m = minimal_scaling(f.polytope(), t.alpha);
        if (!m) throw NumericalFailure("truncate: retained exponent outside the cone");
        if (*m > out.m_N) {
            out.m_N = *m;
            out.critical_alpha = t.alpha;
        }
    }
    return out;
}

double sup_error(const ConeSeries& f, long long N, const std::vector<VectorXd>& samples) {
    return sup_over_orbits(f, samples,
                           [&](const VectorXd& x, const VectorXd& theta) { return std::abs(f.tail(x, theta, N)); });
}

double sup_modulus(const ConeSeries& f, const std::vector<VectorXd>& samples) {
    return sup_over_orbits(f, samples,
                           [&](const VectorXd& x, const VectorXd& theta) { return std::abs(f.value(x, theta)); });
}

TruncationReport hull_vs_K_gap(const ConeSeries& f, long long N, const ReinhardtBody<double>& k, double depth,
                               std::size_t count, std::uint64_t seed, double tol) {
    const auto& s = f.polytope();
    const auto k_pts = hull_sampler(s, k, 0.0, count, seed);
    const auto hull_pts = hull_sampler(s, k, depth, count, seed);
    TruncationReport r;
    r.N = N;
    r.m_N = truncate(f, N).m_N;
    r.k_samples = k_pts.size();
    r.hull_samples = hull_pts.size();
    r.sup_err_K = sup_error(f, N, k_pts);
    r.sup_err_hull = sup_error(f, N, hull_pts);
    r.sup_f_K = sup_modulus(f, k_pts);
    r.sup_f_hull = sup_modulus(f, hull_pts);
    r.norm_equality_holds = r.sup_f_hull <= r.sup_f_K * (1 + tol);
    return r;
}

EscapeWitness escape_witness(const RationalPolytope& s, const LatticeVector& beta, const std::vector<VectorQ>& a_points,
                             const std::vector<double>& ts) {
    const Eigen::Index n = s.dim();
    if (beta.size() != n) throw DimensionMismatch("escape_witness: beta has wrong dimension");
    const VectorQ b = to_rational(beta);

    // xi = p - q, minimize |p|_1 + |q|_1
    LinearProgram<Rational> lp(2 * n);
    lp.set_objective(-VectorQ::Ones(2 * n));
    for (const auto& v : s.vertices()) {
        if (v.isZero()) continue;
        VectorQ row(2 * n);
        row << v, -v;
        lp.add_constraint(row, Relation::LessEqual, Rational(0));
    }
    VectorQ row(2 * n);
    row << b, -b;
    lp.add_constraint(row, Relation::GreaterEqual, Rational(1));
    const auto sol = solve(lp);
    if (sol.status == LpStatus::Infeasible) throw BetaInCone("beta lies in R_+ S; z^beta is bounded on the hull");
    if (sol.status != LpStatus::Optimal) throw NumericalFailure("escape_witness: LP did not reach an optimum");

    EscapeWitness w;
    w.xi = sol.x.head(n) - sol.x.tail(n);
    w.x0 = VectorQ::Zero(n);
    if (!a_points.empty()) {
        for (const auto& a : a_points) {
            if (a.size() != n) throw DimensionMismatch("escape_witness: point of A has wrong dimension");
            w.x0 += a;
        }
        w.x0 /= Rational(static_cast<long long>(a_points.size()));
    }
    const double base = to_double(b.dot(w.x0));
    const double slope = to_double(b.dot(w.xi));
    for (double t : ts) w.growth.push_back({t, std::exp(base + t * slope)});
    return w;
}

bool ConvergenceHull::contains(const VectorQ& x) const {
    if (x.size() != dim) throw DimensionMismatch("point has wrong dimension");
    for (std::size_t i = 0; i < normals.size(); ++i)
        if (to_rational(normals[i]).dot(x) > Rational(offsets[i])) return false;
    return true;
}

bool ConvergenceHull::contains(const VectorXd& x, double tol) const {
    if (x.size() != dim) throw DimensionMismatch("point has wrong dimension");
    for (std::size_t i = 0; i < normals.size(); ++i)
        if (to_double(to_rational(normals[i])).dot(x) > offsets[i].convert_to<double>() + tol) return false;
    return true;
}

ConvergenceHull convergence_hull(const RationalPolytope& s, const std::vector<VectorQ>& d_vertices) {
    const Eigen::Index n = s.dim();
    if (d_vertices.empty()) throw PreconditionViolated("convergence_hull: D is empty");

    // Gamma° = {t : <v, t> >= 0 for every vertex v}
    std::vector<VectorQ> rows;
    for (const auto& v : s.vertices())
        if (!v.isZero()) rows.push_back(v);
    MatrixQ ineq(static_cast<Eigen::Index>(rows.size()), n);
    for (std::size_t i = 0; i < rows.size(); ++i) ineq.row(static_cast<Eigen::Index>(i)) = rows[i].transpose();
    const ConeGenerators dual = double_description(ineq, n);

    // Cone over ch(D) - Gamma° in R^{n+1}; its dual cone lists the inequalities.
    std::vector<VectorQ> gens;
    for (const auto& d : d_vertices) {
        if (d.size() != n) throw DimensionMismatch("convergence_hull: point of D has wrong dimension");
        VectorQ g(n + 1);
        g << d, Rational(1);
        gens.push_back(g);
    }
    for (const auto& r : all_directions(dual)) {
        VectorQ g(n + 1);
        g << -to_rational(r), Rational(0);
        gens.push_back(g);
    }
    MatrixQ gm(static_cast<Eigen::Index>(gens.size()), n + 1);
    for (std::size_t i = 0; i < gens.size(); ++i) gm.row(static_cast<Eigen::Index>(i)) = gens[i].transpose();
    const ConeGenerators facets = double_description(gm, n + 1);

    ConvergenceHull out;
    out.dim = n;
    for (const auto& h : all_directions(facets)) {
        VectorZ a = h.head(n);
        if (a.isZero()) continue;
        out.normals.push_back(-a);
        out.offsets.push_back(h(n));
    }
    return out;
}

}  // namespace cone_hull
