#ifndef CONE_HULL_APPROX_HPP
#define CONE_HULL_APPROX_HPP

#include "cone_hull/extremal.hpp"
#include "cone_hull/lattice.hpp"
#include "cone_hull/polytope.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace cone_hull {

struct SeriesTerm {
    LatticeVector alpha;
    Complex coeff;
};

/// Term moduli above this abort evaluation with DivergentOnSample.
inline constexpr double kOverflowGuard = 1e300;
/// Angles per coordinate when the torus maximum has to be searched.
inline constexpr int kTorusAngles = 64;

/**
 * A power series sum a_alpha z^alpha with exponents in Gamma ∩ N^n. Either a
 * finite term list or the geometric family sum_k c^k z^{k alpha0}.
 */
class ConeSeries {
public:
    static ConeSeries from_terms(const RationalPolytope& s, std::vector<SeriesTerm> terms);
    static ConeSeries geometric(const RationalPolytope& s, const LatticeVector& alpha0, Complex c);

    const RationalPolytope& polytope() const { return s_; }
    Eigen::Index dim() const { return s_.dim(); }
    bool is_geometric() const { return geometric_; }
    const LatticeVector& alpha0() const { return alpha0_; }
    Complex ratio() const { return ratio_; }
    const std::vector<SeriesTerm>& terms() const { return terms_; }

    /// Real nonnegative coefficients: |f| peaks over each torus orbit at the positive real point.
    bool nonnegative_coefficients() const;

    /// Terms with |alpha|_1 <= N.
    std::vector<SeriesTerm> truncated_terms(long long N) const;

    /// f at z = exp(x + i theta).
    Complex value(const VectorXd& x, const VectorXd& theta) const;
    /// f - f_N at z = exp(x + i theta).
    Complex tail(const VectorXd& x, const VectorXd& theta, long long N) const;

private:
    ConeSeries(const RationalPolytope& s) : s_(s) {}
    Complex geometric_q(const VectorXd& x, const VectorXd& theta) const;

    RationalPolytope s_;
    bool geometric_ = false;
    LatticeVector alpha0_;
    Complex ratio_{0, 0};
    std::vector<SeriesTerm> terms_;
};

struct Truncation {
    std::vector<SeriesTerm> terms;
    long long m_N = 0;
    /// Retained exponent that needs the full m_N (absent when m_N = 0).
    std::optional<LatticeVector> critical_alpha;
};

Truncation truncate(const ConeSeries& f, long long N);

/// max over samples of |f - f_N|, over the torus orbit of each log-sample.
double sup_error(const ConeSeries& f, long long N, const std::vector<VectorXd>& samples);
/// max over samples of |f|, over the torus orbit of each log-sample.
double sup_modulus(const ConeSeries& f, const std::vector<VectorXd>& samples);

struct TruncationReport {
    long long N = 0;
    long long m_N = 0;
    double sup_err_K = 0;
    double sup_err_hull = 0;
    double sup_f_K = 0;
    double sup_f_hull = 0;
    std::size_t k_samples = 0;
    std::size_t hull_samples = 0;
    /// sup|f| on hull samples <= sup|f| on K samples * (1 + tol).
    bool norm_equality_holds = false;
};

TruncationReport hull_vs_K_gap(const ConeSeries& f, long long N, const ReinhardtBody<double>& k, double depth,
                               std::size_t count, std::uint64_t seed, double tol = 1e-6);

struct GrowthRow {
    double t = 0;
    double modulus = 0;  // |z^beta| = exp(<beta, x0 + t xi>)
};

struct EscapeWitness {
    VectorQ xi;
    VectorQ x0;
    std::vector<GrowthRow> growth;
};

/**
 * Direction xi with phi_S(xi) <= 0 and <beta, xi> >= 1 (minimal l1 norm),
 * together with |z^beta| along x0 + t xi, x0 the barycenter of `a_points`.
 */
EscapeWitness escape_witness(const RationalPolytope& s, const LatticeVector& beta,
                             const std::vector<VectorQ>& a_points = {},
                             const std::vector<double>& ts = {0, 5, 10, 15, 20});

/// ch(D) - Gamma° as {x : <normal_i, x> <= offset_i}.
struct ConvergenceHull {
    Eigen::Index dim = 0;
    std::vector<VectorZ> normals;
    std::vector<BigInt> offsets;

    bool contains(const VectorQ& x) const;
    bool contains(const VectorXd& x, double tol = 1e-9) const;
};

ConvergenceHull convergence_hull(const RationalPolytope& s, const std::vector<VectorQ>& d_vertices);

}  // namespace cone_hull

#endif
