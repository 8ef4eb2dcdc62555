#ifndef CONE_HULL_LATTICE_HPP
#define CONE_HULL_LATTICE_HPP

#include "cone_hull/polytope.hpp"
#include "cone_hull/scalar.hpp"

#include <complex>
#include <utility>
#include <vector>

namespace cone_hull {

using Complex = std::complex<double>;
using Eigen::VectorXcd;

/// z^alpha for integer (possibly negative) exponents.
Complex monomial(const VectorXcd& z, const LatticeVector& alpha);

/// Lattice points alpha in N^n with |alpha|_1 = degree, in descending lexicographic order.
std::vector<LatticeVector> lattice_points_of_degree(Eigen::Index dim, long long degree);

/**
 * n linearly independent lattice points of Gamma = R_+ S, greedily taken in
 * order of |alpha|_1 and then descending lex order.
 */
std::vector<LatticeVector> independent_exponents(const RationalPolytope& s);

enum class WitnessKind { ModulusDiffers, ArgumentDiffers };

struct SeparationCertificate {
    LatticeVector alpha;
    WitnessKind witness_kind = WitnessKind::ModulusDiffers;
    double difference = 0;  // |z^alpha - w^alpha|
};

/// Minimum |z^alpha - w^alpha| accepted for a certificate.
inline constexpr double kSeparationThreshold = 1e-12;

SeparationCertificate separate_points(const RationalPolytope& s, const VectorXcd& z, const VectorXcd& w);

/**
 * Lattice data of span_R S. Columns of `matrix_L` are a Z-basis of
 * (span_R S) ∩ Z^n chosen so that T = L^{-1}(S) lies in R^ell_+;
 * columns of `kernel_gens` are a Z-basis of (span_R S)^⊥ ∩ Z^n.
 */
struct LatticeMap {
    Eigen::Index ell = 0;
    MatrixZ matrix_L;
    MatrixZ kernel_gens;
    std::vector<VectorQ> T_vertices;

    Eigen::Index dim() const { return matrix_L.rows(); }
    /// F_L(z) = (z^{L(e_1)}, ..., z^{L(e_ell)}).
    VectorXcd apply(const VectorXcd& z) const;
    /// alpha' with alpha = L alpha', if alpha lies in the lattice of the span.
    std::optional<LatticeVector> coordinates(const LatticeVector& alpha) const;
};

LatticeMap fiber_structure(const RationalPolytope& s);

/// Upsilon_z(t)_j = z_j * prod_k t_k^{kernel_gens(j, k)}.
VectorXcd fiber_through(const LatticeMap& map, const VectorXcd& z, const VectorXcd& t);
VectorXcd fiber_through(const RationalPolytope& s, const VectorXcd& z, const VectorXcd& t);

/// Box prod [c_j, d_j] in log coordinates.
struct LogBox {
    std::vector<std::pair<double, double>> sides;
    bool contains(const VectorXd& x, double slack = 0) const;
};

/**
 * Smallest box containing Log F^{-1}({r <= |w_k| <= R}) for the monomial map
 * F(z) = (z^{alpha_1}, ..., z^{alpha_n}).
 */
LogBox proper_box_pullback(const std::vector<LatticeVector>& alphas, double outer_radius, double inner_radius);

}  // namespace cone_hull

#endif
