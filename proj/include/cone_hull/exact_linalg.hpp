#ifndef CONE_HULL_EXACT_LINALG_HPP
#define CONE_HULL_EXACT_LINALG_HPP

#include "cone_hull/scalar.hpp"

#include <optional>

namespace cone_hull {

/// Reduced row echelon form; `pivots` receives the pivot column of each nonzero row.
MatrixQ rref(const MatrixQ& a, std::vector<Eigen::Index>* pivots = nullptr);

Eigen::Index rank(const MatrixQ& a);

/// Columns form a basis of {x : a x = 0}.
MatrixQ nullspace(const MatrixQ& a);

/// Some solution of a x = b, if the system is consistent.
std::optional<VectorQ> solve_exact(const MatrixQ& a, const VectorQ& b);

/// Fraction-free (Bareiss) determinant of a square integer matrix.
BigInt determinant(const MatrixZ& a);

/// gcd of all maximal (cols x cols) minors of a tall integer matrix.
BigInt maximal_minor_gcd(const MatrixZ& a);

/**
 * Smith normal form `left * a * right = diagonal` with unimodular `left` and
 * `right`. `left_inverse` is kept alongside so callers can read lattice bases
 * off its columns without a second inversion.
 */
struct SmithForm {
    MatrixZ left;
    MatrixZ left_inverse;
    MatrixZ right;
    MatrixZ diagonal;
    Eigen::Index rank = 0;
};

SmithForm smith_normal_form(const MatrixZ& a);

MatrixQ to_rational(const MatrixZ& a);

}  // namespace cone_hull

#endif
