#ifndef CONE_HULL_EXTREMAL_HPP
#define CONE_HULL_EXTREMAL_HPP

#include "cone_hull/polytope.hpp"
#include "cone_hull/scalar.hpp"

#include <cstdint>
#include <vector>

namespace cone_hull {

/**
 * One piece Log_J^{-1}(ch A) of a Reinhardt body, living on the coordinate
 * subspace C^{*J}. `J` holds 0-based coordinates in increasing order and every
 * point of `A` has |J| entries.
 */
template <typename Scalar>
struct ReinhardtPiece {
    std::vector<Eigen::Index> J;
    std::vector<Vector<Scalar>> A;
};

/// A compact Reinhardt set given in logarithmic coordinates as a union of pieces.
template <typename Scalar>
class ReinhardtBody {
public:
    ReinhardtBody(Eigen::Index dim, std::vector<ReinhardtPiece<Scalar>> pieces);

    /// Unit torus T^n (A = {0}).
    static ReinhardtBody torus(Eigen::Index dim);
    /// Single full-support piece Log^{-1}(ch A).
    static ReinhardtBody from_log_points(Eigen::Index dim, std::vector<Vector<Scalar>> A);

    Eigen::Index dim() const { return dim_; }
    const std::vector<ReinhardtPiece<Scalar>>& pieces() const { return pieces_; }

    bool has_full_support_piece() const;
    bool only_full_support_pieces() const;
    /// Union of the A lists of all pieces with J = [n].
    std::vector<Vector<Scalar>> full_support_points() const;

    /// K_J: every piece projected to the coordinates J ∩ J_piece, re-indexed inside J.
    ReinhardtBody project(const std::vector<Eigen::Index>& J) const;

    template <typename Other>
    ReinhardtBody<Other> cast() const;

private:
    Eigen::Index dim_;
    std::vector<ReinhardtPiece<Scalar>> pieces_;
};

template <typename Scalar>
struct VskValue {
    Scalar value{};
    Vector<Scalar> maximizer_s;
    Vector<Scalar> active_a;
};

template <typename Scalar>
struct HullCertificate {
    bool inside = false;
    Vector<Scalar> a;          // point of ch A (inside)
    Vector<Scalar> t;          // point of Gamma° with x = a - t (inside)
    Vector<Scalar> weights;    // convex weights over full_support_points() (inside)
    Vector<Scalar> separator;  // xi in Gamma with <x, xi> > phi_A(xi) (outside)
    Scalar margin{};           // <x, xi> - phi_A(xi) (outside)
};

/// phi_A(s) over the full-support pieces.
template <typename Scalar>
Scalar support_A(const ReinhardtBody<Scalar>& k, const Vector<Scalar>& s);

/// Every coordinate has a vertex of S positive there.
bool meets_open_orthant(const RationalPolytope& s);

/// Throws unless S meets the open orthant or K has only full-support pieces.
template <typename Scalar>
void check_vsk_precondition(const RationalPolytope& s, const ReinhardtBody<Scalar>& k);

/// V^S_K(exp x) = max over s in S of <s, x> - phi_A(s), solved as a linear program.
template <typename Scalar>
VskValue<Scalar> eval_vsk(const RationalPolytope& s, const ReinhardtBody<Scalar>& k, const Vector<Scalar>& x);

/// Membership of x in ch A - Gamma°, with a decomposition or a separating xi.
template <typename Scalar>
HullCertificate<Scalar> hull_membership(const RationalPolytope& s, const ReinhardtBody<Scalar>& k,
                                        const Vector<Scalar>& x);

/// max over alpha in mS ∩ N^n of (<alpha, x> - phi_A(alpha)) / m.
template <typename Scalar>
Scalar siciak_monomial(const RationalPolytope& s, const ReinhardtBody<Scalar>& k, long long m,
                       const Vector<Scalar>& x, std::uint64_t budget = kDefaultEnumerationBudget);
template <typename Scalar>
Scalar siciak_monomial(const ExponentSet& exponents, const ReinhardtBody<Scalar>& k, const Vector<Scalar>& x);

/// V^{S_J}_{K_J}(x_J); J holds 0-based coordinates.
template <typename Scalar>
Scalar vsk_on_axes(const RationalPolytope& s, const ReinhardtBody<Scalar>& k, const std::vector<Eigen::Index>& J,
                   const Vector<Scalar>& xJ);

/// Seeded points of ch A - Gamma° with recession part of length at most `depth`.
std::vector<VectorXd> hull_sampler(const RationalPolytope& s, const ReinhardtBody<double>& k, double depth,
                                   std::size_t count, std::uint64_t seed);

/// Unit directions generating Gamma° (exact generators for n <= 3, seeded Monte Carlo otherwise).
std::vector<VectorXd> dual_directions(const RationalPolytope& s, std::uint64_t seed = 0);

}  // namespace cone_hull

#endif
