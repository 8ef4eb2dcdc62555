#ifndef CONE_HULL_POLYTOPE_HPP
#define CONE_HULL_POLYTOPE_HPP

#include "cone_hull/cone_rays.hpp"
#include "cone_hull/scalar.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace cone_hull {

/// Default cap on bounding-box candidates scanned by lattice enumeration.
inline constexpr std::uint64_t kDefaultEnumerationBudget = 10'000'000;

/**
 * Inequality description of a polytope: `equalities * x == equality_rhs`
 * pins the affine hull, and each facet row gives `<normal, x> <= offset`.
 * Normals are primitive integer vectors lying in the direction space of the
 * affine hull, so a facet is listed exactly once.
 */
struct HalfspaceRep {
    std::vector<VectorZ> equalities;
    std::vector<Rational> equality_rhs;
    std::vector<VectorZ> facet_normals;
    std::vector<Rational> facet_offsets;

    bool contains(const VectorQ& x) const;
    /// Membership of the lattice point `alpha` in `scale` times the polytope.
    bool contains_scaled(const LatticeVector& alpha, long long scale) const;
};

/// Facets of ch(points) for an arbitrary finite point set.
HalfspaceRep halfspace_rep(const std::vector<VectorQ>& points);

/**
 * The compact convex set S in R^n_+ with 0 in S, stored as its exact vertex
 * list. Construction rejects negative coordinates and sets missing the
 * origin, and drops every listed point that is a convex combination of the
 * others.
 */
class RationalPolytope {
public:
    RationalPolytope(Eigen::Index dim, std::vector<VectorQ> points);

    /// Convex hull of arbitrarily many points, using a lattice-friendly hull
    /// routine instead of one LP per point.
    static RationalPolytope hull_of(Eigen::Index dim, const std::vector<VectorQ>& points);

    /// Standard simplex ch{0, e_1, ..., e_n}.
    static RationalPolytope simplex(Eigen::Index dim);

    Eigen::Index dim() const { return dim_; }
    const std::vector<VectorQ>& vertices() const { return vertices_; }
    const std::vector<VectorXd>& vertices_double() const { return vertices_double_; }
    const HalfspaceRep& halfspaces() const { return halfspaces_; }

    /// dim span_R S (the affine hull passes through 0).
    Eigen::Index span_dimension() const { return span_dim_; }
    bool full_dimensional() const { return span_dim_ == dim_; }

    /// Largest vertex coordinate.
    Rational max_coordinate() const;

    RationalPolytope scaled(const Rational& factor) const;

    bool operator==(const RationalPolytope& other) const;

private:
    struct Trusted {};
    RationalPolytope(Trusted, Eigen::Index dim, std::vector<VectorQ> vertices);
    void finish();

    Eigen::Index dim_ = 0;
    std::vector<VectorQ> vertices_;
    std::vector<VectorXd> vertices_double_;
    HalfspaceRep halfspaces_;
    Eigen::Index span_dim_ = 0;
};

/// Exact support function phi_S(xi) = max over vertices of <v, xi>.
Rational support(const RationalPolytope& s, const VectorQ& xi);
double support(const RationalPolytope& s, const VectorXd& xi);

/// Certificate returned by `contains`.
struct MembershipCertificate {
    bool inside = false;
    VectorQ weights;    // convex weights over `vertices()` (inside)
    VectorQ separator;  // xi with <xi, x> > phi_S(xi) (outside)
};

MembershipCertificate contains(const RationalPolytope& s, const VectorQ& x);

/// ch(S ∩ (1/m) Z^n).
RationalPolytope refine(const RationalPolytope& s, long long m,
                        std::uint64_t budget = kDefaultEnumerationBudget);

/// The lattice points of mS, in lexicographic order.
struct ExponentSet {
    long long m = 0;
    std::vector<LatticeVector> points;
};

ExponentSet enumerate_exponents(const RationalPolytope& s, long long m,
                                std::uint64_t budget = kDefaultEnumerationBudget);

enum class DistanceNorm { Euclidean, L1 };

struct LatticeDistance {
    double distance = 0;
    /// Exact squared Euclidean distance, or the exact L1 distance for `DistanceNorm::L1`.
    Rational exact;
    LatticeVector nearest;  // a lattice point outside P attaining the distance
    long long box = 0;      // M = ceil(max vertex coordinate)
    double bound = 0;       // 1 / (sqrt(n) (n-1)! M^(n-1))
    bool bound_holds = false;
};

/**
 * Distance from an integral polytope with nonempty interior to the nearest
 * lattice point outside it, by exhaustive scan of [-1, M+1]^n.
 */
LatticeDistance lattice_distance(const RationalPolytope& p, DistanceNorm norm = DistanceNorm::Euclidean);

/// Same scan without the nonempty-interior requirement (bound fields still filled).
LatticeDistance lattice_distance_unchecked(const RationalPolytope& p,
                                           DistanceNorm norm = DistanceNorm::Euclidean);

struct DistanceGrowthRow {
    long long m = 0;
    double d_m = 0;
    double root = 0;           // d_m^(1/m)
    double root_bound = 0;     // (1 / (sqrt(n) (n-1)! m phi_S(1)))^(1/m)
    bool full_dimensional = true;
    bool holds = false;        // root >= root_bound
};

std::vector<DistanceGrowthRow> distance_growth(const RationalPolytope& s, long long m_max,
                                               DistanceNorm norm = DistanceNorm::Euclidean,
                                               std::uint64_t budget = kDefaultEnumerationBudget);

/**
 * Gamma = R_+ S and its dual cone. `dual_halfspaces` are the normals h with
 * Gamma° = {x : <h, x> >= 0}; `dual_generators` (filled for n <= 3) span Gamma°.
 */
struct ConeRep {
    Eigen::Index dim = 0;
    std::vector<VectorZ> generators;
    std::vector<VectorZ> dual_halfspaces;
    std::optional<ConeGenerators> dual_generators;
};

ConeRep dual_cone(const RationalPolytope& s);

/// Exact membership of x in Gamma°.
bool in_dual_cone(const ConeRep& cone, const VectorQ& x);

/// pi_J(S ∩ R^J); J holds 0-based coordinate indices in the requested order.
RationalPolytope section(const RationalPolytope& s, const std::vector<Eigen::Index>& J);

/// Largest mu with mu * alpha in S (0 when alpha is outside the cone, nullopt for alpha = 0).
std::optional<Rational> ray_scale(const RationalPolytope& s, const VectorQ& alpha);

/// Exact membership in Gamma = R_+ S.
bool in_cone(const RationalPolytope& s, const VectorQ& alpha);

/// Smallest integer m >= 1 with alpha in mS (0 for alpha = 0); nullopt outside the cone.
std::optional<long long> minimal_scaling(const RationalPolytope& s, const LatticeVector& alpha);

}  // namespace cone_hull

#endif
