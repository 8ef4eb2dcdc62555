#ifndef CONE_HULL_CONE_RAYS_HPP
#define CONE_HULL_CONE_RAYS_HPP

#include "cone_hull/scalar.hpp"

#include <vector>

namespace cone_hull {

/**
 * Generators of a polyhedral cone C = lin(lineality) + cone(rays).
 * Rays are extreme modulo the lineality space; both are stored as primitive
 * integer directions so results compare exactly.
 */
struct ConeGenerators {
    std::vector<VectorZ> rays;
    std::vector<VectorZ> lineality;
};

/**
 * Double description (Motzkin) for the cone {x in R^dim : <h_i, x> >= 0},
 * one row h_i of `inequalities` per constraint. Exact over the rationals.
 */
ConeGenerators double_description(const MatrixQ& inequalities, Eigen::Index dim);

/// Every generator direction, with lineality vectors listed in both signs.
std::vector<VectorZ> all_directions(const ConeGenerators& g);

}  // namespace cone_hull

#endif
