#include "cone_hull/cone_rays.hpp"

#include "cone_hull/exact_linalg.hpp"

#include <algorithm>
#include <set>

namespace cone_hull {

namespace {

Eigen::Index tight_rank(const std::vector<VectorQ>& processed, const VectorQ& a, const VectorQ* b) {
    std::vector<Eigen::Index> rows;
    for (std::size_t i = 0; i < processed.size(); ++i) {
        if (processed[i].dot(a) != 0) continue;
        if (b && processed[i].dot(*b) != 0) continue;
        rows.push_back(static_cast<Eigen::Index>(i));
    }
    if (rows.empty()) return 0;
    MatrixQ m(static_cast<Eigen::Index>(rows.size()), a.size());
    for (std::size_t k = 0; k < rows.size(); ++k)
        m.row(static_cast<Eigen::Index>(k)) = processed[static_cast<std::size_t>(rows[k])].transpose();
    return rank(m);
}

std::vector<Rational> key(const VectorZ& v) {
    std::vector<Rational> k(static_cast<std::size_t>(v.size()));
    for (Eigen::Index i = 0; i < v.size(); ++i) k[static_cast<std::size_t>(i)] = Rational(v(i));
    return k;
}

}  // namespace

ConeGenerators double_description(const MatrixQ& inequalities, Eigen::Index dim) {
    std::vector<VectorQ> lineality;
    for (Eigen::Index i = 0; i < dim; ++i) lineality.push_back(VectorQ::Unit(dim, i));
    std::vector<VectorQ> rays;
    std::vector<VectorQ> processed;

    for (Eigen::Index r = 0; r < inequalities.rows(); ++r) {
        const VectorQ h = inequalities.row(r).transpose();
        if (h.isZero()) continue;

        auto split = std::find_if(lineality.begin(), lineality.end(), [&](const VectorQ& l) { return h.dot(l) != 0; });
        if (split != lineality.end()) {
            VectorQ pivot = *split;
            lineality.erase(split);
            Rational hp = h.dot(pivot);
            if (hp < 0) {
                pivot = -pivot;
                hp = -hp;
            }
            for (auto& l : lineality) l -= (h.dot(l) / hp) * pivot;
            for (auto& ray : rays) ray -= (h.dot(ray) / hp) * pivot;
            rays.push_back(pivot);
            processed.push_back(h);
            continue;
        }

        std::vector<VectorQ> positive, zero, negative;
        for (const auto& ray : rays) {
            const Rational s = h.dot(ray);
            (s > 0 ? positive : s < 0 ? negative : zero).push_back(ray);
        }
        processed.push_back(h);
        const Eigen::Index target = dim - static_cast<Eigen::Index>(lineality.size()) - 2;
        std::vector<VectorQ> next = positive;
        next.insert(next.end(), zero.begin(), zero.end());
        for (const auto& p : positive) {
            for (const auto& q : negative) {
                if (tight_rank(processed, p, &q) < target) continue;
                next.push_back(h.dot(p) * q - h.dot(q) * p);
            }
        }
        rays = std::move(next);
    }

    ConeGenerators out;
    const Eigen::Index extreme_rank = dim - static_cast<Eigen::Index>(lineality.size()) - 1;
    std::set<std::vector<Rational>> seen;
    for (const auto& ray : rays) {
        if (ray.isZero()) continue;
        if (tight_rank(processed, ray, nullptr) < extreme_rank) continue;
        VectorZ p = primitive_direction(ray);
        if (seen.insert(key(p)).second) out.rays.push_back(p);
    }
    for (const auto& l : lineality) out.lineality.push_back(primitive_direction(l));
    std::sort(out.rays.begin(), out.rays.end(), [](const VectorZ& a, const VectorZ& b) { return key(a) < key(b); });
    return out;
}

std::vector<VectorZ> all_directions(const ConeGenerators& g) {
    std::vector<VectorZ> out = g.rays;
    for (const auto& l : g.lineality) {
        out.push_back(l);
        out.push_back(-l);
    }
    return out;
}

}  // namespace cone_hull
