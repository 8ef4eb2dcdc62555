#include "cone_hull/polytope.hpp"

#include "cone_hull/errors.hpp"
#include "cone_hull/exact_linalg.hpp"
#include "cone_hull/linear_program.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <set>

namespace cone_hull {

namespace {

using Key = std::vector<Rational>;

Key key_of(const VectorQ& v) { return Key(v.data(), v.data() + v.size()); }

bool lex_less(const VectorQ& a, const VectorQ& b) {
    return std::lexicographical_compare(a.data(), a.data() + a.size(), b.data(), b.data() + b.size());
}

std::vector<VectorQ> dedupe(const std::vector<VectorQ>& points) {
    std::set<Key> seen;
    std::vector<VectorQ> out;
    for (const auto& p : points)
        if (seen.insert(key_of(p)).second) out.push_back(p);
    return out;
}

Rational dot(const VectorZ& a, const VectorQ& b) {
    Rational s = 0;
    for (Eigen::Index i = 0; i < a.size(); ++i) s += Rational(a(i)) * b(i);
    return s;
}

// Calls `visit` with every k-subset of {0, ..., n-1}.
void for_each_subset(std::size_t n, std::size_t k, const std::function<void(const std::vector<std::size_t>&)>& visit) {
    if (k > n) return;
    std::vector<std::size_t> pick(k);
    std::iota(pick.begin(), pick.end(), 0);
    for (;;) {
        visit(pick);
        std::size_t pos = k;
        while (pos > 0 && pick[pos - 1] == n - k + pos - 1) --pos;
        if (pos == 0) return;
        ++pick[pos - 1];
        for (std::size_t i = pos; i < k; ++i) pick[i] = pick[i - 1] + 1;
    }
}

// Lexicographically largest maximizer of <c, p>; such a point is a vertex of ch(points).
std::size_t lex_argmax(const std::vector<VectorQ>& points, const VectorQ& c) {
    std::size_t best = 0;
    Rational best_value = c.dot(points[0]);
    for (std::size_t i = 1; i < points.size(); ++i) {
        Rational value = c.dot(points[i]);
        if (value > best_value || (value == best_value && lex_less(points[best], points[i]))) {
            best = i;
            best_value = value;
        }
    }
    return best;
}

Rational cross(const VectorQ& o, const VectorQ& a, const VectorQ& b) {
    return (a(0) - o(0)) * (b(1) - o(1)) - (a(1) - o(1)) * (b(0) - o(0));
}

// Andrew's monotone chain; collinear points are dropped.
std::vector<VectorQ> planar_hull(std::vector<VectorQ> pts) {
    std::sort(pts.begin(), pts.end(), lex_less);
    if (pts.size() <= 2) return pts;
    std::vector<VectorQ> hull(2 * pts.size());
    std::size_t k = 0;
    for (const auto& p : pts) {
        while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= 0) --k;
        hull[k++] = p;
    }
    for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
        while (k >= t && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
        hull[k++] = pts[i];
    }
    hull.resize(k - 1);
    return hull;
}

std::vector<VectorQ> hull_vertices(const std::vector<VectorQ>& raw) {
    std::vector<VectorQ> points = dedupe(raw);
    if (points.size() <= 1) return points;
    const Eigen::Index n = points[0].size();
    if (n == 1) {
        auto [lo, hi] = std::minmax_element(points.begin(), points.end(),
                                            [](const VectorQ& a, const VectorQ& b) { return a(0) < b(0); });
        return {*lo, *hi};
    }
    if (n == 2) return planar_hull(points);

    // Grow a vertex set by adding maximizers of violated facet/equality
    // functionals until its hull contains every point.
    std::set<std::size_t> chosen;
    for (Eigen::Index i = 0; i < n; ++i) {
        chosen.insert(lex_argmax(points, VectorQ::Unit(n, i)));
        chosen.insert(lex_argmax(points, VectorQ(-VectorQ::Unit(n, i))));
    }
    for (;;) {
        std::vector<VectorQ> current;
        for (auto i : chosen) current.push_back(points[i]);
        HalfspaceRep rep = halfspace_rep(current);
        std::set<std::size_t> added;
        for (std::size_t e = 0; e < rep.equalities.size(); ++e) {
            const VectorQ normal = to_rational(rep.equalities[e]);
            std::size_t up = lex_argmax(points, normal);
            if (normal.dot(points[up]) != rep.equality_rhs[e]) added.insert(up);
            std::size_t down = lex_argmax(points, VectorQ(-normal));
            if (normal.dot(points[down]) != rep.equality_rhs[e]) added.insert(down);
        }
        for (std::size_t f = 0; f < rep.facet_normals.size(); ++f) {
            const VectorQ normal = to_rational(rep.facet_normals[f]);
            std::size_t up = lex_argmax(points, normal);
            if (normal.dot(points[up]) > rep.facet_offsets[f]) added.insert(up);
        }
        std::size_t before = chosen.size();
        chosen.insert(added.begin(), added.end());
        if (chosen.size() == before) return current;
    }
}

}  // namespace

// ---------------------------------------------------------------------------
// HalfspaceRep

bool HalfspaceRep::contains(const VectorQ& x) const {
    for (std::size_t e = 0; e < equalities.size(); ++e)
        if (dot(equalities[e], x) != equality_rhs[e]) return false;
    for (std::size_t f = 0; f < facet_normals.size(); ++f)
        if (dot(facet_normals[f], x) > facet_offsets[f]) return false;
    return true;
}

bool HalfspaceRep::contains_scaled(const LatticeVector& alpha, long long scale) const {
    auto lhs = [&](const VectorZ& normal) {
        BigInt s = 0;
        for (Eigen::Index i = 0; i < normal.size(); ++i) s += normal(i) * alpha(i);
        return Rational(s);
    };
    for (std::size_t e = 0; e < equalities.size(); ++e)
        if (lhs(equalities[e]) != equality_rhs[e] * Rational(scale)) return false;
    for (std::size_t f = 0; f < facet_normals.size(); ++f)
        if (lhs(facet_normals[f]) > facet_offsets[f] * Rational(scale)) return false;
    return true;
}

HalfspaceRep halfspace_rep(const std::vector<VectorQ>& raw) {
    HalfspaceRep rep;
    std::vector<VectorQ> points = dedupe(raw);
    if (points.empty()) throw InvalidPolytope("halfspace representation of an empty point set");
    const Eigen::Index n = points[0].size();
    const VectorQ& base = points[0];

    MatrixQ directions(static_cast<Eigen::Index>(points.size()) - 1, n);
    for (std::size_t i = 1; i < points.size(); ++i)
        directions.row(static_cast<Eigen::Index>(i) - 1) = (points[i] - base).transpose();
    MatrixQ eq = points.size() > 1 ? nullspace(directions) : MatrixQ(MatrixQ::Identity(n, n));
    for (Eigen::Index c = 0; c < eq.cols(); ++c) {
        VectorZ normal = primitive_direction(eq.col(c));
        rep.equalities.push_back(normal);
        rep.equality_rhs.push_back(dot(normal, base));
    }
    const auto affine_dim = static_cast<std::size_t>(n - eq.cols());
    if (affine_dim == 0) return rep;

    std::set<std::pair<Key, Rational>> seen;
    for_each_subset(points.size(), affine_dim, [&](const std::vector<std::size_t>& pick) {
        MatrixQ system(static_cast<Eigen::Index>(affine_dim - 1 + rep.equalities.size()), n);
        Eigen::Index r = 0;
        for (std::size_t i = 1; i < pick.size(); ++i) system.row(r++) = (points[pick[i]] - points[pick[0]]).transpose();
        for (const auto& e : rep.equalities) system.row(r++) = to_rational(e).transpose();
        MatrixQ normal_space = nullspace(system);
        if (normal_space.cols() != 1) return;
        VectorQ normal = to_rational(primitive_direction(normal_space.col(0)));
        const Rational offset = normal.dot(points[pick[0]]);
        bool below = true, above = true;
        for (const auto& p : points) {
            const Rational v = normal.dot(p);
            if (v > offset) below = false;
            if (v < offset) above = false;
        }
        if (!below && !above) return;
        if (!below) normal = -normal;
        const Rational b = below ? offset : Rational(-offset);
        if (seen.insert({key_of(normal), b}).second) {
            rep.facet_normals.push_back(primitive_direction(normal));
            rep.facet_offsets.push_back(b);
        }
    });
    return rep;
}

// ---------------------------------------------------------------------------
// RationalPolytope

RationalPolytope::RationalPolytope(Eigen::Index dim, std::vector<VectorQ> points) : dim_(dim) {
    if (dim < 1) throw InvalidPolytope("dimension must be positive");
    if (points.empty()) throw InvalidPolytope("vertex list is empty");
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (points[i].size() != dim)
            throw DimensionMismatch("vertex " + std::to_string(i) + " has " + std::to_string(points[i].size()) +
                                    " coordinates, expected " + std::to_string(dim));
        for (Eigen::Index j = 0; j < dim; ++j)
            if (points[i](j) < 0)
                throw InvalidPolytope("vertex " + std::to_string(i) + " has a negative coordinate; S must lie in R^n_+");
    }
    points = dedupe(points);

    // Drop points that are convex combinations of the remaining ones.
    for (std::size_t i = 0; i < points.size() && points.size() > 1;) {
        const auto k = static_cast<Eigen::Index>(points.size() - 1);
        LinearProgram<Rational> lp(k);
        Eigen::Index col = 0;
        MatrixQ others(dim, k);
        for (std::size_t j = 0; j < points.size(); ++j)
            if (j != i) others.col(col++) = points[j];
        for (Eigen::Index r = 0; r < dim; ++r) lp.add_constraint(others.row(r).transpose(), Relation::Equal, points[i](r));
        lp.add_constraint(VectorQ::Ones(k), Relation::Equal, Rational(1));
        if (solve(lp).status == LpStatus::Optimal)
            points.erase(points.begin() + static_cast<std::ptrdiff_t>(i));
        else
            ++i;
    }
    vertices_ = std::move(points);
    finish();
}

RationalPolytope::RationalPolytope(Trusted, Eigen::Index dim, std::vector<VectorQ> vertices)
    : dim_(dim), vertices_(std::move(vertices)) {
    finish();
}

void RationalPolytope::finish() {
    halfspaces_ = halfspace_rep(vertices_);
    if (!halfspaces_.contains(VectorQ::Zero(dim_))) throw InvalidPolytope("the origin is not a member of S");
    span_dim_ = dim_ - static_cast<Eigen::Index>(halfspaces_.equalities.size());
    vertices_double_.clear();
    for (const auto& v : vertices_) vertices_double_.push_back(to_double(v));
}

RationalPolytope RationalPolytope::hull_of(Eigen::Index dim, const std::vector<VectorQ>& points) {
    if (points.empty()) throw InvalidPolytope("vertex list is empty");
    for (const auto& p : points) {
        if (p.size() != dim) throw DimensionMismatch("point has wrong dimension");
        for (Eigen::Index j = 0; j < dim; ++j)
            if (p(j) < 0) throw InvalidPolytope("point with a negative coordinate; S must lie in R^n_+");
    }
    auto vertices = hull_vertices(points);
    std::sort(vertices.begin(), vertices.end(), lex_less);
    return RationalPolytope(Trusted{}, dim, std::move(vertices));
}

RationalPolytope RationalPolytope::simplex(Eigen::Index dim) {
    std::vector<VectorQ> vertices{VectorQ::Zero(dim)};
    for (Eigen::Index i = 0; i < dim; ++i) vertices.push_back(VectorQ::Unit(dim, i));
    return RationalPolytope(Trusted{}, dim, std::move(vertices));
}

Rational RationalPolytope::max_coordinate() const {
    Rational best = 0;
    for (const auto& v : vertices_)
        for (Eigen::Index j = 0; j < dim_; ++j) best = std::max(best, v(j));
    return best;
}

RationalPolytope RationalPolytope::scaled(const Rational& factor) const {
    if (factor < 0) throw InvalidPolytope("negative scaling factor");
    if (factor == 0) return RationalPolytope(Trusted{}, dim_, {VectorQ::Zero(dim_)});
    std::vector<VectorQ> vertices;
    for (const auto& v : vertices_) vertices.push_back(v * factor);
    return RationalPolytope(Trusted{}, dim_, std::move(vertices));
}

bool RationalPolytope::operator==(const RationalPolytope& other) const {
    if (dim_ != other.dim_ || vertices_.size() != other.vertices_.size()) return false;
    std::set<Key> mine, theirs;
    for (const auto& v : vertices_) mine.insert(key_of(v));
    for (const auto& v : other.vertices_) theirs.insert(key_of(v));
    return mine == theirs;
}

// ---------------------------------------------------------------------------
// Operations

Rational support(const RationalPolytope& s, const VectorQ& xi) {
    if (xi.size() != s.dim()) throw DimensionMismatch("support: direction has wrong dimension");
    Rational best = s.vertices()[0].dot(xi);
    for (const auto& v : s.vertices()) best = std::max(best, Rational(v.dot(xi)));
    return best;
}

double support(const RationalPolytope& s, const VectorXd& xi) {
    if (xi.size() != s.dim()) throw DimensionMismatch("support: direction has wrong dimension");
    double best = -std::numeric_limits<double>::infinity();
    for (const auto& v : s.vertices_double()) best = std::max(best, v.dot(xi));
    return best;
}

MembershipCertificate contains(const RationalPolytope& s, const VectorQ& x) {
    if (x.size() != s.dim()) throw DimensionMismatch("contains: point has wrong dimension");
    const auto k = static_cast<Eigen::Index>(s.vertices().size());
    const Eigen::Index n = s.dim();

    LinearProgram<Rational> feasibility(k);
    for (Eigen::Index r = 0; r < n; ++r) {
        VectorQ row(k);
        for (Eigen::Index j = 0; j < k; ++j) row(j) = s.vertices()[static_cast<std::size_t>(j)](r);
        feasibility.add_constraint(row, Relation::Equal, x(r));
    }
    feasibility.add_constraint(VectorQ::Ones(k), Relation::Equal, Rational(1));
    auto found = solve(feasibility);

    MembershipCertificate cert;
    if (found.status == LpStatus::Optimal) {
        cert.inside = true;
        cert.weights = found.x;
        return cert;
    }

    // maximize <xi, x> - u  s.t.  <xi, v> <= u for every vertex, -1 <= xi_i <= 1.
    LinearProgram<Rational> separation(n + 1);
    VectorQ objective(n + 1);
    objective << x, Rational(-1);
    separation.set_objective(objective);
    for (Eigen::Index j = 0; j <= n; ++j) separation.set_free(j);
    for (const auto& v : s.vertices()) {
        VectorQ row(n + 1);
        row << v, Rational(-1);
        separation.add_constraint(row, Relation::LessEqual, Rational(0));
    }
    for (Eigen::Index j = 0; j < n; ++j) {
        separation.add_constraint(VectorQ::Unit(n + 1, j), Relation::LessEqual, Rational(1));
        separation.add_constraint(VectorQ::Unit(n + 1, j), Relation::GreaterEqual, Rational(-1));
    }
    auto sep = solve(separation);
    if (sep.status != LpStatus::Optimal || sep.value <= 0)
        throw NumericalFailure("contains: infeasible membership without a separating functional");
    cert.separator = sep.x.head(n);
    return cert;
}

namespace {

// Integer form of the facet data for a fast scan of lattice points in m * P.
class LatticeFilter {
public:
    LatticeFilter(const HalfspaceRep& rep, long long scale) {
        auto add = [&](const VectorZ& normal, const Rational& offset, bool equality) {
            Row row;
            row.equality = equality;
            const Rational rhs = offset * Rational(scale);
            for (Eigen::Index i = 0; i < normal.size(); ++i)
                row.normal.push_back(BigInt(normal(i) * denominator(rhs)).convert_to<long long>());
            row.rhs = BigInt(numerator(rhs)).convert_to<long long>();
            rows_.push_back(std::move(row));
        };
        for (std::size_t e = 0; e < rep.equalities.size(); ++e) add(rep.equalities[e], rep.equality_rhs[e], true);
        for (std::size_t f = 0; f < rep.facet_normals.size(); ++f) add(rep.facet_normals[f], rep.facet_offsets[f], false);
    }

    bool accepts(const std::vector<long long>& alpha) const {
        for (const auto& row : rows_) {
            __int128 s = 0;
            for (std::size_t i = 0; i < alpha.size(); ++i) s += static_cast<__int128>(row.normal[i]) * alpha[i];
            if (row.equality ? s != row.rhs : s > row.rhs) return false;
        }
        return true;
    }

private:
    struct Row {
        std::vector<long long> normal;
        long long rhs = 0;
        bool equality = false;
    };
    std::vector<Row> rows_;
};

std::vector<LatticeVector> lattice_points(const RationalPolytope& s, long long m, std::uint64_t budget) {
    if (m < 1) throw PreconditionViolated("scaling m must be at least 1");
    const Eigen::Index n = s.dim();
    std::vector<long long> upper(static_cast<std::size_t>(n), 0);
    long double candidates = 1;
    for (Eigen::Index j = 0; j < n; ++j) {
        Rational top = 0;
        for (const auto& v : s.vertices()) top = std::max(top, v(j));
        const Rational scaled = top * Rational(m);
        upper[static_cast<std::size_t>(j)] = BigInt(numerator(scaled) / denominator(scaled)).convert_to<long long>();
        candidates *= static_cast<long double>(upper[static_cast<std::size_t>(j)] + 1);
    }
    if (candidates > static_cast<long double>(budget))
        throw BudgetExceeded("lattice enumeration of " + std::to_string(m) + "S needs " +
                             std::to_string(static_cast<unsigned long long>(candidates)) +
                             " candidates, budget is " + std::to_string(budget));

    LatticeFilter filter(s.halfspaces(), m);
    std::vector<LatticeVector> out;
    std::vector<long long> alpha(static_cast<std::size_t>(n), 0);
    for (;;) {
        if (filter.accepts(alpha)) out.push_back(Eigen::Map<const LatticeVector>(alpha.data(), n));
        Eigen::Index j = n - 1;
        while (j >= 0 && alpha[static_cast<std::size_t>(j)] == upper[static_cast<std::size_t>(j)]) {
            alpha[static_cast<std::size_t>(j)] = 0;
            --j;
        }
        if (j < 0) break;
        ++alpha[static_cast<std::size_t>(j)];
    }
    return out;
}

RationalPolytope lattice_hull(const RationalPolytope& s, long long m, std::uint64_t budget) {
    std::vector<VectorQ> points;
    for (const auto& alpha : lattice_points(s, m, budget)) points.push_back(to_rational(alpha));
    return RationalPolytope::hull_of(s.dim(), points);
}

bool is_integral(const RationalPolytope& p) {
    for (const auto& v : p.vertices())
        for (Eigen::Index j = 0; j < v.size(); ++j)
            if (denominator(v(j)) != 1) return false;
    return true;
}

// Exact squared distance from x to ch(vertices): minimum over affinely
// independent vertex subsets whose hull contains the projection of x.
Rational squared_distance(const std::vector<VectorQ>& vertices, const VectorQ& x, std::size_t max_subset) {
    std::optional<Rational> best;
    for (std::size_t k = 1; k <= std::min(max_subset, vertices.size()); ++k) {
        for_each_subset(vertices.size(), k, [&](const std::vector<std::size_t>& pick) {
            const VectorQ& w0 = vertices[pick[0]];
            VectorQ point = w0;
            if (k > 1) {
                MatrixQ d(x.size(), static_cast<Eigen::Index>(k - 1));
                for (std::size_t i = 1; i < k; ++i) d.col(static_cast<Eigen::Index>(i - 1)) = vertices[pick[i]] - w0;
                MatrixQ gram = d.transpose() * d;
                auto coeffs = solve_exact(gram, d.transpose() * (x - w0));
                if (!coeffs || rank(gram) != gram.rows()) return;
                Rational total = 0;
                for (Eigen::Index i = 0; i < coeffs->size(); ++i) {
                    if ((*coeffs)(i) < 0) return;
                    total += (*coeffs)(i);
                }
                if (total > 1) return;
                point = w0 + d * (*coeffs);
            }
            const Rational dist = (x - point).squaredNorm();
            if (!best || dist < *best) best = dist;
        });
    }
    return *best;
}

Rational l1_distance(const RationalPolytope& p, const VectorQ& x) {
    const Eigen::Index n = p.dim();
    const auto k = static_cast<Eigen::Index>(p.vertices().size());
    // variables: lambda (k), u (n); minimize sum u.
    LinearProgram<Rational> lp(k + n);
    VectorQ objective = VectorQ::Zero(k + n);
    objective.tail(n).setConstant(Rational(-1));
    lp.set_objective(objective);
    VectorQ simplex_row = VectorQ::Zero(k + n);
    simplex_row.head(k).setOnes();
    lp.add_constraint(simplex_row, Relation::Equal, Rational(1));
    for (Eigen::Index i = 0; i < n; ++i) {
        VectorQ row = VectorQ::Zero(k + n);
        for (Eigen::Index j = 0; j < k; ++j) row(j) = p.vertices()[static_cast<std::size_t>(j)](i);
        // u_i >= x_i - (V lambda)_i  and  u_i >= (V lambda)_i - x_i
        VectorQ upper = row;
        upper(k + i) = 1;
        lp.add_constraint(upper, Relation::GreaterEqual, x(i));
        VectorQ lower = -row;
        lower(k + i) = 1;
        lp.add_constraint(lower, Relation::GreaterEqual, Rational(-x(i)));
    }
    auto sol = solve(lp);
    if (sol.status != LpStatus::Optimal) throw NumericalFailure("L1 distance LP did not reach an optimum");
    return -sol.value;
}

double distance_lower_bound(Eigen::Index n, long long box) {
    double factorial = 1;
    for (Eigen::Index i = 2; i < n; ++i) factorial *= static_cast<double>(i);
    return 1.0 / (std::sqrt(static_cast<double>(n)) * factorial * std::pow(static_cast<double>(box), static_cast<double>(n - 1)));
}

}  // namespace

RationalPolytope refine(const RationalPolytope& s, long long m, std::uint64_t budget) {
    return lattice_hull(s, m, budget).scaled(Rational(1, m));
}

ExponentSet enumerate_exponents(const RationalPolytope& s, long long m, std::uint64_t budget) {
    ExponentSet out;
    out.m = m;
    out.points = lattice_points(s, m, budget);
    std::sort(out.points.begin(), out.points.end(), [](const LatticeVector& a, const LatticeVector& b) {
        return std::lexicographical_compare(a.data(), a.data() + a.size(), b.data(), b.data() + b.size());
    });
    return out;
}

LatticeDistance lattice_distance_unchecked(const RationalPolytope& p, DistanceNorm norm) {
    if (!is_integral(p)) throw PreconditionViolated("lattice_distance needs an integral polytope (lattice-point vertices)");
    const Eigen::Index n = p.dim();
    const Rational top = p.max_coordinate();
    LatticeDistance out;
    out.box = std::max<long long>(1, BigInt(numerator(top) / denominator(top) + (denominator(top) == 1 ? 0 : 1)).convert_to<long long>());
    out.bound = distance_lower_bound(n, out.box);

    const HalfspaceRep& rep = p.halfspaces();
    struct Candidate {
        Rational lower;
        VectorQ x;
    };
    std::vector<Candidate> candidates;
    std::vector<long long> x(static_cast<std::size_t>(n), -1);
    for (;;) {
        VectorQ q(n);
        for (Eigen::Index i = 0; i < n; ++i) q(i) = Rational(x[static_cast<std::size_t>(i)]);
        if (!rep.contains(q)) {
            Rational lower = 0;
            auto consider = [&](const VectorZ& normal, const Rational& violation) {
                if (violation <= 0) return;
                Rational bound;
                if (norm == DistanceNorm::Euclidean) {
                    bound = violation * violation / to_rational(normal).squaredNorm();
                } else {
                    BigInt largest = 0;
                    for (Eigen::Index i = 0; i < normal.size(); ++i) largest = std::max(largest, BigInt(abs(normal(i))));
                    bound = violation / Rational(largest);
                }
                lower = std::max(lower, bound);
            };
            for (std::size_t e = 0; e < rep.equalities.size(); ++e) {
                const Rational gap = dot(rep.equalities[e], q) - rep.equality_rhs[e];
                consider(rep.equalities[e], gap < 0 ? Rational(-gap) : gap);
            }
            for (std::size_t f = 0; f < rep.facet_normals.size(); ++f)
                consider(rep.facet_normals[f], dot(rep.facet_normals[f], q) - rep.facet_offsets[f]);
            candidates.push_back({lower, q});
        }
        Eigen::Index j = n - 1;
        while (j >= 0 && x[static_cast<std::size_t>(j)] == out.box + 1) {
            x[static_cast<std::size_t>(j)] = -1;
            --j;
        }
        if (j < 0) break;
        ++x[static_cast<std::size_t>(j)];
    }
    std::stable_sort(candidates.begin(), candidates.end(),
                     [](const Candidate& a, const Candidate& b) { return a.lower < b.lower; });

    const std::size_t max_subset = static_cast<std::size_t>(std::min<Eigen::Index>(n, p.span_dimension() + 1));
    std::optional<Rational> best;
    for (const auto& c : candidates) {
        if (best && c.lower > *best) break;
        const Rational d = norm == DistanceNorm::Euclidean ? squared_distance(p.vertices(), c.x, max_subset)
                                                           : l1_distance(p, c.x);
        if (!best || d < *best) {
            best = d;
            out.nearest = LatticeVector(n);
            for (Eigen::Index i = 0; i < n; ++i) out.nearest(i) = BigInt(numerator(c.x(i))).convert_to<long long>();
        }
    }
    out.exact = *best;
    out.distance = norm == DistanceNorm::Euclidean ? std::sqrt(to_double(*best)) : to_double(*best);
    out.bound_holds = out.distance >= out.bound;
    return out;
}

LatticeDistance lattice_distance(const RationalPolytope& p, DistanceNorm norm) {
    if (!p.full_dimensional())
        throw EmptyInterior("lattice_distance requires an integral polytope with nonempty interior (affine dimension " +
                            std::to_string(p.span_dimension()) + " < " + std::to_string(p.dim()) + ")");
    return lattice_distance_unchecked(p, norm);
}

std::vector<DistanceGrowthRow> distance_growth(const RationalPolytope& s, long long m_max, DistanceNorm norm,
                                               std::uint64_t budget) {
    if (!s.full_dimensional()) throw EmptyInterior("distance_growth requires a full-dimensional S");
    if (m_max < 1) throw PreconditionViolated("m_max must be at least 1");
    const Eigen::Index n = s.dim();
    double factorial = 1;
    for (Eigen::Index i = 2; i < n; ++i) factorial *= static_cast<double>(i);
    const double phi_ones = to_double(support(s, VectorQ(VectorQ::Ones(n))));

    std::vector<DistanceGrowthRow> rows;
    for (long long m = 1; m <= m_max; ++m) {
        const RationalPolytope integral = lattice_hull(s, m, budget);
        const LatticeDistance d = lattice_distance_unchecked(integral, norm);
        DistanceGrowthRow row;
        row.m = m;
        row.d_m = d.distance;
        row.root = std::pow(d.distance, 1.0 / static_cast<double>(m));
        row.root_bound = std::pow(1.0 / (std::sqrt(static_cast<double>(n)) * factorial * static_cast<double>(m) * phi_ones),
                                      1.0 / static_cast<double>(m));
        row.full_dimensional = integral.full_dimensional();
        row.holds = row.root >= row.root_bound;
        rows.push_back(row);
    }
    return rows;
}

ConeRep dual_cone(const RationalPolytope& s) {
    ConeRep cone;
    cone.dim = s.dim();
    std::set<Key> seen;
    for (const auto& v : s.vertices()) {
        if (v.isZero()) continue;
        VectorZ g = primitive_direction(v);
        if (seen.insert(key_of(to_rational(g))).second) cone.dual_halfspaces.push_back(g);
    }
    cone.generators = cone.dual_halfspaces;
    if (s.dim() > 3) return cone;

    MatrixQ rows(static_cast<Eigen::Index>(cone.dual_halfspaces.size()), s.dim());
    for (std::size_t i = 0; i < cone.dual_halfspaces.size(); ++i)
        rows.row(static_cast<Eigen::Index>(i)) = to_rational(cone.dual_halfspaces[i]).transpose();
    cone.dual_generators = double_description(rows, s.dim());

    // Gamma is the dual of Gamma°; its extreme rays prune redundant vertex directions.
    const auto dual_dirs = all_directions(*cone.dual_generators);
    MatrixQ back(static_cast<Eigen::Index>(dual_dirs.size()), s.dim());
    for (std::size_t i = 0; i < dual_dirs.size(); ++i) back.row(static_cast<Eigen::Index>(i)) = to_rational(dual_dirs[i]).transpose();
    cone.generators = double_description(back, s.dim()).rays;
    return cone;
}

bool in_dual_cone(const ConeRep& cone, const VectorQ& x) {
    for (const auto& h : cone.dual_halfspaces)
        if (dot(h, x) < 0) return false;
    return true;
}

RationalPolytope section(const RationalPolytope& s, const std::vector<Eigen::Index>& J) {
    if (J.empty()) throw PreconditionViolated("section: index set J must be nonempty");
    std::vector<bool> in_j(static_cast<std::size_t>(s.dim()), false);
    for (auto j : J) {
        if (j < 0 || j >= s.dim()) throw DimensionMismatch("section: index out of range");
        if (in_j[static_cast<std::size_t>(j)]) throw PreconditionViolated("section: repeated index in J");
        in_j[static_cast<std::size_t>(j)] = true;
    }
    const auto k = static_cast<Eigen::Index>(J.size());
    // S lies in R^n_+, so S ∩ R^J is the face where the off-J coordinates vanish.
    std::vector<VectorQ> points{VectorQ::Zero(k)};
    for (const auto& v : s.vertices()) {
        bool on_face = true;
        for (Eigen::Index j = 0; j < s.dim(); ++j)
            if (!in_j[static_cast<std::size_t>(j)] && v(j) != 0) on_face = false;
        if (!on_face) continue;
        VectorQ projected(k);
        for (Eigen::Index i = 0; i < k; ++i) projected(i) = v(J[static_cast<std::size_t>(i)]);
        points.push_back(projected);
    }
    return RationalPolytope(k, points);
}

std::optional<Rational> ray_scale(const RationalPolytope& s, const VectorQ& alpha) {
    if (alpha.size() != s.dim()) throw DimensionMismatch("ray_scale: vector has wrong dimension");
    if (alpha.isZero()) return std::nullopt;
    const auto k = static_cast<Eigen::Index>(s.vertices().size());
    const Eigen::Index n = s.dim();
    // maximize mu  s.t.  sum lambda_j v_j = mu alpha, sum lambda_j <= 1 (0 in S).
    LinearProgram<Rational> lp(k + 1);
    lp.set_objective(VectorQ::Unit(k + 1, k));
    for (Eigen::Index i = 0; i < n; ++i) {
        VectorQ row(k + 1);
        for (Eigen::Index j = 0; j < k; ++j) row(j) = s.vertices()[static_cast<std::size_t>(j)](i);
        row(k) = -alpha(i);
        lp.add_constraint(row, Relation::Equal, Rational(0));
    }
    VectorQ total = VectorQ::Ones(k + 1);
    total(k) = 0;
    lp.add_constraint(total, Relation::LessEqual, Rational(1));
    auto sol = solve(lp);
    if (sol.status != LpStatus::Optimal) throw NumericalFailure("ray_scale LP did not reach an optimum");
    return sol.value;
}

bool in_cone(const RationalPolytope& s, const VectorQ& alpha) {
    auto mu = ray_scale(s, alpha);
    return !mu || *mu > 0;
}

std::optional<long long> minimal_scaling(const RationalPolytope& s, const LatticeVector& alpha) {
    auto mu = ray_scale(s, to_rational(alpha));
    if (!mu) return 0;
    if (*mu == 0) return std::nullopt;
    const Rational inv = 1 / *mu;
    BigInt m = numerator(inv) / denominator(inv);
    if (Rational(m) < inv) m += 1;
    return std::max<long long>(1, m.convert_to<long long>());
}

}  // namespace cone_hull
