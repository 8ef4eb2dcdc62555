#include "cone_hull/extremal.hpp"

#include "cone_hull/errors.hpp"
#include "cone_hull/linear_program.hpp"

#include <algorithm>
#include <random>
#include <string>

namespace cone_hull {

namespace {

template <typename To, typename From>
To convert(const From& x) {
    if constexpr (std::is_same_v<To, From>) {
        return x;
    } else if constexpr (std::is_same_v<To, double>) {
        return to_double(x);
    } else {
        return exact_rational(x);
    }
}

template <typename To, typename From>
Vector<To> convert(const Vector<From>& v) {
    Vector<To> out(v.size());
    for (Eigen::Index i = 0; i < v.size(); ++i) out(i) = convert<To>(v(i));
    return out;
}

template <typename Scalar>
std::vector<Vector<Scalar>> vertices_as(const RationalPolytope& s) {
    std::vector<Vector<Scalar>> out;
    for (const auto& v : s.vertices()) out.push_back(convert<Scalar>(v));
    return out;
}

template <typename Scalar>
void check_point(const Vector<Scalar>& x, Eigen::Index n, const char* what) {
    if (x.size() != n) throw DimensionMismatch(std::string(what) + ": point has dimension " + std::to_string(x.size()) +
                                               ", expected " + std::to_string(n));
}

}  // namespace

template <typename Scalar>
ReinhardtBody<Scalar>::ReinhardtBody(Eigen::Index dim, std::vector<ReinhardtPiece<Scalar>> pieces)
    : dim_(dim), pieces_(std::move(pieces)) {
    if (dim < 1) throw DimensionMismatch("Reinhardt body needs dimension >= 1");
    if (pieces_.empty()) throw PreconditionViolated("Reinhardt body needs at least one piece");
    for (std::size_t p = 0; p < pieces_.size(); ++p) {
        const auto& piece = pieces_[p];
        const std::string where = "piece " + std::to_string(p);
        for (std::size_t i = 0; i < piece.J.size(); ++i) {
            if (piece.J[i] < 0 || piece.J[i] >= dim) throw DimensionMismatch(where + ": coordinate index out of range");
            if (i > 0 && piece.J[i] <= piece.J[i - 1])
                throw PreconditionViolated(where + ": J must be strictly increasing");
        }
        if (piece.A.empty()) throw PreconditionViolated(where + ": A is empty");
        for (const auto& a : piece.A)
            if (a.size() != static_cast<Eigen::Index>(piece.J.size()))
                throw DimensionMismatch(where + ": point of A does not match |J|");
    }
}

template <typename Scalar>
ReinhardtBody<Scalar> ReinhardtBody<Scalar>::torus(Eigen::Index dim) {
    return from_log_points(dim, {Vector<Scalar>::Zero(dim)});
}

template <typename Scalar>
ReinhardtBody<Scalar> ReinhardtBody<Scalar>::from_log_points(Eigen::Index dim, std::vector<Vector<Scalar>> A) {
    ReinhardtPiece<Scalar> piece;
    for (Eigen::Index j = 0; j < dim; ++j) piece.J.push_back(j);
    piece.A = std::move(A);
    return ReinhardtBody(dim, {piece});
}

template <typename Scalar>
bool ReinhardtBody<Scalar>::has_full_support_piece() const {
    return std::any_of(pieces_.begin(), pieces_.end(),
                       [&](const auto& p) { return static_cast<Eigen::Index>(p.J.size()) == dim_; });
}

template <typename Scalar>
bool ReinhardtBody<Scalar>::only_full_support_pieces() const {
    return std::all_of(pieces_.begin(), pieces_.end(),
                       [&](const auto& p) { return static_cast<Eigen::Index>(p.J.size()) == dim_; });
}

template <typename Scalar>
std::vector<Vector<Scalar>> ReinhardtBody<Scalar>::full_support_points() const {
    std::vector<Vector<Scalar>> out;
    for (const auto& p : pieces_)
        if (static_cast<Eigen::Index>(p.J.size()) == dim_) out.insert(out.end(), p.A.begin(), p.A.end());
    return out;
}

template <typename Scalar>
ReinhardtBody<Scalar> ReinhardtBody<Scalar>::project(const std::vector<Eigen::Index>& J) const {
    if (J.empty()) throw PreconditionViolated("projection needs a nonempty J");
    std::vector<ReinhardtPiece<Scalar>> out;
    for (const auto& piece : pieces_) {
        ReinhardtPiece<Scalar> q;
        std::vector<Eigen::Index> source;  // position inside piece.J, increasing in pos
        for (std::size_t pos = 0; pos < J.size(); ++pos) {
            auto it = std::find(piece.J.begin(), piece.J.end(), J[pos]);
            if (it == piece.J.end()) continue;
            q.J.push_back(static_cast<Eigen::Index>(pos));
            source.push_back(static_cast<Eigen::Index>(it - piece.J.begin()));
        }
        for (const auto& a : piece.A) {
            Vector<Scalar> b(static_cast<Eigen::Index>(source.size()));
            for (std::size_t i = 0; i < source.size(); ++i) b(static_cast<Eigen::Index>(i)) = a(source[i]);
            if (std::find(q.A.begin(), q.A.end(), b) == q.A.end()) q.A.push_back(b);
        }
        out.push_back(std::move(q));
    }
    return ReinhardtBody(static_cast<Eigen::Index>(J.size()), std::move(out));
}

template <typename Scalar>
template <typename Other>
ReinhardtBody<Other> ReinhardtBody<Scalar>::cast() const {
    std::vector<ReinhardtPiece<Other>> out;
    for (const auto& p : pieces_) {
        ReinhardtPiece<Other> q;
        q.J = p.J;
        for (const auto& a : p.A) q.A.push_back(convert<Other>(a));
        out.push_back(std::move(q));
    }
    return ReinhardtBody<Other>(dim_, std::move(out));
}

template <typename Scalar>
Scalar support_A(const ReinhardtBody<Scalar>& k, const Vector<Scalar>& s) {
    check_point(s, k.dim(), "support_A");
    const auto pts = k.full_support_points();
    if (pts.empty()) throw NoFullSupportPiece("K has no piece with J = [n]; use the axis recursion");
    Scalar best = pts.front().dot(s);
    for (const auto& a : pts) best = std::max<Scalar>(best, a.dot(s));
    return best;
}

bool meets_open_orthant(const RationalPolytope& s) {
    for (Eigen::Index j = 0; j < s.dim(); ++j) {
        bool positive = false;
        for (const auto& v : s.vertices()) positive = positive || v(j) > 0;
        if (!positive) return false;
    }
    return true;
}

template <typename Scalar>
void check_vsk_precondition(const RationalPolytope& s, const ReinhardtBody<Scalar>& k) {
    if (s.dim() != k.dim()) throw DimensionMismatch("S and K live in different dimensions");
    if (meets_open_orthant(s) || k.only_full_support_pieces()) return;
    throw PreconditionViolated(
        "S ∩ R^{*n}_+ = ∅ and K has an axis piece (some J ≠ {1..n}); need one of them to fail");
}

template <typename Scalar>
VskValue<Scalar> eval_vsk(const RationalPolytope& s, const ReinhardtBody<Scalar>& k, const Vector<Scalar>& x) {
    check_vsk_precondition(s, k);
    check_point(x, s.dim(), "eval_vsk");
    const auto a_pts = k.full_support_points();
    if (a_pts.empty()) throw NoFullSupportPiece("K has no piece with J = [n]; use the axis recursion");
    const auto verts = vertices_as<Scalar>(s);
    const auto nv = static_cast<Eigen::Index>(verts.size());

    // variables: lambda_1..lambda_k >= 0, u free
    LinearProgram<Scalar> lp(nv + 1);
    lp.set_free(nv);
    Vector<Scalar> c(nv + 1);
    for (Eigen::Index j = 0; j < nv; ++j) c(j) = verts[static_cast<std::size_t>(j)].dot(x);
    c(nv) = Scalar(-1);
    lp.set_objective(c);
    Vector<Scalar> sum = Vector<Scalar>::Ones(nv + 1);
    sum(nv) = Scalar(0);
    lp.add_constraint(sum, Relation::Equal, Scalar(1));
    for (const auto& a : a_pts) {
        Vector<Scalar> row(nv + 1);
        for (Eigen::Index j = 0; j < nv; ++j) row(j) = -a.dot(verts[static_cast<std::size_t>(j)]);
        row(nv) = Scalar(1);
        lp.add_constraint(row, Relation::GreaterEqual, Scalar(0));
    }
    const auto sol = solve(lp);
    if (sol.status != LpStatus::Optimal) throw NumericalFailure("eval_vsk: LP did not reach an optimum");

    VskValue<Scalar> out;
    out.maximizer_s = Vector<Scalar>::Zero(s.dim());
    for (Eigen::Index j = 0; j < nv; ++j) out.maximizer_s += sol.x(j) * verts[static_cast<std::size_t>(j)];
    out.active_a = a_pts.front();
    Scalar phi = a_pts.front().dot(out.maximizer_s);
    for (const auto& a : a_pts) {
        const Scalar v = a.dot(out.maximizer_s);
        if (v > phi) {
            phi = v;
            out.active_a = a;
        }
    }
    out.value = out.maximizer_s.dot(x) - phi;
    return out;
}

template <typename Scalar>
HullCertificate<Scalar> hull_membership(const RationalPolytope& s, const ReinhardtBody<Scalar>& k,
                                        const Vector<Scalar>& x) {
    check_vsk_precondition(s, k);
    check_point(x, s.dim(), "hull_membership");
    const auto a_pts = k.full_support_points();
    if (a_pts.empty()) throw NoFullSupportPiece("K has no piece with J = [n]; use the axis recursion");
    const auto verts = vertices_as<Scalar>(s);
    const auto na = static_cast<Eigen::Index>(a_pts.size());

    // x = sum lambda_i a_i - t with t in Gamma°: <v, sum lambda_i a_i> >= <v, x> for every vertex v
    LinearProgram<Scalar> lp(na);
    lp.add_constraint(Vector<Scalar>::Ones(na), Relation::Equal, Scalar(1));
    for (const auto& v : verts) {
        if (v.isZero()) continue;
        Vector<Scalar> row(na);
        for (Eigen::Index i = 0; i < na; ++i) row(i) = v.dot(a_pts[static_cast<std::size_t>(i)]);
        lp.add_constraint(row, Relation::GreaterEqual, v.dot(x));
    }
    const auto sol = solve(lp);

    HullCertificate<Scalar> out;
    if (sol.status == LpStatus::Optimal) {
        out.inside = true;
        out.weights = sol.x;
        out.a = Vector<Scalar>::Zero(s.dim());
        for (Eigen::Index i = 0; i < na; ++i) out.a += sol.x(i) * a_pts[static_cast<std::size_t>(i)];
        out.t = out.a - x;
        return out;
    }
    const auto v = eval_vsk(s, k, x);
    out.separator = v.maximizer_s;
    out.margin = v.value;
    return out;
}

template <typename Scalar>
Scalar siciak_monomial(const ExponentSet& exponents, const ReinhardtBody<Scalar>& k, const Vector<Scalar>& x) {
    if (exponents.m < 1) throw PreconditionViolated("siciak_monomial: m must be >= 1");
    check_point(x, k.dim(), "siciak_monomial");
    const auto a_pts = k.full_support_points();
    if (a_pts.empty()) throw NoFullSupportPiece("K has no piece with J = [n]; use the axis recursion");
    bool first = true;
    Scalar best{};
    for (const auto& alpha : exponents.points) {
        Vector<Scalar> al(alpha.size());
        for (Eigen::Index j = 0; j < alpha.size(); ++j) al(j) = Scalar(alpha(j));
        Scalar phi = a_pts.front().dot(al);
        for (const auto& a : a_pts) phi = std::max<Scalar>(phi, a.dot(al));
        const Scalar v = al.dot(x) - phi;
        if (first || v > best) best = v;
        first = false;
    }
    return best / Scalar(exponents.m);
}

template <typename Scalar>
Scalar siciak_monomial(const RationalPolytope& s, const ReinhardtBody<Scalar>& k, long long m, const Vector<Scalar>& x,
                       std::uint64_t budget) {
    if (m < 1) throw PreconditionViolated("siciak_monomial: m must be >= 1");
    if (s.dim() != k.dim()) throw DimensionMismatch("S and K live in different dimensions");
    return siciak_monomial(enumerate_exponents(s, m, budget), k, x);
}

template <typename Scalar>
Scalar vsk_on_axes(const RationalPolytope& s, const ReinhardtBody<Scalar>& k, const std::vector<Eigen::Index>& J,
                   const Vector<Scalar>& xJ) {
    if (J.empty()) throw PreconditionViolated("vsk_on_axes: J is empty");
    if (s.dim() != k.dim()) throw DimensionMismatch("S and K live in different dimensions");
    check_point(xJ, static_cast<Eigen::Index>(J.size()), "vsk_on_axes");
    const RationalPolytope sj = section(s, J);
    if (sj.vertices().size() == 1) return Scalar(0);  // S_J = {0}
    return eval_vsk(sj, k.project(J), xJ).value;
}

std::vector<VectorXd> dual_directions(const RationalPolytope& s, std::uint64_t seed) {
    std::vector<VectorXd> out;
    const Eigen::Index n = s.dim();
    const ConeRep cone = dual_cone(s);
    if (cone.dual_generators) {
        for (const auto& d : all_directions(*cone.dual_generators)) {
            VectorXd v = to_double(to_rational(d));
            out.push_back(v / v.norm());
        }
        return out;
    }
    for (Eigen::Index j = 0; j < n; ++j) out.push_back(VectorXd::Unit(n, j));
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal;
    for (int tries = 0; tries < 2000 && static_cast<Eigen::Index>(out.size()) < 5 * n; ++tries) {
        VectorXd d(n);
        for (Eigen::Index j = 0; j < n; ++j) d(j) = normal(rng);
        if (in_dual_cone(cone, exact_rational(d))) out.push_back(d / d.norm());
    }
    return out;
}

std::vector<VectorXd> hull_sampler(const RationalPolytope& s, const ReinhardtBody<double>& k, double depth,
                                   std::size_t count, std::uint64_t seed) {
    std::vector<VectorXd> out;
    if (count == 0) return out;
    check_vsk_precondition(s, k);
    const auto a_pts = k.full_support_points();
    if (a_pts.empty()) throw NoFullSupportPiece("K has no piece with J = [n]; use the axis recursion");
    const auto dirs = depth > 0 ? dual_directions(s, seed) : std::vector<VectorXd>{};

    auto accept = [&](const VectorXd& p) {
        if (out.size() < count && hull_membership(s, k, p).inside) out.push_back(p);
    };
    for (const auto& a : a_pts) accept(a);
    for (const auto& a : a_pts)
        for (const auto& d : dirs) accept(a - depth * d);

    std::mt19937_64 rng(seed);
    std::exponential_distribution<double> expo(1.0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const std::size_t max_attempts = 20 * count + 100;
    for (std::size_t attempt = 0; out.size() < count && attempt < max_attempts; ++attempt) {
        VectorXd a = VectorXd::Zero(k.dim());
        double total = 0;
        std::vector<double> w(a_pts.size());
        for (auto& wi : w) total += (wi = expo(rng));
        for (std::size_t i = 0; i < a_pts.size(); ++i) a += (w[i] / total) * a_pts[i];
        VectorXd t = VectorXd::Zero(k.dim());
        for (const auto& d : dirs) t += expo(rng) * d;
        if (t.norm() > 0) t *= depth * unit(rng) / t.norm();
        accept(a - t);
    }
    return out;
}

#define CONE_HULL_INSTANTIATE(S)                                                                                     \
    template class ReinhardtBody<S>;                                                                                 \
    template ReinhardtBody<double> ReinhardtBody<S>::cast<double>() const;                                           \
    template ReinhardtBody<Rational> ReinhardtBody<S>::cast<Rational>() const;                                       \
    template S support_A(const ReinhardtBody<S>&, const Vector<S>&);                                                 \
    template void check_vsk_precondition(const RationalPolytope&, const ReinhardtBody<S>&);                          \
    template VskValue<S> eval_vsk(const RationalPolytope&, const ReinhardtBody<S>&, const Vector<S>&);               \
    template HullCertificate<S> hull_membership(const RationalPolytope&, const ReinhardtBody<S>&, const Vector<S>&); \
    template S siciak_monomial(const ExponentSet&, const ReinhardtBody<S>&, const Vector<S>&);                       \
    template S siciak_monomial(const RationalPolytope&, const ReinhardtBody<S>&, long long, const Vector<S>&,        \
                               std::uint64_t);                                                                       \
    template S vsk_on_axes(const RationalPolytope&, const ReinhardtBody<S>&, const std::vector<Eigen::Index>&,      \
                           const Vector<S>&);

CONE_HULL_INSTANTIATE(Rational)
CONE_HULL_INSTANTIATE(double)

#undef CONE_HULL_INSTANTIATE

}  // namespace cone_hull
