#include "cone_hull/lattice.hpp"

#include "cone_hull/errors.hpp"
#include "cone_hull/exact_linalg.hpp"

#include <algorithm>
#include <cmath>

namespace cone_hull {

namespace {

void check_torus_point(const VectorXcd& z, Eigen::Index n, const char* name) {
    if (z.size() != n) throw DimensionMismatch(std::string(name) + " has wrong dimension");
    for (Eigen::Index j = 0; j < n; ++j)
        if (z(j) == Complex(0, 0)) throw ZeroCoordinate(std::string(name) + " has a zero coordinate");
}

void fill_degree(Eigen::Index j, long long remaining, LatticeVector& cur, std::vector<LatticeVector>& out) {
    if (j == cur.size() - 1) {
        cur(j) = remaining;
        out.push_back(cur);
        return;
    }
    for (long long a = remaining; a >= 0; --a) {
        cur(j) = a;
        fill_degree(j + 1, remaining - a, cur, out);
    }
}

MatrixZ unimodular_inverse(const MatrixZ& a) {
    const Eigen::Index n = a.rows();
    MatrixQ aug(n, 2 * n);
    aug.leftCols(n) = to_rational(a);
    aug.rightCols(n) = MatrixQ::Identity(n, n);
    const MatrixQ r = rref(aug);
    MatrixZ out(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) {
            const Rational& v = r(i, n + j);
            if (denominator(v) != 1) throw NumericalFailure("matrix is not unimodular");
            out(i, j) = numerator(v);
        }
    return out;
}

BigInt ceil_div(const Rational& q) {
    BigInt f = numerator(q) / denominator(q);
    if (Rational(f) < q) f += 1;
    return f;
}

BigInt round_nearest(const Rational& q) {
    const Rational h = q + Rational(1, 2);
    BigInt f = numerator(h) / denominator(h);
    if (Rational(f) > h) f -= 1;
    return f;
}

// Gram-Schmidt of the columns of b: mu(i, j) for j < i and squared norms of b*_i.
void gram_schmidt(const MatrixZ& b, MatrixQ& mu, VectorQ& norms) {
    const Eigen::Index k = b.cols();
    const MatrixQ bq = to_rational(b);
    MatrixQ star = bq;
    mu = MatrixQ::Zero(k, k);
    norms = VectorQ::Zero(k);
    for (Eigen::Index i = 0; i < k; ++i) {
        for (Eigen::Index j = 0; j < i; ++j) {
            mu(i, j) = bq.col(i).dot(star.col(j)) / norms(j);
            star.col(i) -= mu(i, j) * star.col(j);
        }
        norms(i) = star.col(i).squaredNorm();
    }
}

// LLL with delta = 3/4 on linearly independent columns.
MatrixZ lll_reduce(MatrixZ b) {
    const Eigen::Index k = b.cols();
    MatrixQ mu;
    VectorQ norms;
    Eigen::Index i = 1;
    while (i < k) {
        gram_schmidt(b, mu, norms);
        for (Eigen::Index j = i - 1; j >= 0; --j) {
            const BigInt r = round_nearest(mu(i, j));
            if (r == 0) continue;
            b.col(i) -= r * b.col(j);
            gram_schmidt(b, mu, norms);
        }
        if (norms(i) >= (Rational(3, 4) - mu(i, i - 1) * mu(i, i - 1)) * norms(i - 1)) {
            ++i;
        } else {
            b.col(i).swap(b.col(i - 1));
            i = std::max<Eigen::Index>(i - 1, 1);
        }
    }
    return b;
}

void normalize_sign(MatrixZ& m) {
    for (Eigen::Index c = 0; c < m.cols(); ++c)
        for (Eigen::Index r = 0; r < m.rows(); ++r) {
            if (m(r, c) == 0) continue;
            if (m(r, c) < 0) m.col(c) *= BigInt(-1);
            break;
        }
}

}  // namespace

Complex monomial(const VectorXcd& z, const LatticeVector& alpha) {
    Complex out(1, 0);
    for (Eigen::Index j = 0; j < z.size(); ++j)
        if (alpha(j) != 0) out *= std::pow(z(j), static_cast<int>(alpha(j)));
    return out;
}

std::vector<LatticeVector> lattice_points_of_degree(Eigen::Index dim, long long degree) {
    std::vector<LatticeVector> out;
    if (dim <= 0 || degree < 0) return out;
    LatticeVector cur = LatticeVector::Zero(dim);
    fill_degree(0, degree, cur, out);
    return out;
}

std::vector<LatticeVector> independent_exponents(const RationalPolytope& s) {
    if (!s.full_dimensional()) throw EmptyInterior("independent_exponents: S is lower-dimensional");
    const Eigen::Index n = s.dim();
    std::vector<LatticeVector> chosen;
    MatrixQ basis(n, 0);
    for (long long degree = 1; static_cast<Eigen::Index>(chosen.size()) < n; ++degree) {
        for (const auto& alpha : lattice_points_of_degree(n, degree)) {
            const VectorQ a = to_rational(alpha);
            if (!in_cone(s, a)) continue;
            MatrixQ trial(n, basis.cols() + 1);
            trial << basis, a;
            if (rank(trial) <= basis.cols()) continue;
            basis = trial;
            chosen.push_back(alpha);
            if (static_cast<Eigen::Index>(chosen.size()) == n) break;
        }
    }
    return chosen;
}

SeparationCertificate separate_points(const RationalPolytope& s, const VectorXcd& z, const VectorXcd& w) {
    const Eigen::Index n = s.dim();
    check_torus_point(z, n, "z");
    check_torus_point(w, n, "w");
    if (z == w) throw IdenticalPoints("separate_points: z equals w");
    if (!s.full_dimensional()) throw EmptyInterior("separate_points: S is lower-dimensional");

    VectorXd delta(n);
    for (Eigen::Index j = 0; j < n; ++j) delta(j) = std::log(std::abs(z(j))) - std::log(std::abs(w(j)));

    auto certify = [&](const LatticeVector& alpha, WitnessKind kind) {
        return SeparationCertificate{alpha, kind, std::abs(monomial(z, alpha) - monomial(w, alpha))};
    };

    SeparationCertificate cert;
    if (delta.cwiseAbs().maxCoeff() > 1e-14) {
        const auto alphas = independent_exponents(s);
        double best = -1;
        for (const auto& alpha : alphas) {
            const double score = std::abs(alpha.cast<double>().dot(delta));
            if (score > best) {
                best = score;
                cert = certify(alpha, WitnessKind::ModulusDiffers);
            }
        }
    } else {
        // alpha with alpha + e_j in Gamma for all j
        LatticeVector base;
        for (long long degree = 0; base.size() == 0; ++degree) {
            for (const auto& alpha : lattice_points_of_degree(n, degree)) {
                bool ok = degree == 0 || in_cone(s, to_rational(alpha));
                for (Eigen::Index j = 0; ok && j < n; ++j) {
                    LatticeVector shifted = alpha;
                    shifted(j) += 1;
                    ok = in_cone(s, to_rational(shifted));
                }
                if (ok) {
                    base = alpha;
                    break;
                }
            }
        }
        Eigen::Index j_best = 0;
        double gap = -1;
        for (Eigen::Index j = 0; j < n; ++j) {
            const double g = std::abs(z(j) / std::abs(z(j)) - w(j) / std::abs(w(j)));
            if (g > gap) {
                gap = g;
                j_best = j;
            }
        }
        LatticeVector shifted = base;
        shifted(j_best) += 1;
        const auto a = certify(base, WitnessKind::ArgumentDiffers);
        const auto b = certify(shifted, WitnessKind::ArgumentDiffers);
        cert = (!base.isZero() && a.difference >= b.difference) ? a : b;
    }
    if (cert.difference > kSeparationThreshold) return cert;

    // Near-degenerate pairs: widen the search over Gamma ∩ N^n.
    for (long long degree = 1; degree <= 64; ++degree)
        for (const auto& alpha : lattice_points_of_degree(n, degree)) {
            if (!in_cone(s, to_rational(alpha))) continue;
            auto c = certify(alpha, cert.witness_kind);
            if (c.difference > kSeparationThreshold) return c;
        }
    throw NumericalFailure("separate_points: no monomial separates the points in double precision");
}

VectorXcd LatticeMap::apply(const VectorXcd& z) const {
    VectorXcd out(ell);
    for (Eigen::Index k = 0; k < ell; ++k) out(k) = monomial(z, to_lattice(VectorZ(matrix_L.col(k))));
    return out;
}

std::optional<LatticeVector> LatticeMap::coordinates(const LatticeVector& alpha) const {
    auto sol = solve_exact(to_rational(matrix_L), to_rational(alpha));
    if (!sol) return std::nullopt;
    LatticeVector out(ell);
    for (Eigen::Index k = 0; k < ell; ++k) {
        if (denominator((*sol)(k)) != 1) return std::nullopt;
        out(k) = numerator((*sol)(k)).convert_to<long long>();
    }
    return out;
}

LatticeMap fiber_structure(const RationalPolytope& s) {
    const Eigen::Index n = s.dim();
    LatticeMap map;
    map.ell = s.span_dimension();
    if (map.ell == n) {
        map.matrix_L = MatrixZ::Identity(n, n);
        map.kernel_gens = MatrixZ(n, 0);
        map.T_vertices = s.vertices();
        return map;
    }

    std::vector<VectorZ> cols;
    for (const auto& v : s.vertices())
        if (!v.isZero()) cols.push_back(primitive_direction(v));
    MatrixZ vm(n, static_cast<Eigen::Index>(cols.size()));
    for (std::size_t k = 0; k < cols.size(); ++k) vm.col(static_cast<Eigen::Index>(k)) = cols[k];

    const SmithForm snf = smith_normal_form(vm);
    const Eigen::Index ell = snf.rank;
    MatrixZ basis = lll_reduce(snf.left_inverse.leftCols(ell));
    map.kernel_gens = lll_reduce(snf.left.bottomRows(n - ell).transpose());
    normalize_sign(map.kernel_gens);

    std::vector<VectorQ> coords;
    const MatrixQ bq = to_rational(basis);
    for (const auto& v : s.vertices()) {
        auto c = solve_exact(bq, v);
        if (!c) throw NumericalFailure("fiber_structure: vertex outside the span lattice basis");
        coords.push_back(*c);
    }

    if (ell > 0) {
        // u = primitive(B^T 1) is positive on T \ {0}; extend it to a unimodular M.
        const VectorZ u = primitive_direction(to_rational(VectorZ(basis.transpose() * VectorZ::Ones(n))));
        MatrixZ urow = u.transpose();
        const SmithForm us = smith_normal_form(urow);
        MatrixZ m = unimodular_inverse(us.right);
        if (m.row(0).transpose() != u) m.row(0) *= BigInt(-1);
        for (Eigen::Index i = 1; i < ell; ++i) {
            BigInt shift = 0;
            for (const auto& c : coords) {
                const Rational uc = to_rational(VectorZ(u)).dot(c);
                if (uc == 0) continue;
                const Rational wc = to_rational(VectorZ(m.row(i).transpose())).dot(c);
                shift = std::max(shift, ceil_div(-wc / uc));
            }
            m.row(i) += shift * m.row(0);
        }
        basis = basis * unimodular_inverse(m);
        const MatrixQ mq = to_rational(m);
        for (auto& c : coords) c = mq * c;
    }
    map.matrix_L = basis;
    map.T_vertices = coords;
    return map;
}

VectorXcd fiber_through(const LatticeMap& map, const VectorXcd& z, const VectorXcd& t) {
    const Eigen::Index n = map.dim();
    const Eigen::Index k = map.kernel_gens.cols();
    if (k == 0) throw EmptyKernel("fiber_through: S has nonempty interior");
    check_torus_point(z, n, "z");
    check_torus_point(t, k, "t");
    VectorXcd out = z;
    for (Eigen::Index j = 0; j < n; ++j)
        out(j) *= monomial(t, to_lattice(VectorZ(map.kernel_gens.row(j).transpose())));
    return out;
}

VectorXcd fiber_through(const RationalPolytope& s, const VectorXcd& z, const VectorXcd& t) {
    return fiber_through(fiber_structure(s), z, t);
}

bool LogBox::contains(const VectorXd& x, double slack) const {
    if (x.size() != static_cast<Eigen::Index>(sides.size())) return false;
    for (std::size_t j = 0; j < sides.size(); ++j) {
        const double v = x(static_cast<Eigen::Index>(j));
        if (v < sides[j].first - slack || v > sides[j].second + slack) return false;
    }
    return true;
}

LogBox proper_box_pullback(const std::vector<LatticeVector>& alphas, double outer_radius, double inner_radius) {
    if (!(inner_radius > 0) || !(inner_radius < outer_radius))
        throw PreconditionViolated("proper_box_pullback: need 0 < r < R");
    const auto n = static_cast<Eigen::Index>(alphas.size());
    MatrixQ a(n, n);
    for (Eigen::Index k = 0; k < n; ++k) {
        if (alphas[static_cast<std::size_t>(k)].size() != n)
            throw DimensionMismatch("proper_box_pullback: need n exponent vectors in Z^n");
        a.row(k) = to_rational(alphas[static_cast<std::size_t>(k)]).transpose();
    }
    if (rank(a) < n) throw SingularMatrix("proper_box_pullback: exponent matrix is singular");
    MatrixQ aug(n, 2 * n);
    aug << a, MatrixQ::Identity(n, n);
    const MatrixXd inv = to_double(MatrixQ(rref(aug).rightCols(n)));

    const double lo = std::log(inner_radius);
    const double hi = std::log(outer_radius);
    LogBox box;
    for (Eigen::Index j = 0; j < n; ++j) {
        double c = 0, d = 0;
        for (Eigen::Index k = 0; k < n; ++k) {
            c += std::min(inv(j, k) * lo, inv(j, k) * hi);
            d += std::max(inv(j, k) * lo, inv(j, k) * hi);
        }
        box.sides.emplace_back(c, d);
    }
    return box;
}

}  // namespace cone_hull
