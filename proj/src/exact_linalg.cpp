#include "cone_hull/exact_linalg.hpp"

#include "cone_hull/errors.hpp"

#include <utility>

namespace cone_hull {

MatrixQ rref(const MatrixQ& a, std::vector<Eigen::Index>* pivots) {
    MatrixQ r = a;
    if (pivots) pivots->clear();
    Eigen::Index row = 0;
    for (Eigen::Index col = 0; col < r.cols() && row < r.rows(); ++col) {
        Eigen::Index p = -1;
        for (Eigen::Index i = row; i < r.rows(); ++i) {
            if (r(i, col) != 0) {
                p = i;
                break;
            }
        }
        if (p < 0) continue;
        r.row(p).swap(r.row(row));
        const Rational lead = r(row, col);
        r.row(row) /= lead;
        for (Eigen::Index i = 0; i < r.rows(); ++i) {
            if (i == row || r(i, col) == 0) continue;
            const Rational f = r(i, col);
            r.row(i) -= f * r.row(row);
        }
        if (pivots) pivots->push_back(col);
        ++row;
    }
    return r;
}

Eigen::Index rank(const MatrixQ& a) {
    std::vector<Eigen::Index> pivots;
    rref(a, &pivots);
    return static_cast<Eigen::Index>(pivots.size());
}

MatrixQ nullspace(const MatrixQ& a) {
    std::vector<Eigen::Index> pivots;
    MatrixQ r = rref(a, &pivots);
    const Eigen::Index n = a.cols();
    std::vector<bool> is_pivot(static_cast<std::size_t>(n), false);
    for (auto p : pivots) is_pivot[static_cast<std::size_t>(p)] = true;
    MatrixQ basis = MatrixQ::Zero(n, n - static_cast<Eigen::Index>(pivots.size()));
    Eigen::Index k = 0;
    for (Eigen::Index f = 0; f < n; ++f) {
        if (is_pivot[static_cast<std::size_t>(f)]) continue;
        basis(f, k) = 1;
        for (std::size_t i = 0; i < pivots.size(); ++i) basis(pivots[i], k) = -r(static_cast<Eigen::Index>(i), f);
        ++k;
    }
    return basis;
}

std::optional<VectorQ> solve_exact(const MatrixQ& a, const VectorQ& b) {
    MatrixQ aug(a.rows(), a.cols() + 1);
    aug << a, b;
    std::vector<Eigen::Index> pivots;
    MatrixQ r = rref(aug, &pivots);
    if (!pivots.empty() && pivots.back() == a.cols()) return std::nullopt;
    VectorQ x = VectorQ::Zero(a.cols());
    for (std::size_t i = 0; i < pivots.size(); ++i) x(pivots[i]) = r(static_cast<Eigen::Index>(i), a.cols());
    return x;
}

BigInt determinant(const MatrixZ& a) {
    if (a.rows() != a.cols()) throw DimensionMismatch("determinant of non-square matrix");
    const Eigen::Index n = a.rows();
    if (n == 0) return BigInt(1);
    MatrixZ m = a;
    BigInt sign = 1;
    BigInt prev = 1;
    for (Eigen::Index k = 0; k + 1 < n; ++k) {
        if (m(k, k) == 0) {
            Eigen::Index swap_row = -1;
            for (Eigen::Index i = k + 1; i < n; ++i) {
                if (m(i, k) != 0) {
                    swap_row = i;
                    break;
                }
            }
            if (swap_row < 0) return BigInt(0);
            m.row(k).swap(m.row(swap_row));
            sign = -sign;
        }
        for (Eigen::Index i = k + 1; i < n; ++i)
            for (Eigen::Index j = k + 1; j < n; ++j) m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
        prev = m(k, k);
    }
    return sign * m(n - 1, n - 1);
}

BigInt maximal_minor_gcd(const MatrixZ& a) {
    const Eigen::Index n = a.rows();
    const Eigen::Index k = a.cols();
    if (k > n) throw DimensionMismatch("maximal minors need rows >= cols");
    if (k == 0) return BigInt(1);
    BigInt g = 0;
    std::vector<Eigen::Index> pick(static_cast<std::size_t>(k));
    for (Eigen::Index i = 0; i < k; ++i) pick[static_cast<std::size_t>(i)] = i;
    for (;;) {
        MatrixZ sub(k, k);
        for (Eigen::Index i = 0; i < k; ++i) sub.row(i) = a.row(pick[static_cast<std::size_t>(i)]);
        g = boost::multiprecision::gcd(g, BigInt(abs(determinant(sub))));
        Eigen::Index pos = k - 1;
        while (pos >= 0 && pick[static_cast<std::size_t>(pos)] == n - k + pos) --pos;
        if (pos < 0) break;
        ++pick[static_cast<std::size_t>(pos)];
        for (Eigen::Index i = pos + 1; i < k; ++i)
            pick[static_cast<std::size_t>(i)] = pick[static_cast<std::size_t>(i - 1)] + 1;
    }
    return g;
}

namespace {

// Row operations on `d` are mirrored into `left` (applied) and `left_inverse`
// (inverse applied on the right); column operations into `right`.
struct SmithWork {
    MatrixZ d, left, left_inverse, right;

    void swap_rows(Eigen::Index i, Eigen::Index j) {
        if (i == j) return;
        d.row(i).swap(d.row(j));
        left.row(i).swap(left.row(j));
        left_inverse.col(i).swap(left_inverse.col(j));
    }
    void swap_cols(Eigen::Index i, Eigen::Index j) {
        if (i == j) return;
        d.col(i).swap(d.col(j));
        right.col(i).swap(right.col(j));
    }
    // row_i -= q * row_j
    void add_row(Eigen::Index i, Eigen::Index j, const BigInt& q) {
        d.row(i) -= q * d.row(j);
        left.row(i) -= q * left.row(j);
        left_inverse.col(j) += q * left_inverse.col(i);
    }
    // col_i -= q * col_j
    void add_col(Eigen::Index i, Eigen::Index j, const BigInt& q) {
        d.col(i) -= q * d.col(j);
        right.col(i) -= q * right.col(j);
    }
    void negate_row(Eigen::Index i) {
        d.row(i) *= BigInt(-1);
        left.row(i) *= BigInt(-1);
        left_inverse.col(i) *= BigInt(-1);
    }
};

BigInt floor_div(const BigInt& a, const BigInt& b) {
    BigInt q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) q -= 1;
    return q;
}

}  // namespace

SmithForm smith_normal_form(const MatrixZ& a) {
    const Eigen::Index rows = a.rows();
    const Eigen::Index cols = a.cols();
    SmithWork w{a, MatrixZ::Identity(rows, rows), MatrixZ::Identity(rows, rows), MatrixZ::Identity(cols, cols)};

    Eigen::Index t = 0;
    for (; t < std::min(rows, cols); ++t) {
        for (;;) {
            // Smallest nonzero entry of the trailing block becomes the pivot.
            Eigen::Index pr = -1, pc = -1;
            for (Eigen::Index i = t; i < rows; ++i)
                for (Eigen::Index j = t; j < cols; ++j)
                    if (w.d(i, j) != 0 && (pr < 0 || abs(w.d(i, j)) < abs(w.d(pr, pc)))) {
                        pr = i;
                        pc = j;
                    }
            if (pr < 0) goto done;
            w.swap_rows(t, pr);
            w.swap_cols(t, pc);

            bool clean = true;
            for (Eigen::Index i = t + 1; i < rows; ++i) {
                if (w.d(i, t) == 0) continue;
                w.add_row(i, t, floor_div(w.d(i, t), w.d(t, t)));
                if (w.d(i, t) != 0) clean = false;
            }
            for (Eigen::Index j = t + 1; j < cols; ++j) {
                if (w.d(t, j) == 0) continue;
                w.add_col(j, t, floor_div(w.d(t, j), w.d(t, t)));
                if (w.d(t, j) != 0) clean = false;
            }
            if (!clean) continue;

            // Divisibility: fold an offending row into row t and retry.
            Eigen::Index bad = -1;
            for (Eigen::Index i = t + 1; i < rows && bad < 0; ++i)
                for (Eigen::Index j = t + 1; j < cols; ++j)
                    if (w.d(i, j) % w.d(t, t) != 0) {
                        bad = i;
                        break;
                    }
            if (bad < 0) break;
            w.add_row(t, bad, BigInt(-1));
        }
        if (w.d(t, t) < 0) w.negate_row(t);
    }
done:
    SmithForm out;
    out.rank = t;
    out.diagonal = std::move(w.d);
    out.left = std::move(w.left);
    out.left_inverse = std::move(w.left_inverse);
    out.right = std::move(w.right);
    return out;
}

MatrixQ to_rational(const MatrixZ& a) {
    MatrixQ out(a.rows(), a.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j) out(i, j) = Rational(a(i, j));
    return out;
}

}  // namespace cone_hull
