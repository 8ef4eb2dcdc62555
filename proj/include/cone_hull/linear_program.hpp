#ifndef CONE_HULL_LINEAR_PROGRAM_HPP
#define CONE_HULL_LINEAR_PROGRAM_HPP

#include "cone_hull/errors.hpp"
#include "cone_hull/scalar.hpp"

#include <cstddef>
#include <vector>

namespace cone_hull {

enum class Relation { LessEqual, GreaterEqual, Equal };
enum class LpStatus { Optimal, Infeasible, Unbounded };

/**
 * A linear program `maximize <c, x>` subject to row constraints
 * `<a_i, x> (<=|>=|=) b_i`, with each variable either nonnegative or free.
 *
 * The solver is a dense two-phase tableau simplex using Bland's rule, so it
 * terminates on degenerate problems. With `Scalar = Rational` every pivot is
 * exact and the reported optimum is a certificate; with `Scalar = double`
 * comparisons go through `ScalarTraits<double>::tolerance`.
 */
template <typename Scalar>
class LinearProgram {
public:
    explicit LinearProgram(Eigen::Index num_variables)
        : objective_(Vector<Scalar>::Zero(num_variables)),
          free_(static_cast<std::size_t>(num_variables), false) {}

    Eigen::Index num_variables() const { return objective_.size(); }
    std::size_t num_constraints() const { return rows_.size(); }

    void set_objective(const Vector<Scalar>& c) {
        if (c.size() != objective_.size()) throw DimensionMismatch("objective has wrong length");
        objective_ = c;
    }
    void set_free(Eigen::Index j, bool is_free = true) { free_.at(static_cast<std::size_t>(j)) = is_free; }

    void add_constraint(const Vector<Scalar>& row, Relation rel, const Scalar& rhs) {
        if (row.size() != objective_.size()) throw DimensionMismatch("constraint row has wrong length");
        rows_.push_back(row);
        relations_.push_back(rel);
        rhs_.push_back(rhs);
    }

    const Vector<Scalar>& objective() const { return objective_; }
    bool is_free(Eigen::Index j) const { return free_[static_cast<std::size_t>(j)]; }
    const Vector<Scalar>& row(std::size_t i) const { return rows_[i]; }
    Relation relation(std::size_t i) const { return relations_[i]; }
    const Scalar& rhs(std::size_t i) const { return rhs_[i]; }

private:
    Vector<Scalar> objective_;
    std::vector<bool> free_;
    std::vector<Vector<Scalar>> rows_;
    std::vector<Relation> relations_;
    std::vector<Scalar> rhs_;
};

template <typename Scalar>
struct LpSolution {
    LpStatus status = LpStatus::Infeasible;
    Vector<Scalar> x;   // primal point (valid when Optimal)
    Scalar value{};     // objective value (valid when Optimal)
};

namespace detail {

template <typename Scalar>
class Tableau {
public:
    using Traits = ScalarTraits<Scalar>;

    Tableau(Eigen::Index rows, Eigen::Index cols)
        : t_(Matrix<Scalar>::Zero(rows, cols + 1)),
          obj_(Vector<Scalar>::Zero(cols + 1)),
          basis_(static_cast<std::size_t>(rows), -1),
          allowed_(static_cast<std::size_t>(cols), true) {}

    Matrix<Scalar>& table() { return t_; }
    std::vector<Eigen::Index>& basis() { return basis_; }
    std::vector<bool>& allowed() { return allowed_; }
    Eigen::Index cols() const { return t_.cols() - 1; }
    Eigen::Index rows() const { return t_.rows(); }
    const Scalar& rhs(Eigen::Index i) const { return t_(i, cols()); }
    Scalar value() const { return obj_(cols()); }

    // Loads a maximization objective and prices it against the current basis.
    void load_objective(const Vector<Scalar>& cost) {
        obj_.setZero();
        for (Eigen::Index j = 0; j < cols(); ++j) obj_(j) = -cost(j);
        for (Eigen::Index i = 0; i < rows(); ++i) {
            const Scalar cb = cost(basis_[static_cast<std::size_t>(i)]);
            if (Traits::is_zero(cb)) continue;
            obj_ += cb * t_.row(i).transpose();
        }
    }

    // Returns false when the objective is unbounded above.
    bool optimize() {
        for (;;) {
            Eigen::Index entering = -1;
            for (Eigen::Index j = 0; j < cols(); ++j) {
                if (allowed_[static_cast<std::size_t>(j)] && Traits::is_negative(obj_(j))) {
                    entering = j;
                    break;
                }
            }
            if (entering < 0) return true;

            Eigen::Index leaving = -1;
            Scalar best_ratio{};
            for (Eigen::Index i = 0; i < rows(); ++i) {
                if (!Traits::is_positive(t_(i, entering))) continue;
                Scalar ratio = rhs(i) / t_(i, entering);
                if (leaving < 0 || ratio < best_ratio ||
                    (ratio == best_ratio && basis_[static_cast<std::size_t>(i)] <
                                                basis_[static_cast<std::size_t>(leaving)])) {
                    leaving = i;
                    best_ratio = ratio;
                }
            }
            if (leaving < 0) return false;
            pivot(leaving, entering);
        }
    }

    void pivot(Eigen::Index r, Eigen::Index c) {
        const Scalar p = t_(r, c);
        t_.row(r) /= p;
        t_(r, c) = Scalar(1);
        for (Eigen::Index i = 0; i < rows(); ++i) {
            if (i == r) continue;
            const Scalar f = t_(i, c);
            if (f == Scalar(0)) continue;
            t_.row(i) -= f * t_.row(r);
            t_(i, c) = Scalar(0);
        }
        const Scalar f = obj_(c);
        if (f != Scalar(0)) {
            obj_ -= f * t_.row(r).transpose();
            obj_(c) = Scalar(0);
        }
        basis_[static_cast<std::size_t>(r)] = c;
    }

private:
    Matrix<Scalar> t_;
    Vector<Scalar> obj_;
    std::vector<Eigen::Index> basis_;
    std::vector<bool> allowed_;
};

}  // namespace detail

template <typename Scalar>
LpSolution<Scalar> solve(const LinearProgram<Scalar>& lp) {
    using Traits = ScalarTraits<Scalar>;
    const Eigen::Index n = lp.num_variables();
    const auto m = static_cast<Eigen::Index>(lp.num_constraints());

    // Column layout: structural (free vars split into +/-), slacks, artificials.
    std::vector<Eigen::Index> pos_col(static_cast<std::size_t>(n)), neg_col(static_cast<std::size_t>(n), -1);
    Eigen::Index cols = 0;
    for (Eigen::Index j = 0; j < n; ++j) {
        pos_col[static_cast<std::size_t>(j)] = cols++;
        if (lp.is_free(j)) neg_col[static_cast<std::size_t>(j)] = cols++;
    }
    const Eigen::Index structural = cols;
    std::vector<Eigen::Index> slack_col(static_cast<std::size_t>(m), -1);
    for (Eigen::Index i = 0; i < m; ++i)
        if (lp.relation(static_cast<std::size_t>(i)) != Relation::Equal) slack_col[static_cast<std::size_t>(i)] = cols++;
    const Eigen::Index first_artificial = cols;
    cols += m;

    detail::Tableau<Scalar> tab(m, cols);
    auto& t = tab.table();
    for (Eigen::Index i = 0; i < m; ++i) {
        const auto iu = static_cast<std::size_t>(i);
        const Vector<Scalar>& a = lp.row(iu);
        for (Eigen::Index j = 0; j < n; ++j) {
            t(i, pos_col[static_cast<std::size_t>(j)]) = a(j);
            if (neg_col[static_cast<std::size_t>(j)] >= 0) t(i, neg_col[static_cast<std::size_t>(j)]) = -a(j);
        }
        if (slack_col[iu] >= 0) t(i, slack_col[iu]) = lp.relation(iu) == Relation::LessEqual ? Scalar(1) : Scalar(-1);
        t(i, cols) = lp.rhs(iu);
        if (t(i, cols) < Scalar(0)) t.row(i) *= Scalar(-1);
        t(i, first_artificial + i) = Scalar(1);
        tab.basis()[iu] = first_artificial + i;
        // A slack with coefficient +1 is a ready-made basic variable.
        if (slack_col[iu] >= 0 && t(i, slack_col[iu]) == Scalar(1)) tab.basis()[iu] = slack_col[iu];
    }

    Vector<Scalar> phase1 = Vector<Scalar>::Zero(cols);
    for (Eigen::Index i = 0; i < m; ++i) phase1(first_artificial + i) = Scalar(-1);
    tab.load_objective(phase1);
    tab.optimize();

    LpSolution<Scalar> out;
    if (Traits::is_negative(tab.value())) {
        out.status = LpStatus::Infeasible;
        return out;
    }

    // Drive zero-level artificials out of the basis where a structural pivot exists.
    for (Eigen::Index i = 0; i < m; ++i) {
        if (tab.basis()[static_cast<std::size_t>(i)] < first_artificial) continue;
        for (Eigen::Index j = 0; j < first_artificial; ++j) {
            if (!Traits::is_zero(t(i, j))) {
                tab.pivot(i, j);
                break;
            }
        }
    }
    for (Eigen::Index j = first_artificial; j < cols; ++j) tab.allowed()[static_cast<std::size_t>(j)] = false;

    Vector<Scalar> phase2 = Vector<Scalar>::Zero(cols);
    for (Eigen::Index j = 0; j < n; ++j) {
        phase2(pos_col[static_cast<std::size_t>(j)]) = lp.objective()(j);
        if (neg_col[static_cast<std::size_t>(j)] >= 0) phase2(neg_col[static_cast<std::size_t>(j)]) = -lp.objective()(j);
    }
    tab.load_objective(phase2);
    if (!tab.optimize()) {
        out.status = LpStatus::Unbounded;
        return out;
    }

    Vector<Scalar> column_values = Vector<Scalar>::Zero(structural);
    for (Eigen::Index i = 0; i < m; ++i) {
        const Eigen::Index b = tab.basis()[static_cast<std::size_t>(i)];
        if (b < structural) column_values(b) = tab.rhs(i);
    }
    out.x = Vector<Scalar>::Zero(n);
    for (Eigen::Index j = 0; j < n; ++j) {
        out.x(j) = column_values(pos_col[static_cast<std::size_t>(j)]);
        if (neg_col[static_cast<std::size_t>(j)] >= 0) out.x(j) -= column_values(neg_col[static_cast<std::size_t>(j)]);
    }
    out.value = lp.objective().dot(out.x);
    out.status = LpStatus::Optimal;
    return out;
}

}  // namespace cone_hull

#endif
