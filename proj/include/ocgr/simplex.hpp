#ifndef OCGR_SIMPLEX_HPP
#define OCGR_SIMPLEX_HPP

#include "ocgr/errors.hpp"
#include "ocgr/linear_model.hpp"
#include "ocgr/rational.hpp"

#include <cmath>
#include <cstddef>
#include <optional>
#include <vector>

namespace ocgr {

enum class LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
};

struct LpOutcome {
    LpStatus status = LpStatus::Infeasible;
    double objective = 0.0;
    std::vector<double> column_values; // structural columns only
    std::optional<Rational> exact_objective;
};

template <typename Scalar>
struct ScalarTraits;

template <>
struct ScalarTraits<double> {
    static constexpr bool exact = false;
    static double from_rational(const Rational &r) { return r.to_double(); }
    static double pivot_tol() { return 1e-9; }
    static double feas_tol() { return 1e-6; }
    static double to_double(double v) { return v; }
    static bool is_zero(double v) { return std::abs(v) <= 1e-9; }
    static bool is_negative(double v) { return v < -1e-9; }
    static bool is_positive(double v) { return v > 1e-9; }
};

template <>
struct ScalarTraits<Rational> {
    static constexpr bool exact = true;
    static Rational from_rational(const Rational &r) { return r; }
    static Rational pivot_tol() { return Rational(0); }
    static Rational feas_tol() { return Rational(0); }
    static double to_double(const Rational &v) { return v.to_double(); }
    static bool is_zero(const Rational &v) { return v.is_zero(); }
    static bool is_negative(const Rational &v) { return v < Rational(0); }
    static bool is_positive(const Rational &v) { return Rational(0) < v; }
};

struct SimplexOptions {
    long iteration_limit = 200000;
    // Dantzig's rule until this many pivots, then Bland's rule to rule out
    // cycling. The exact solver runs Bland's rule from the start.
    long bland_after = 5000;
};

/*
  Two-phase dense primal simplex over nonnegative variables.

  Column bounds (lower > 0 or finite upper, used by branch and bound) are
  translated into explicit rows up front; the tableau itself only handles
  x >= 0. Phase 1 minimizes the artificial sum; leftover basic
  artificials are pivoted out or their (redundant) rows dropped. Phase 2
  runs the real objective with artificial columns barred from entering.
*/
template <typename Scalar>
class SimplexSolver {
    using Traits = ScalarTraits<Scalar>;

public:
    explicit SimplexSolver(const LinearModel &model,
                           SimplexOptions options = {})
        : model_(model), options_(options) {}

    LpOutcome solve() {
        if (model_.infeasible_marker)
            return {LpStatus::Infeasible, 0.0, {}, std::nullopt};
        build_tableau();

        if (!phase1())
            return {LpStatus::Infeasible, 0.0, {}, std::nullopt};
        drop_basic_artificials();
        LpStatus status = phase2();
        LpOutcome out;
        out.status = status;
        if (status != LpStatus::Optimal)
            return out;

        std::vector<Scalar> values(num_structural_, Scalar(0));
        for (std::size_t i = 0; i < basis_.size(); ++i)
            if (basis_[i] < num_structural_)
                values[basis_[i]] = rhs_[i];
        Scalar objective(0);
        for (int j = 0; j < num_structural_; ++j)
            objective += cost_[j] * values[j];
        out.objective = Traits::to_double(objective);
        out.column_values.resize(num_structural_);
        for (int j = 0; j < num_structural_; ++j)
            out.column_values[j] = Traits::to_double(values[j]);
        if constexpr (Traits::exact)
            out.exact_objective = objective;
        return out;
    }

private:
    enum class RowType { LE, GE, EQ };

    struct StdRow {
        std::vector<std::pair<int, Scalar>> coeffs;
        Scalar rhs;
        RowType type;
    };

    void build_tableau() {
        num_structural_ = (int)model_.columns.size();
        std::vector<StdRow> std_rows;
        for (int j = 0; j < num_structural_; ++j) {
            const Column &col = model_.columns[j];
            if (Traits::is_positive(Traits::from_rational(col.lower)))
                std_rows.push_back({{{j, Scalar(1)}},
                                    Traits::from_rational(col.lower),
                                    RowType::GE});
            if (col.upper)
                std_rows.push_back({{{j, Scalar(1)}},
                                    Traits::from_rational(*col.upper),
                                    RowType::LE});
        }
        for (const Row &row : model_.rows) {
            std::vector<std::pair<int, Scalar>> coeffs;
            for (const auto &[col, coeff] : row.coeffs)
                coeffs.push_back({col, Traits::from_rational(coeff)});
            if (row.lower && row.upper && *row.lower == *row.upper) {
                std_rows.push_back({coeffs, Traits::from_rational(*row.lower),
                                    RowType::EQ});
                continue;
            }
            if (row.lower)
                std_rows.push_back({coeffs, Traits::from_rational(*row.lower),
                                    RowType::GE});
            if (row.upper)
                std_rows.push_back({coeffs, Traits::from_rational(*row.upper),
                                    RowType::LE});
        }
        // Normalize to nonnegative right-hand sides.
        for (StdRow &row : std_rows) {
            if (Traits::is_negative(row.rhs)) {
                for (auto &[col, coeff] : row.coeffs)
                    coeff = -coeff;
                row.rhs = -row.rhs;
                if (row.type == RowType::LE)
                    row.type = RowType::GE;
                else if (row.type == RowType::GE)
                    row.type = RowType::LE;
            }
        }

        int m = (int)std_rows.size();
        int slacks = 0, artificials = 0;
        for (const StdRow &row : std_rows) {
            if (row.type != RowType::EQ)
                ++slacks;
            if (row.type != RowType::LE)
                ++artificials;
        }
        num_total_ = num_structural_ + slacks + artificials;
        first_artificial_ = num_structural_ + slacks;

        tableau_.assign(m, std::vector<Scalar>(num_total_, Scalar(0)));
        rhs_.assign(m, Scalar(0));
        basis_.assign(m, -1);

        int next_slack = num_structural_;
        int next_art = first_artificial_;
        for (int i = 0; i < m; ++i) {
            const StdRow &row = std_rows[i];
            for (const auto &[col, coeff] : row.coeffs)
                tableau_[i][col] += coeff;
            rhs_[i] = row.rhs;
            if (row.type == RowType::LE) {
                tableau_[i][next_slack] = Scalar(1);
                basis_[i] = next_slack++;
            } else if (row.type == RowType::GE) {
                tableau_[i][next_slack] = Scalar(-1);
                ++next_slack;
                tableau_[i][next_art] = Scalar(1);
                basis_[i] = next_art++;
            } else {
                tableau_[i][next_art] = Scalar(1);
                basis_[i] = next_art++;
            }
        }

        cost_.assign(num_total_, Scalar(0));
        for (int j = 0; j < num_structural_; ++j)
            cost_[j] = Traits::from_rational(model_.columns[j].objective);
    }

    bool phase1() {
        if (first_artificial_ == num_total_)
            return true; // no artificials, initial slack basis is feasible
        // Reduced costs of "minimize sum of artificials".
        obj_row_.assign(num_total_, Scalar(0));
        obj_rhs_ = Scalar(0);
        for (int j = first_artificial_; j < num_total_; ++j)
            obj_row_[j] = Scalar(1);
        for (std::size_t i = 0; i < basis_.size(); ++i) {
            if (basis_[i] >= first_artificial_) {
                for (int j = 0; j < num_total_; ++j)
                    obj_row_[j] -= tableau_[i][j];
                obj_rhs_ -= rhs_[i];
            }
        }
        LpStatus status = iterate(/*allow_artificial=*/true);
        if (status == LpStatus::Unbounded)
            raise(ErrorKind::NumericalFailure, "phase 1 reported unbounded");
        // Artificial sum left at -obj_rhs_; feasible iff it vanished.
        Scalar infeas = -obj_rhs_;
        return !(Traits::feas_tol() < infeas);
    }

    void drop_basic_artificials() {
        for (std::size_t i = 0; i < basis_.size();) {
            if (basis_[i] < first_artificial_) {
                ++i;
                continue;
            }
            int pivot_col = -1;
            for (int j = 0; j < first_artificial_; ++j) {
                if (!Traits::is_zero(tableau_[i][j])) {
                    pivot_col = j;
                    break;
                }
            }
            if (pivot_col >= 0) {
                pivot((int)i, pivot_col);
                ++i;
            } else {
                // Linearly dependent row; remove it.
                tableau_.erase(tableau_.begin() + i);
                rhs_.erase(rhs_.begin() + i);
                basis_.erase(basis_.begin() + i);
            }
        }
    }

    LpStatus phase2() {
        obj_row_ = cost_;
        obj_rhs_ = Scalar(0);
        for (std::size_t i = 0; i < basis_.size(); ++i) {
            int b = basis_[i];
            if (!Traits::is_zero(cost_[b])) {
                Scalar factor = cost_[b];
                for (int j = 0; j < num_total_; ++j)
                    obj_row_[j] -= factor * tableau_[i][j];
                obj_rhs_ -= factor * rhs_[i];
            }
        }
        return iterate(/*allow_artificial=*/false);
    }

    LpStatus iterate(bool allow_artificial) {
        long iterations = 0;
        for (;;) {
            if (++iterations > options_.iteration_limit)
                raise(ErrorKind::IterationLimit, "simplex iteration limit");
            bool bland = Traits::exact || iterations > options_.bland_after;
            int limit = allow_artificial ? num_total_ : first_artificial_;

            int entering = -1;
            for (int j = 0; j < limit; ++j) {
                if (!Traits::is_negative(obj_row_[j]))
                    continue;
                if (bland) {
                    entering = j;
                    break;
                }
                if (entering < 0 || obj_row_[j] < obj_row_[entering])
                    entering = j;
            }
            if (entering < 0)
                return LpStatus::Optimal;

            int leaving = -1;
            Scalar best_ratio(0);
            for (std::size_t i = 0; i < tableau_.size(); ++i) {
                const Scalar &a = tableau_[i][entering];
                if (!Traits::is_positive(a))
                    continue;
                Scalar ratio = rhs_[i] / a;
                if (leaving < 0 || ratio < best_ratio ||
                    (!(best_ratio < ratio) && basis_[i] < basis_[leaving])) {
                    leaving = (int)i;
                    best_ratio = ratio;
                }
            }
            if (leaving < 0)
                return LpStatus::Unbounded;
            pivot(leaving, entering);
        }
    }

    void pivot(int row, int col) {
        Scalar p = tableau_[row][col];
        for (int j = 0; j < num_total_; ++j)
            tableau_[row][j] /= p;
        rhs_[row] /= p;
        tableau_[row][col] = Scalar(1);
        for (std::size_t i = 0; i < tableau_.size(); ++i) {
            if ((int)i == row)
                continue;
            Scalar factor = tableau_[i][col];
            if (Traits::is_zero(factor))
                continue;
            for (int j = 0; j < num_total_; ++j)
                tableau_[i][j] -= factor * tableau_[row][j];
            tableau_[i][col] = Scalar(0);
            rhs_[i] -= factor * rhs_[row];
            if constexpr (!Traits::exact) {
                if (rhs_[i] < 0 && rhs_[i] > -1e-11)
                    rhs_[i] = 0; // scrub pivot dust off the basis values
            }
        }
        Scalar factor = obj_row_[col];
        if (!Traits::is_zero(factor)) {
            for (int j = 0; j < num_total_; ++j)
                obj_row_[j] -= factor * tableau_[row][j];
            obj_row_[col] = Scalar(0);
            obj_rhs_ -= factor * rhs_[row];
        }
        basis_[row] = col;
    }

    const LinearModel &model_;
    SimplexOptions options_;

    int num_structural_ = 0;
    int num_total_ = 0;
    int first_artificial_ = 0;
    std::vector<std::vector<Scalar>> tableau_;
    std::vector<Scalar> rhs_;
    std::vector<int> basis_;
    std::vector<Scalar> obj_row_;
    Scalar obj_rhs_ = Scalar(0);
    std::vector<Scalar> cost_;
};

inline LpOutcome solve_lp(const LinearModel &model, SimplexOptions options = {}) {
    SimplexSolver<double> solver(model, options);
    return solver.solve();
}

inline LpOutcome solve_lp_exact(const LinearModel &model,
                                SimplexOptions options = {}) {
    SimplexSolver<Rational> solver(model, options);
    return solver.solve();
}

} // namespace ocgr

#endif
