#ifndef OCGR_HEURISTICS_HPP
#define OCGR_HEURISTICS_HPP

#include "ocgr/branch_and_bound.hpp"
#include "ocgr/errors.hpp"
#include "ocgr/landmarks.hpp"
#include "ocgr/linear_model.hpp"
#include "ocgr/observations.hpp"
#include "ocgr/simplex.hpp"
#include "ocgr/task.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

namespace ocgr {

enum class SolveMode {
    LP,
    IP,
};

enum class HeuristicKind {
    Base,     // constraints C (goal landmarks) + observation counting
    Improved, // C + observation counting + observation landmark rows
};

struct HeuristicReport {
    double value = std::numeric_limits<double>::infinity();
    int rows = 0; // constraint count of the model at solve time
    double lp_time_ms = 0.0;
    SolveMode mode = SolveMode::LP;

    bool is_infinite() const { return std::isinf(value); }
};

/*
  Operator-counting core: one nonnegative column Y_o per operator with
  objective coefficient cost(o), one row  sum_{o in L} Y_o >= 1  per
  goal-derived landmark. A relaxed-unreachable goal marks the model
  infeasible up front.
*/
inline LinearModel build_base_model(const Task &task, const PartialState &goal,
                                    const State &s, const LandmarkSet &lms) {
    (void)goal;
    LinearModel model;
    model.num_operator_columns = task.num_operators();
    for (int i = 0; i < task.num_operators(); ++i) {
        Column col;
        col.name = "Y(" + task.operators[i].label + ")";
        col.objective = Rational(task.operators[i].cost);
        model.add_column(std::move(col));
    }
    if (lms.infeasible) {
        model.infeasible_marker = true;
        return model;
    }
    for (const Landmark &lm : lms.landmarks) {
        Row row;
        row.name = "LM";
        for (int op : lm.ops)
            row.coeffs.push_back({op, Rational(1)});
        row.lower = Rational(1);
        model.add_row(std::move(row));
    }
    (void)s;
    return model;
}

/*
  Observation-counting rows. For each operator occurring in omega a column
  Y^O_o is added, then
      Y^O_o <= occ_omega(o)
      Y^O_o <= Y_o
      sum_o Y^O_o >= |omega| - floor(|omega| * eps).
  An empty omega leaves the model unchanged except for the (vacuous) count
  row 0 >= 0.
*/
inline LinearModel add_observation_constraints(LinearModel model,
                                               const Task &task,
                                               const ObservationSequence &omega,
                                               const NoiseSpec &eps) {
    Row total;
    total.name = "OBS_TOTAL";
    for (const auto &[label, count] : omega.occurrences()) {
        auto op = task.operator_index(label);
        if (!op)
            raise(ErrorKind::UnknownLabel,
                  "observation '" + label + "' is not an operator");
        Column col;
        col.name = "YO(" + label + ")";
        int col_idx = model.add_column(std::move(col));
        model.obs_columns[*op] = col_idx;

        Row cap;
        cap.name = "OBS_CAP(" + label + ")";
        cap.coeffs.push_back({col_idx, Rational(1)});
        cap.upper = Rational(count);
        model.add_row(std::move(cap));

        Row link;
        link.name = "OBS_LINK(" + label + ")";
        link.coeffs.push_back({col_idx, Rational(1)});
        link.coeffs.push_back({*op, Rational(-1)});
        link.upper = Rational(0);
        model.add_row(std::move(link));

        total.coeffs.push_back({col_idx, Rational(1)});
    }
    long long required = (long long)omega.size() - max_ignorable(omega, eps);
    total.lower = Rational(required);
    model.add_row(std::move(total));
    return model;
}

/*
  Landmark rows for goal recognition (the practical linearization):
      sum_{o in L} Y_o - Y^O_label / occ_omega(label) >= 0
  one row per (landmark, observation label) pair. A label whose
  precondition is relaxed-unreachable gets the forcing row
      0 >= Y^O_label / occ, i.e. the observation cannot be satisfied.
*/
inline LinearModel add_observation_landmark_constraints(
    LinearModel model, const Task &task, const LandmarkSet &obs_lms,
    const ObservationSequence &omega) {
    auto obs_column = [&](const std::string &label) -> int {
        auto op = task.operator_index(label);
        if (!op)
            raise(ErrorKind::UnknownLabel,
                  "observation '" + label + "' is not an operator");
        auto it = model.obs_columns.find(*op);
        if (it == model.obs_columns.end())
            raise(ErrorKind::MissingObservationColumn,
                  "no observation column for '" + label + "'");
        return it->second;
    };
    for (const Landmark &lm : obs_lms.landmarks) {
        if (lm.origin != LandmarkOrigin::ObservationDerived)
            continue;
        int occ = omega.occurrences_of(lm.obs_label);
        if (occ == 0)
            raise(ErrorKind::MissingObservationColumn,
                  "landmark for '" + lm.obs_label + "' not in omega");
        Row row;
        row.name = "LMC(" + lm.obs_label + ")";
        for (int op : lm.ops)
            row.coeffs.push_back({op, Rational(1)});
        row.coeffs.push_back({obs_column(lm.obs_label), Rational(-1, occ)});
        row.lower = Rational(0);
        model.add_row(std::move(row));
    }
    for (const std::string &label : obs_lms.infeasible_obs_labels) {
        int occ = omega.occurrences_of(label);
        if (occ == 0)
            continue;
        Row row;
        row.name = "LMC_INF(" + label + ")";
        row.coeffs.push_back({obs_column(label), Rational(-1, occ)});
        row.lower = Rational(0);
        model.add_row(std::move(row));
    }
    return model;
}

/// Solve as LP relaxation or IP; Infeasible maps to heuristic infinity at
/// the call sites.
inline LpOutcome solve(const LinearModel &model, SolveMode mode) {
    if (mode == SolveMode::LP)
        return solve_lp(model);
    return solve_ip(model);
}

namespace detail {

inline HeuristicReport report_from(const LinearModel &model,
                                   const LpOutcome &outcome, SolveMode mode,
                                   double elapsed_ms) {
    HeuristicReport report;
    report.rows = (int)model.rows.size();
    report.mode = mode;
    report.lp_time_ms = elapsed_ms;
    if (outcome.status == LpStatus::Optimal)
        report.value = outcome.objective;
    return report;
}

class Stopwatch {
public:
    Stopwatch() : start_(std::chrono::steady_clock::now()) {}
    double elapsed_ms() const {
        auto d = std::chrono::steady_clock::now() - start_;
        return std::chrono::duration<double, std::milli>(d).count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

} // namespace detail

/// h with constraints C (goal landmarks only); the unrestricted estimate
/// used on the h side of the cost difference.
inline HeuristicReport h_goal_only(const Task &task, const PartialState &goal,
                                   const State &s,
                                   SolveMode mode = SolveMode::LP) {
    detail::Stopwatch timer;
    LandmarkSet lms = extract_landmarks(task, goal, s);
    LinearModel model = build_base_model(task, goal, s, lms);
    LpOutcome outcome = solve(model, mode);
    return detail::report_from(model, outcome, mode, timer.elapsed_ms());
}

/// Satisfying heuristic h_omega with constraints C and C_Omega.
inline HeuristicReport h_base(const Task &task, const PartialState &goal,
                              const State &s, const ObservationSequence &omega,
                              const NoiseSpec &eps,
                              SolveMode mode = SolveMode::LP) {
    detail::Stopwatch timer;
    LandmarkSet lms = extract_landmarks(task, goal, s);
    LinearModel model = build_base_model(task, goal, s, lms);
    model = add_observation_constraints(std::move(model), task, omega, eps);
    LpOutcome outcome = solve(model, mode);
    return detail::report_from(model, outcome, mode, timer.elapsed_ms());
}

/// h_omega with constraints C, C_Omega and LMC_Omega.
inline HeuristicReport h_improved(const Task &task, const PartialState &goal,
                                  const State &s,
                                  const ObservationSequence &omega,
                                  const NoiseSpec &eps,
                                  SolveMode mode = SolveMode::LP) {
    detail::Stopwatch timer;
    LandmarkSet lms = extract_landmarks(task, goal, s);
    LinearModel model = build_base_model(task, goal, s, lms);
    model = add_observation_constraints(std::move(model), task, omega, eps);
    LandmarkSet obs_lms = observation_landmarks(task, omega, s);
    model = add_observation_landmark_constraints(std::move(model), task,
                                                 obs_lms, omega);
    LpOutcome outcome = solve(model, mode);
    return detail::report_from(model, outcome, mode, timer.elapsed_ms());
}

inline HeuristicReport h_omega(const Task &task, const PartialState &goal,
                               const State &s, const ObservationSequence &omega,
                               const NoiseSpec &eps, HeuristicKind kind,
                               SolveMode mode = SolveMode::LP) {
    return kind == HeuristicKind::Base
               ? h_base(task, goal, s, omega, eps, mode)
               : h_improved(task, goal, s, omega, eps, mode);
}

} // namespace ocgr

#endif
