#ifndef OCGR_RECOGNITION_HPP
#define OCGR_RECOGNITION_HPP

#include "ocgr/errors.hpp"
#include "ocgr/heuristics.hpp"
#include "ocgr/observations.hpp"
#include "ocgr/task.hpp"

#include <cmath>
#include <limits>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace ocgr {

struct GoalReport {
    double h_omega = std::numeric_limits<double>::infinity();
    double h = std::numeric_limits<double>::infinity();
    double delta = std::numeric_limits<double>::infinity();
    int rows = 0;
    double lp_time_ms = 0.0;
};

struct RecognitionResult {
    std::vector<GoalReport> per_goal; // indexed like the hypothesis list
    double delta_min = std::numeric_limits<double>::infinity();
    std::vector<int> solution; // hypothesis indices with delta == delta_min
    double total_time_ms = 0.0;
};

/*
  Cost-difference recognition: for every hypothesis g compute the
  observation-complying estimate h_omega (base or improved) and the
  unrestricted estimate h from the same landmark LP without observation
  constraints, then keep the hypotheses attaining
      delta_min = min over finite h_omega of (h_omega - h).
  Hypotheses with h_omega = infinity never enter delta_min or the
  solution. Delta comparison uses the float tolerance in LP mode and exact
  integer comparison in IP mode.
*/
inline RecognitionResult recognize(const Task &taskP,
                                   const std::vector<PartialState> &hyps,
                                   const ObservationSequence &omega,
                                   const NoiseSpec &eps, HeuristicKind kind,
                                   SolveMode mode = SolveMode::LP) {
    if (hyps.empty())
        raise(ErrorKind::InvalidArgument, "no goal hypotheses");
    detail::Stopwatch timer;
    const State &s0 = taskP.initial_state;

    RecognitionResult result;
    result.per_goal.resize(hyps.size());
    bool any_finite = false;
    for (std::size_t i = 0; i < hyps.size(); ++i) {
        GoalReport &report = result.per_goal[i];
        HeuristicReport ho = h_omega(taskP, hyps[i], s0, omega, eps, kind, mode);
        report.h_omega = ho.value;
        report.rows = ho.rows;
        report.lp_time_ms = ho.lp_time_ms;
        HeuristicReport h = h_goal_only(taskP, hyps[i], s0, mode);
        report.h = h.value;
        report.lp_time_ms += h.lp_time_ms;
        if (!ho.is_infinite()) {
            any_finite = true;
            report.delta = report.h_omega - report.h;
            if (report.delta < result.delta_min)
                result.delta_min = report.delta;
        }
    }
    if (!any_finite)
        raise(ErrorKind::AllInfeasible,
              "every hypothesis has h_omega = infinity");

    double tol = mode == SolveMode::LP ? 1e-6 : 0.0;
    for (std::size_t i = 0; i < hyps.size(); ++i) {
        const GoalReport &report = result.per_goal[i];
        if (std::isinf(report.h_omega))
            continue;
        double delta = report.delta;
        double delta_min = result.delta_min;
        if (mode == SolveMode::IP) {
            delta = std::round(delta);
            delta_min = std::round(delta_min);
        }
        if (std::abs(delta - delta_min) <= tol)
            result.solution.push_back((int)i);
    }
    result.total_time_ms = timer.elapsed_ms();
    return result;
}

/// Intersection over union; 1 when both sets are empty.
template <typename T>
double agreement_ratio(const std::set<T> &reference, const std::set<T> &answer) {
    if (reference.empty() && answer.empty())
        return 1.0;
    std::size_t inter = 0;
    for (const T &x : reference)
        if (answer.count(x))
            ++inter;
    std::size_t uni = reference.size() + answer.size() - inter;
    return (double)inter / (double)uni;
}

/*
  Hypothesis file syntax: one hypothesis per line, comma-separated
  `var_name=value_name` atoms; ';' comments and blank lines ignored. An
  empty atom list (the line "") is not valid, but a goal true in every
  state can be written as the line `true`.
*/
inline PartialState parse_hypothesis(const Task &task, const std::string &line) {
    std::vector<Atom> atoms;
    std::string trimmed;
    {
        auto first = line.find_first_not_of(" \t");
        auto last = line.find_last_not_of(" \t\r\n");
        if (first == std::string::npos)
            raise(ErrorKind::SyntaxError, "empty hypothesis line");
        trimmed = line.substr(first, last - first + 1);
    }
    if (trimmed == "true")
        return PartialState();
    std::size_t pos = 0;
    while (pos <= trimmed.size()) {
        std::size_t comma = trimmed.find(',', pos);
        std::string item = trimmed.substr(
            pos, comma == std::string::npos ? std::string::npos : comma - pos);
        auto eq = item.find('=');
        if (eq == std::string::npos)
            raise(ErrorKind::SyntaxError, "bad hypothesis atom '" + item + "'");
        auto strip = [](std::string s) {
            auto a = s.find_first_not_of(" \t");
            auto b = s.find_last_not_of(" \t");
            return a == std::string::npos ? std::string()
                                          : s.substr(a, b - a + 1);
        };
        std::string var_name = strip(item.substr(0, eq));
        std::string value_name = strip(item.substr(eq + 1));
        int var = -1;
        for (int v = 0; v < task.num_variables(); ++v)
            if (task.variables[v].name == var_name)
                var = v;
        if (var < 0)
            raise(ErrorKind::SyntaxError, "unknown variable '" + var_name + "'");
        int value = -1;
        for (int d = 0; d < task.variables[var].domain_size(); ++d)
            if (task.variables[var].value_names[d] == value_name)
                value = d;
        if (value < 0)
            raise(ErrorKind::SyntaxError,
                  "unknown value '" + value_name + "' of '" + var_name + "'");
        atoms.push_back({var, value});
        if (comma == std::string::npos)
            break;
        pos = comma + 1;
    }
    return PartialState(std::move(atoms));
}

inline std::vector<PartialState> parse_hypotheses(const Task &task,
                                                  const std::string &text,
                                                  std::vector<std::string> *lines_out = nullptr) {
    std::vector<PartialState> hyps;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        auto first = line.find_first_not_of(" \t");
        if (first == std::string::npos || line[first] == ';')
            continue;
        hyps.push_back(parse_hypothesis(task, line));
        if (lines_out)
            lines_out->push_back(line.substr(first));
    }
    return hyps;
}

inline std::string hypothesis_to_string(const Task &task,
                                        const PartialState &hyp) {
    if (hyp.empty())
        return "true";
    std::string out;
    for (const Atom &a : hyp.atoms()) {
        if (!out.empty())
            out += ",";
        out += task.variables[a.var].name + "=" +
               task.variables[a.var].value_names[a.value];
    }
    return out;
}

} // namespace ocgr

#endif
