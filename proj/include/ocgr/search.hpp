#ifndef OCGR_SEARCH_HPP
#define OCGR_SEARCH_HPP

#include "ocgr/errors.hpp"
#include "ocgr/heuristics.hpp"
#include "ocgr/observations.hpp"
#include "ocgr/task.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <queue>
#include <set>
#include <unordered_map>
#include <vector>

namespace ocgr {

struct SearchLimits {
    std::uint64_t max_expansions = 1000000;
    double max_seconds = 60.0;
};

struct SearchResult {
    std::optional<int> cost; // nullopt = infinity (no plan)
    std::optional<Plan> plan;
    std::uint64_t expanded = 0;
    std::uint64_t generated = 0;

    bool solved() const { return cost.has_value(); }
};

namespace detail {

/// Product state of the compliance compilation: base state plus the count
/// of observations already witnessed.
struct CompiledState {
    State base;
    int matched;

    friend bool operator==(const CompiledState &a, const CompiledState &b) {
        return a.matched == b.matched && a.base == b.base;
    }
};

struct CompiledStateHash {
    std::size_t operator()(const CompiledState &s) const {
        return StateHash()(s.base) * 1099511628211ULL +
               (std::size_t)s.matched;
    }
};

class Deadline {
public:
    explicit Deadline(double seconds)
        : end_(std::chrono::steady_clock::now() +
               std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                   std::chrono::duration<double>(seconds))) {}

    bool expired() const { return std::chrono::steady_clock::now() > end_; }

private:
    std::chrono::steady_clock::time_point end_;
};

/*
  Uniform-cost search over an abstract node type. Successor generation
  iterates operators in label order and the open queue breaks cost ties by
  insertion sequence, so runs are deterministic.
*/
template <typename Node, typename Hash>
SearchResult uniform_cost_search(
    const Task &task, const Node &start,
    const std::function<bool(const Node &)> &is_goal,
    const std::function<void(const Node &,
                             const std::function<void(int, Node)> &)> &expand,
    const SearchLimits &limits) {
    struct Entry {
        int g;
        std::uint64_t seq;
        Node node;
    };
    struct EntryOrder {
        bool operator()(const Entry &a, const Entry &b) const {
            if (a.g != b.g)
                return a.g > b.g;
            return a.seq > b.seq;
        }
    };
    struct NodeInfo {
        int g;
        Node parent;
        int op = -1;
        bool closed = false;
    };

    SearchResult result;
    Deadline deadline(limits.max_seconds);
    std::priority_queue<Entry, std::vector<Entry>, EntryOrder> open;
    std::unordered_map<Node, NodeInfo, Hash> info;

    std::uint64_t seq = 0;
    open.push({0, seq++, start});
    info[start] = {0, start, -1, false};
    result.generated = 1;

    while (!open.empty()) {
        Entry top = open.top();
        open.pop();
        auto it = info.find(top.node);
        if (it->second.closed || it->second.g < top.g)
            continue;
        it->second.closed = true;

        if (is_goal(top.node)) {
            // Rebuild the operator sequence through the parent links.
            Plan plan;
            Node cur = top.node;
            while (true) {
                const NodeInfo &ni = info.at(cur);
                if (ni.op < 0)
                    break;
                plan.steps.push_back(task.operators[ni.op].label);
                cur = ni.parent;
            }
            std::reverse(plan.steps.begin(), plan.steps.end());
            result.cost = top.g;
            result.plan = std::move(plan);
            return result;
        }

        if (++result.expanded > limits.max_expansions)
            raise(ErrorKind::ResourceLimit, "expansion budget exceeded");
        if ((result.expanded & 1023) == 0 && deadline.expired())
            raise(ErrorKind::ResourceLimit, "search time budget exceeded");

        expand(top.node, [&](int op, Node succ) {
            int g = top.g + task.operators[op].cost;
            auto found = info.find(succ);
            if (found == info.end() || g < found->second.g) {
                info[succ] = {g, top.node, op, false};
                open.push({g, seq++, std::move(succ)});
                ++result.generated;
            }
        });
    }
    return result; // open exhausted: no plan, cost = infinity
}

} // namespace detail

/// h*: minimal plan cost for goal g from the initial state.
inline SearchResult optimal_cost(const Task &task, const PartialState &goal,
                                 const SearchLimits &limits = {}) {
    std::vector<int> order = operators_by_label(task);
    return detail::uniform_cost_search<State, StateHash>(
        task, task.initial_state,
        [&](const State &s) { return consistent_with(s, goal); },
        [&](const State &s, const std::function<void(int, State)> &emit) {
            for (int op : order)
                if (applicable(s, task.operators[op]))
                    emit(op, apply_op(s, task.operators[op]));
        },
        limits);
}

/*
  h*_omega: minimal cost over plans complying with omega, searched on the
  matched-prefix product space. When an operator's label equals the next
  unmatched observation only the consuming transition is generated; the
  greedy-match exchange argument keeps this cost-exact (the non-strict
  variant is retained behind the flag for cross-checking). Goal test
  requires the whole sequence matched.
*/
inline SearchResult optimal_complying_cost(const Task &task,
                                           const PartialState &goal,
                                           const ObservationSequence &omega,
                                           const SearchLimits &limits = {},
                                           bool strict_consume = true) {
    std::vector<int> order = operators_by_label(task);
    const auto &labels = omega.labels();
    detail::CompiledState start{task.initial_state, 0};
    return detail::uniform_cost_search<detail::CompiledState,
                                       detail::CompiledStateHash>(
        task, start,
        [&](const detail::CompiledState &s) {
            return s.matched == (int)labels.size() &&
                   consistent_with(s.base, goal);
        },
        [&](const detail::CompiledState &s,
            const std::function<void(int, detail::CompiledState)> &emit) {
            for (int op : order) {
                const Operator &o = task.operators[op];
                if (!applicable(s.base, o))
                    continue;
                bool matches = s.matched < (int)labels.size() &&
                               labels[s.matched] == o.label;
                State succ = apply_op(s.base, o);
                if (matches)
                    emit(op, detail::CompiledState{succ, s.matched + 1});
                if (!matches || !strict_consume)
                    emit(op, detail::CompiledState{std::move(succ), s.matched});
            }
        },
        limits);
}

/*
  Bounded-suboptimal plan via weighted A* (w >= 1) guided by the goal-
  landmark LP heuristic, rounded up for admissibility. Costs are unit, so
  the LP ceiling stays a lower bound and the result is within w * h*.
  Unlike the oracles above, this is a plan *generator*: an unreachable
  goal is an Unsolvable error, not an infinite cost.
*/
inline SearchResult weighted_plan(const Task &task, const PartialState &goal,
                                  double w, const SearchLimits &limits = {}) {
    if (w < 1.0)
        raise(ErrorKind::InvalidArgument, "weight must be >= 1");
    std::vector<int> order = operators_by_label(task);

    std::unordered_map<State, int, StateHash> h_cache;
    auto heuristic = [&](const State &s) -> std::optional<int> {
        auto it = h_cache.find(s);
        if (it != h_cache.end())
            return it->second < 0 ? std::nullopt : std::optional<int>(it->second);
        LandmarkSet lms = extract_landmarks(task, goal, s);
        LinearModel model = build_base_model(task, goal, s, lms);
        LpOutcome lp = solve_lp(model);
        std::optional<int> h;
        if (lp.status == LpStatus::Optimal)
            h = (int)std::ceil(lp.objective - 1e-6);
        h_cache[s] = h ? *h : -1;
        return h;
    };

    struct Entry {
        double f;
        int g;
        std::uint64_t seq;
        State state;
    };
    struct EntryOrder {
        bool operator()(const Entry &a, const Entry &b) const {
            if (a.f != b.f)
                return a.f > b.f;
            if (a.g != b.g)
                return a.g < b.g; // prefer deeper nodes on f-ties
            return a.seq > b.seq;
        }
    };
    struct NodeInfo {
        int g;
        State parent;
        int op = -1;
        bool closed = false;
    };

    SearchResult result;
    detail::Deadline deadline(limits.max_seconds);
    std::priority_queue<Entry, std::vector<Entry>, EntryOrder> open;
    std::unordered_map<State, NodeInfo, StateHash> info;

    std::uint64_t seq = 0;
    auto h0 = heuristic(task.initial_state);
    if (h0) {
        open.push({w * *h0, 0, seq++, task.initial_state});
        info[task.initial_state] = {0, task.initial_state, -1, false};
        result.generated = 1;
    }

    while (!open.empty()) {
        Entry top = open.top();
        open.pop();
        auto it = info.find(top.state);
        if (it->second.closed || it->second.g < top.g)
            continue;
        it->second.closed = true;

        if (consistent_with(top.state, goal)) {
            Plan plan;
            State cur = top.state;
            while (true) {
                const NodeInfo &ni = info.at(cur);
                if (ni.op < 0)
                    break;
                plan.steps.push_back(task.operators[ni.op].label);
                cur = ni.parent;
            }
            std::reverse(plan.steps.begin(), plan.steps.end());
            result.cost = top.g;
            result.plan = std::move(plan);
            return result;
        }

        if (++result.expanded > limits.max_expansions)
            raise(ErrorKind::ResourceLimit, "expansion budget exceeded");
        if ((result.expanded & 255) == 0 && deadline.expired())
            raise(ErrorKind::ResourceLimit, "search time budget exceeded");

        for (int op : order) {
            if (!applicable(top.state, task.operators[op]))
                continue;
            State succ = apply_op(top.state, task.operators[op]);
            int g = top.g + task.operators[op].cost;
            auto found = info.find(succ);
            if (found != info.end() && g >= found->second.g)
                continue;
            auto h = heuristic(succ);
            if (!h)
                continue; // dead end
            info[succ] = {g, top.state, op, false};
            open.push({g + w * *h, g, seq++, std::move(succ)});
            ++result.generated;
        }
    }
    raise(ErrorKind::Unsolvable, "goal is unreachable");
}

/*
  Reference solution set (the search-exact definition): hypotheses whose
  complying-to-optimal cost ratio is within the observed agent's own
  suboptimality ratio. The caller must pass the de-noised sequence; the
  module does not strip noise itself.
*/
inline std::vector<int> reference_solution_set(
    const Task &taskP, const std::vector<PartialState> &goals,
    const ObservationSequence &omega, const Plan &reference_plan,
    const PartialState &reference_goal, const SearchLimits &limits = {}) {
    PlanCheck check = validate_plan(taskP, reference_goal, reference_plan);
    if (!check.valid)
        raise(ErrorKind::InvalidArgument,
              "reference plan does not achieve the reference goal");
    SearchResult ref_opt = optimal_cost(taskP, reference_goal, limits);
    if (!ref_opt.solved())
        raise(ErrorKind::InvalidArgument, "reference goal is unreachable");

    // ratio(x, y) with the degenerate y = 0 convention: 1 if x == 0 else inf.
    auto ratio = [](int x, int y) -> double {
        if (y == 0)
            return x == 0 ? 1.0 : std::numeric_limits<double>::infinity();
        return (double)x / (double)y;
    };
    double bound = ratio(*check.cost, *ref_opt.cost);

    std::vector<int> solution;
    for (std::size_t i = 0; i < goals.size(); ++i) {
        SearchResult complying =
            optimal_complying_cost(taskP, goals[i], omega, limits);
        if (!complying.solved())
            continue;
        SearchResult opt = optimal_cost(taskP, goals[i], limits);
        // complying solved implies opt solved.
        double r = ratio(*complying.cost, *opt.cost);
        if (r <= bound + 1e-12)
            solution.push_back((int)i);
    }
    return solution;
}

/// Exact cost-difference solution set over the search oracles: hypotheses
/// minimizing h*_omega - h*.
inline std::vector<int> exact_cost_diff_solution_set(
    const Task &taskP, const std::vector<PartialState> &goals,
    const ObservationSequence &omega, const SearchLimits &limits = {}) {
    std::vector<std::optional<int>> diffs(goals.size());
    std::optional<int> delta_min;
    for (std::size_t i = 0; i < goals.size(); ++i) {
        SearchResult complying =
            optimal_complying_cost(taskP, goals[i], omega, limits);
        if (!complying.solved())
            continue;
        SearchResult opt = optimal_cost(taskP, goals[i], limits);
        int diff = *complying.cost - *opt.cost;
        diffs[i] = diff;
        if (!delta_min || diff < *delta_min)
            delta_min = diff;
    }
    std::vector<int> solution;
    for (std::size_t i = 0; i < goals.size(); ++i)
        if (diffs[i] && delta_min && *diffs[i] == *delta_min)
            solution.push_back((int)i);
    return solution;
}

} // namespace ocgr

#endif
