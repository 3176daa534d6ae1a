#ifndef OCGR_TASK_HPP
#define OCGR_TASK_HPP

#include "ocgr/errors.hpp"

#include <algorithm>
#include <cassert>
#include <cctype>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace ocgr {

/// Operator labels are lowercased and whitespace-normalized to single
/// spaces. This is the join key between tasks, observation files and
/// hypothesis files.
inline std::string normalize_label(const std::string &raw) {
    std::string out;
    out.reserve(raw.size());
    bool pending_space = false;
    for (char c : raw) {
        if (std::isspace(static_cast<unsigned char>(c))) {
            if (!out.empty())
                pending_space = true;
        } else {
            if (pending_space) {
                out.push_back(' ');
                pending_space = false;
            }
            out.push_back(static_cast<char>(
                std::tolower(static_cast<unsigned char>(c))));
        }
    }
    return out;
}

/// An atom is a (variable index, value index) pair.
struct Atom {
    int var;
    int value;

    friend bool operator==(const Atom &a, const Atom &b) {
        return a.var == b.var && a.value == b.value;
    }
    friend bool operator<(const Atom &a, const Atom &b) {
        return a.var != b.var ? a.var < b.var : a.value < b.value;
    }
};

/// Partial variable assignment; mentions each variable at most once.
/// Atoms are kept sorted by variable index so set operations and equality
/// are cheap and deterministic.
class PartialState {
public:
    PartialState() = default;
    explicit PartialState(std::vector<Atom> atoms) : atoms_(std::move(atoms)) {
        std::sort(atoms_.begin(), atoms_.end());
        for (std::size_t i = 1; i < atoms_.size(); ++i) {
            if (atoms_[i].var == atoms_[i - 1].var)
                raise(ErrorKind::InvalidArgument,
                      "partial state mentions a variable twice");
        }
    }

    const std::vector<Atom> &atoms() const { return atoms_; }
    bool empty() const { return atoms_.empty(); }
    std::size_t size() const { return atoms_.size(); }

    std::optional<int> value_of(int var) const {
        for (const Atom &a : atoms_)
            if (a.var == var)
                return a.value;
        return std::nullopt;
    }

    friend bool operator==(const PartialState &a, const PartialState &b) {
        return a.atoms_ == b.atoms_;
    }
    friend bool operator<(const PartialState &a, const PartialState &b) {
        return a.atoms_ < b.atoms_;
    }

private:
    std::vector<Atom> atoms_;
};

/// Complete state: one value index per variable.
using State = std::vector<std::int32_t>;

struct Variable {
    std::string name;
    std::vector<std::string> value_names;

    int domain_size() const { return static_cast<int>(value_names.size()); }
};

struct Operator {
    std::string label;
    PartialState preconditions;
    PartialState effects;
    int cost = 1;
};

/// Ordered list of operator labels.
struct Plan {
    std::vector<std::string> steps;

    std::size_t size() const { return steps.size(); }
    bool empty() const { return steps.empty(); }
};

/*
  SAS+ planning task. Immutable after validate(); all semantic operations
  below are pure functions over it. The label index doubles as the join key
  with observation files, so labels are normalized at parse time and unique
  by invariant.
*/
struct Task {
    std::string name;
    std::vector<Variable> variables;
    std::vector<Operator> operators;
    State initial_state;
    std::optional<PartialState> goal;

    std::unordered_map<std::string, int> label_index;

    int num_variables() const { return static_cast<int>(variables.size()); }
    int num_operators() const { return static_cast<int>(operators.size()); }

    std::optional<int> operator_index(const std::string &label) const {
        auto it = label_index.find(label);
        if (it == label_index.end())
            return std::nullopt;
        return it->second;
    }

    /// Enumerate all atoms of the task (for reachability tables).
    int num_atoms() const {
        int n = 0;
        for (const Variable &v : variables)
            n += v.domain_size();
        return n;
    }

    /// Flat id of an atom; variables laid out consecutively.
    int atom_id(int var, int value) const {
        assert(var >= 0 && var < num_variables());
        assert(value >= 0 && value < variables[var].domain_size());
        return atom_offsets_[var] + value;
    }

    void validate(bool strict_unit_costs = true) {
        if (variables.empty())
            raise(ErrorKind::SyntaxError, "task has no variables");
        atom_offsets_.assign(variables.size(), 0);
        int offset = 0;
        for (std::size_t v = 0; v < variables.size(); ++v) {
            if (variables[v].domain_size() < 1)
                raise(ErrorKind::SyntaxError,
                      "variable '" + variables[v].name + "' has empty domain");
            atom_offsets_[v] = offset;
            offset += variables[v].domain_size();
        }
        if ((int)initial_state.size() != num_variables())
            raise(ErrorKind::SyntaxError, "initial state size mismatch");
        for (int v = 0; v < num_variables(); ++v)
            check_atom(v, initial_state[v], "initial state");
        if (goal)
            check_partial(*goal, "goal");
        label_index.clear();
        for (int i = 0; i < num_operators(); ++i) {
            const Operator &op = operators[i];
            if (op.label.empty())
                raise(ErrorKind::SyntaxError, "operator with empty label");
            if (!label_index.emplace(op.label, i).second)
                raise(ErrorKind::SyntaxError,
                      "duplicate operator label '" + op.label + "'");
            check_partial(op.preconditions, "preconditions of " + op.label);
            check_partial(op.effects, "effects of " + op.label);
            if (op.effects.empty())
                raise(ErrorKind::SyntaxError,
                      "operator '" + op.label + "' has no effects");
            if (op.cost < 0)
                raise(ErrorKind::SyntaxError,
                      "operator '" + op.label + "' has negative cost");
            if (strict_unit_costs && op.cost != 1)
                raise(ErrorKind::UnsupportedFeature,
                      "operator '" + op.label +
                          "' has non-unit cost (strict mode)");
        }
    }

private:
    void check_atom(int var, int value, const std::string &where) const {
        if (var < 0 || var >= num_variables())
            raise(ErrorKind::SyntaxError, where + ": variable index out of range");
        if (value < 0 || value >= variables[var].domain_size())
            raise(ErrorKind::SyntaxError,
                  where + ": value out of domain of '" + variables[var].name + "'");
    }

    void check_partial(const PartialState &ps, const std::string &where) const {
        for (const Atom &a : ps.atoms())
            check_atom(a.var, a.value, where);
    }

    std::vector<int> atom_offsets_;
};

inline bool consistent_with(const State &s, const PartialState &cond) {
    for (const Atom &a : cond.atoms())
        if (s[a.var] != a.value)
            return false;
    return true;
}

inline bool applicable(const State &s, const Operator &op) {
    return consistent_with(s, op.preconditions);
}

/// State resulting from executing an applicable operator.
inline State apply_op(const State &s, const Operator &op) {
    if (!applicable(s, op))
        raise(ErrorKind::NotApplicable,
              "operator '" + op.label + "' not applicable");
    State result = s;
    for (const Atom &a : op.effects.atoms())
        result[a.var] = a.value;
    return result;
}

struct PlanCheck {
    bool valid = false;
    std::optional<int> cost;
};

/// Simulate the plan from the initial state and test the final state
/// against `goal`. Unknown labels are an error, inapplicability just makes
/// the plan invalid.
inline PlanCheck validate_plan(const Task &task, const PartialState &goal,
                               const Plan &plan) {
    State s = task.initial_state;
    int total = 0;
    for (const std::string &label : plan.steps) {
        auto idx = task.operator_index(label);
        if (!idx)
            raise(ErrorKind::UnknownLabel, "unknown plan step '" + label + "'");
        const Operator &op = task.operators[*idx];
        if (!applicable(s, op))
            return {false, std::nullopt};
        s = apply_op(s, op);
        total += op.cost;
    }
    if (!consistent_with(s, goal))
        return {false, std::nullopt};
    return {true, total};
}

inline Task with_goal(const Task &task, const PartialState &goal) {
    if (task.goal)
        raise(ErrorKind::GoalAlreadySet,
              "task '" + task.name + "' already has a goal");
    Task result = task;
    result.goal = goal;
    result.validate(false);
    return result;
}

/// Operator indices sorted by label; searches iterate in this order so
/// tie-breaking is deterministic.
inline std::vector<int> operators_by_label(const Task &task) {
    std::vector<int> order(task.num_operators());
    for (int i = 0; i < task.num_operators(); ++i)
        order[i] = i;
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        return task.operators[a].label < task.operators[b].label;
    });
    return order;
}

struct StateHash {
    std::size_t operator()(const State &s) const {
        // FNV-1a over the raw values.
        std::uint64_t h = 1469598103934665603ULL;
        for (std::int32_t v : s) {
            h ^= static_cast<std::uint64_t>(v) + 0x9e3779b97f4a7c15ULL;
            h *= 1099511628211ULL;
        }
        return static_cast<std::size_t>(h);
    }
};

} // namespace ocgr

#endif
