#ifndef OCGR_LANDMARKS_HPP
#define OCGR_LANDMARKS_HPP

#include "ocgr/errors.hpp"
#include "ocgr/observations.hpp"
#include "ocgr/relaxation.hpp"
#include "ocgr/task.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace ocgr {

enum class LandmarkOrigin {
    GoalDerived,
    ObservationDerived,
};

/// Disjunctive action landmark: at least one of `ops` occurs in every
/// (complying) plan for the state/target the set was extracted for.
struct Landmark {
    std::vector<int> ops; // operator indices, sorted, nonempty
    LandmarkOrigin origin = LandmarkOrigin::GoalDerived;
    std::string obs_label;  // observation-derived only
    int obs_position = -1;  // first position of the label in omega
};

struct LandmarkSet {
    std::vector<Landmark> landmarks;
    /*
      Unreachable targets do not produce an (illegal) empty landmark;
      they set a marker instead. For a goal-derived extraction the LP
      module turns the marker into heuristic value infinity. For an
      observation-derived extraction the label is recorded so the model
      can force the matching observation count to zero.
    */
    bool infeasible = false;
    std::vector<std::string> infeasible_obs_labels;
};

namespace detail {

/// All achievers of `atom` applicable in the relaxed fixpoint that never
/// adds `atom` itself ("first achievers"). Deleting these operators makes
/// the atom unreachable in the relaxation, so the set is a sound
/// disjunctive action landmark. Empty means the atom is relaxed-unreachable.
inline std::vector<int> first_achievers(const Task &task, const State &s,
                                        const Atom &atom) {
    int forbidden = task.atom_id(atom.var, atom.value);
    std::vector<bool> reached =
        RelaxedReachability::reachable_atoms(task, s, forbidden);
    std::vector<int> achievers;
    for (int i = 0; i < task.num_operators(); ++i) {
        const Operator &op = task.operators[i];
        auto eff = op.effects.value_of(atom.var);
        if (!eff || *eff != atom.value)
            continue;
        bool applicable = true;
        for (const Atom &p : op.preconditions.atoms()) {
            if (!reached[task.atom_id(p.var, p.value)]) {
                applicable = false;
                break;
            }
        }
        if (applicable)
            achievers.push_back(i);
    }
    return achievers;
}

inline void add_unique(LandmarkSet &out, Landmark lm,
                       std::set<std::vector<int>> &seen) {
    std::sort(lm.ops.begin(), lm.ops.end());
    if (seen.insert(lm.ops).second)
        out.landmarks.push_back(std::move(lm));
}

} // namespace detail

/*
  Backchaining extraction over the delete relaxation, depth 2:
    depth 1 - for each target atom not holding in s, the first-achiever
              set is a landmark;
    depth 2 - every precondition atom shared by all of those achievers is
              an atom landmark; its own first-achiever set is emitted too.
  Correct but deliberately incomplete; every returned set passes
  verify_landmark. An unreachable atom flags the set infeasible.
*/
inline LandmarkSet extract_landmarks(const Task &task,
                                     const PartialState &target,
                                     const State &s) {
    LandmarkSet out;
    std::set<std::vector<int>> seen;
    for (const Atom &goal_atom : target.atoms()) {
        if (s[goal_atom.var] == goal_atom.value)
            continue;
        std::vector<int> achievers = detail::first_achievers(task, s, goal_atom);
        if (achievers.empty()) {
            out.infeasible = true;
            continue;
        }
        detail::add_unique(out, Landmark{achievers, LandmarkOrigin::GoalDerived,
                                         "", -1},
                           seen);

        // Shared precondition atoms across all first achievers.
        std::vector<Atom> shared =
            task.operators[achievers[0]].preconditions.atoms();
        for (std::size_t i = 1; i < achievers.size() && !shared.empty(); ++i) {
            const PartialState &pre = task.operators[achievers[i]].preconditions;
            std::vector<Atom> keep;
            for (const Atom &a : shared) {
                auto v = pre.value_of(a.var);
                if (v && *v == a.value)
                    keep.push_back(a);
            }
            shared = std::move(keep);
        }
        for (const Atom &sub : shared) {
            if (s[sub.var] == sub.value)
                continue;
            std::vector<int> sub_achievers =
                detail::first_achievers(task, s, sub);
            if (sub_achievers.empty()) {
                out.infeasible = true;
                continue;
            }
            detail::add_unique(out,
                               Landmark{sub_achievers,
                                        LandmarkOrigin::GoalDerived, "", -1},
                               seen);
        }
    }
    return out;
}

/*
  Observation-derived landmarks: the preconditions of each observed
  operator are subgoals every complying plan must satisfy, so the same
  extraction runs once per distinct observed label with target pre(obs).
  Duplicate operator sets across different observations are kept (their
  constraints differ by right-hand side); duplicates within one label are
  dropped.
*/
inline LandmarkSet observation_landmarks(const Task &task,
                                         const ObservationSequence &omega,
                                         const State &s) {
    LandmarkSet out;
    std::set<std::string> done;
    for (std::size_t pos = 0; pos < omega.labels().size(); ++pos) {
        const std::string &label = omega.labels()[pos];
        if (!done.insert(label).second)
            continue;
        auto idx = task.operator_index(label);
        if (!idx)
            raise(ErrorKind::UnknownLabel,
                  "observation '" + label + "' is not an operator");
        LandmarkSet per_label = extract_landmarks(
            task, task.operators[*idx].preconditions, s);
        for (Landmark &lm : per_label.landmarks) {
            lm.origin = LandmarkOrigin::ObservationDerived;
            lm.obs_label = label;
            lm.obs_position = (int)pos;
            out.landmarks.push_back(std::move(lm));
        }
        if (per_label.infeasible)
            out.infeasible_obs_labels.push_back(label);
    }
    return out;
}

/// Independent oracle: lm is a landmark for (s, target) iff deleting all
/// its operators makes the target unreachable in the delete relaxation.
inline bool verify_landmark(const Task &task, const PartialState &target,
                            const State &s, const Landmark &lm) {
    std::vector<bool> disabled(task.num_operators(), false);
    for (int op : lm.ops)
        disabled[op] = true;
    return !RelaxedReachability::all_reachable(task, s, target, &disabled);
}

/// Debug dump: one landmark per line, `{op1,op2,...} <- origin`.
inline std::string dump_landmarks(const Task &task, const LandmarkSet &lms) {
    std::ostringstream out;
    for (const Landmark &lm : lms.landmarks) {
        out << "{";
        for (std::size_t i = 0; i < lm.ops.size(); ++i) {
            if (i)
                out << ",";
            out << task.operators[lm.ops[i]].label;
        }
        out << "} <- ";
        if (lm.origin == LandmarkOrigin::GoalDerived)
            out << "goal";
        else
            out << "obs(" << lm.obs_label << ")";
        out << "\n";
    }
    if (lms.infeasible)
        out << "INFEASIBLE\n";
    for (const std::string &label : lms.infeasible_obs_labels)
        out << "INFEASIBLE <- obs(" << label << ")\n";
    return out.str();
}

} // namespace ocgr

#endif
