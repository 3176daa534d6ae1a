#ifndef OCGR_RELAXATION_HPP
#define OCGR_RELAXATION_HPP

#include "ocgr/task.hpp"

#include <vector>

namespace ocgr {

/*
  Delete-relaxation reachability: atoms accumulate, nothing is ever
  removed. The fixpoint below is the workhorse for landmark extraction and
  for the landmark-verification oracle.
*/
class RelaxedReachability {
public:
    /// Atoms reachable from s. `forbidden_atom` (if >= 0, as task atom id)
    /// is never added, which yields the "reachable before b" set used for
    /// first-achiever landmarks. `disabled_ops[i]` removes operator i.
    static std::vector<bool> reachable_atoms(
        const Task &task, const State &s, int forbidden_atom = -1,
        const std::vector<bool> *disabled_ops = nullptr) {
        std::vector<bool> reached(task.num_atoms(), false);
        for (int v = 0; v < task.num_variables(); ++v) {
            int id = task.atom_id(v, s[v]);
            if (id != forbidden_atom)
                reached[id] = true;
        }
        std::vector<bool> applied(task.num_operators(), false);
        bool changed = true;
        while (changed) {
            changed = false;
            for (int i = 0; i < task.num_operators(); ++i) {
                if (applied[i])
                    continue;
                if (disabled_ops && (*disabled_ops)[i])
                    continue;
                const Operator &op = task.operators[i];
                bool ok = true;
                for (const Atom &p : op.preconditions.atoms()) {
                    if (!reached[task.atom_id(p.var, p.value)]) {
                        ok = false;
                        break;
                    }
                }
                if (!ok)
                    continue;
                applied[i] = true;
                for (const Atom &e : op.effects.atoms()) {
                    int id = task.atom_id(e.var, e.value);
                    if (id != forbidden_atom && !reached[id]) {
                        reached[id] = true;
                        changed = true;
                    }
                }
            }
        }
        return reached;
    }

    static bool all_reachable(const Task &task, const State &s,
                              const PartialState &target,
                              const std::vector<bool> *disabled_ops = nullptr) {
        std::vector<bool> reached =
            reachable_atoms(task, s, -1, disabled_ops);
        for (const Atom &a : target.atoms())
            if (!reached[task.atom_id(a.var, a.value)])
                return false;
        return true;
    }
};

} // namespace ocgr

#endif
