#ifndef OCGR_TESTS_FIXTURES_HPP
#define OCGR_TESTS_FIXTURES_HPP

#include "ocgr/rng.hpp"
#include "ocgr/task.hpp"

#include <string>
#include <vector>

namespace ocgr::fixtures {

inline Variable make_var(std::string name, std::vector<std::string> values) {
    Variable v;
    v.name = std::move(name);
    v.value_names = std::move(values);
    return v;
}

inline Operator make_op(std::string label, std::vector<Atom> pre,
                        std::vector<Atom> eff) {
    Operator op;
    op.label = normalize_label(label);
    op.preconditions = PartialState(std::move(pre));
    op.effects = PartialState(std::move(eff));
    return op;
}

/// n x n grid, one position variable, 4-directional moves (2 ops per
/// edge). 3x3 has 24 operators. Cells are row-major c0..c{n*n-1}, the
/// agent starts at c0.
inline Task grid_task(int n) {
    Task task;
    task.name = "grid" + std::to_string(n);
    std::vector<std::string> cells;
    for (int i = 0; i < n * n; ++i)
        cells.push_back("c" + std::to_string(i));
    task.variables.push_back(make_var("pos", cells));
    auto cell = [&](int r, int c) { return r * n + c; };
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) {
            int from = cell(r, c);
            auto add_move = [&](const char *dir, int to) {
                task.operators.push_back(make_op(
                    std::string("move-") + dir + " " + cells[from] + " " +
                        cells[to],
                    {{0, from}}, {{0, to}}));
            };
            if (c + 1 < n)
                add_move("right", cell(r, c + 1));
            if (c > 0)
                add_move("left", cell(r, c - 1));
            if (r > 0)
                add_move("up", cell(r - 1, c));
            if (r + 1 < n)
                add_move("down", cell(r + 1, c));
        }
    }
    task.initial_state = {0};
    task.validate();
    return task;
}

/// n x n grid with keys: movement as in grid_task plus one pick operator
/// per key at a fixed cell. Goals of the form {pos=?, have_k=yes} carry a
/// three-row landmark structure (goal cell entry, pick, key cell entry).
inline Task keygrid_task(int n, const std::vector<int> &key_cells) {
    Task task = grid_task(n);
    task.name = "keygrid" + std::to_string(n);
    for (std::size_t k = 0; k < key_cells.size(); ++k) {
        int var = (int)task.variables.size();
        task.variables.push_back(
            make_var("have_k" + std::to_string(k), {"no", "yes"}));
        task.initial_state.push_back(0);
        task.operators.push_back(make_op(
            "pick k" + std::to_string(k) + " c" + std::to_string(key_cells[k]),
            {{0, key_cells[k]}, {var, 0}}, {{var, 1}}));
    }
    task.validate();
    return task;
}

/// Classic 4-operator blocksworld with `n` blocks (a, b, c, ...), all on
/// the table and clear initially, hand empty.
inline Task blocks_task(int n) {
    Task task;
    task.name = "blocks" + std::to_string(n);
    std::vector<std::string> names;
    for (int i = 0; i < n; ++i)
        names.push_back(std::string(1, (char)('a' + i)));

    // pos_X: table, hand, on_Y...; clear_X: yes/no; handempty: yes/no.
    std::vector<int> pos_var(n), clear_var(n);
    for (int i = 0; i < n; ++i) {
        std::vector<std::string> values = {"table", "hand"};
        for (int j = 0; j < n; ++j)
            if (j != i)
                values.push_back("on_" + names[j]);
        pos_var[i] = (int)task.variables.size();
        task.variables.push_back(make_var("pos_" + names[i], values));
    }
    for (int i = 0; i < n; ++i) {
        clear_var[i] = (int)task.variables.size();
        task.variables.push_back(make_var("clear_" + names[i], {"yes", "no"}));
    }
    int handempty = (int)task.variables.size();
    task.variables.push_back(make_var("handempty", {"yes", "no"}));

    auto on_value = [&](int i, int j) {
        // value index of "on_names[j]" in pos_i's domain
        int idx = 2;
        for (int k = 0; k < n; ++k) {
            if (k == i)
                continue;
            if (k == j)
                return idx;
            ++idx;
        }
        return -1;
    };

    for (int i = 0; i < n; ++i) {
        task.operators.push_back(make_op(
            "pick-up " + names[i],
            {{pos_var[i], 0}, {clear_var[i], 0}, {handempty, 0}},
            {{pos_var[i], 1}, {clear_var[i], 1}, {handempty, 1}}));
        task.operators.push_back(make_op(
            "put-down " + names[i], {{pos_var[i], 1}},
            {{pos_var[i], 0}, {clear_var[i], 0}, {handempty, 0}}));
        for (int j = 0; j < n; ++j) {
            if (j == i)
                continue;
            task.operators.push_back(make_op(
                "stack " + names[i] + " " + names[j],
                {{pos_var[i], 1}, {clear_var[j], 0}},
                {{pos_var[i], on_value(i, j)},
                 {clear_var[i], 0},
                 {clear_var[j], 1},
                 {handempty, 0}}));
            task.operators.push_back(make_op(
                "unstack " + names[i] + " " + names[j],
                {{pos_var[i], on_value(i, j)}, {clear_var[i], 0}, {handempty, 0}},
                {{pos_var[i], 1},
                 {clear_var[i], 1},
                 {clear_var[j], 0},
                 {handempty, 1}}));
        }
    }
    task.initial_state.assign(task.variables.size(), 0);
    task.validate();
    return task;
}

/// Keyed grid split by a horizontal wall under `wall_row`, passable only
/// at the `gaps` columns. Gap cells are funnels with small producer sets,
/// which is where observation landmarks carry the most information.
inline Task gapgrid_task(int n, int wall_row, const std::vector<int> &gaps,
                         const std::vector<int> &key_cells) {
    Task task = grid_task(n);
    task.name = "gapgrid" + std::to_string(n);
    auto crosses_wall = [&](const Operator &op) {
        int from = op.preconditions.atoms()[0].value;
        int to = op.effects.atoms()[0].value;
        int r1 = from / n, r2 = to / n, col = from % n;
        if ((r1 != wall_row || r2 != wall_row + 1) &&
            (r1 != wall_row + 1 || r2 != wall_row))
            return false;
        for (int gap : gaps)
            if (col == gap)
                return false;
        return true;
    };
    std::vector<Operator> kept;
    for (const Operator &op : task.operators)
        if (!crosses_wall(op))
            kept.push_back(op);
    task.operators = std::move(kept);
    for (std::size_t k = 0; k < key_cells.size(); ++k) {
        int var = (int)task.variables.size();
        task.variables.push_back(
            make_var("have_k" + std::to_string(k), {"no", "yes"}));
        task.initial_state.push_back(0);
        task.operators.push_back(make_op(
            "pick k" + std::to_string(k) + " c" + std::to_string(key_cells[k]),
            {{0, key_cells[k]}, {var, 0}}, {{var, 1}}));
    }
    task.validate();
    return task;
}

/// One truck on a line of `locations`, `packages` packages to haul.
/// Goals of the form {pos_p0=lX, pos_p1=lY} produce load/drive/unload
/// plans with route-shaped landmark structure.
inline Task logistics_task(int locations, int packages,
                           const std::vector<int> &package_start,
                           int truck_start = 0) {
    Task task;
    task.name = "logistics" + std::to_string(locations);
    std::vector<std::string> locs;
    for (int i = 0; i < locations; ++i)
        locs.push_back("l" + std::to_string(i));
    task.variables.push_back(make_var("truck", locs));
    for (int p = 0; p < packages; ++p) {
        std::vector<std::string> values = locs;
        values.push_back("truck");
        task.variables.push_back(make_var("pos_p" + std::to_string(p), values));
    }
    const int truck = 0;
    for (int i = 0; i + 1 < locations; ++i) {
        task.operators.push_back(make_op(
            "drive " + locs[i] + " " + locs[i + 1], {{truck, i}},
            {{truck, i + 1}}));
        task.operators.push_back(make_op(
            "drive " + locs[i + 1] + " " + locs[i], {{truck, i + 1}},
            {{truck, i}}));
    }
    for (int p = 0; p < packages; ++p) {
        int var = 1 + p;
        for (int i = 0; i < locations; ++i) {
            task.operators.push_back(make_op(
                "load p" + std::to_string(p) + " " + locs[i],
                {{truck, i}, {var, i}}, {{var, locations}}));
            task.operators.push_back(make_op(
                "unload p" + std::to_string(p) + " " + locs[i],
                {{truck, i}, {var, locations}}, {{var, i}}));
        }
    }
    task.initial_state.assign(task.variables.size(), 0);
    task.initial_state[truck] = truck_start;
    for (int p = 0; p < packages; ++p)
        task.initial_state[1 + p] = package_start[p];
    task.validate();
    return task;
}

/// Blocksworld variant starting from a full tower (block i stacked on
/// block i-1, only the top clear). Rebuilding goals need deep teardown,
/// which gives the long generating plans the benchmark levels assume.
inline Task blocks_tower_task(int n) {
    Task task = blocks_task(n);
    task.name = "towers" + std::to_string(n);
    // pos_i: 0 table, 1 hand, on_j at index from blocks_task's layout.
    auto on_value = [&](int i, int j) {
        int idx = 2;
        for (int k = 0; k < n; ++k) {
            if (k == i)
                continue;
            if (k == j)
                return idx;
            ++idx;
        }
        return -1;
    };
    for (int i = 1; i < n; ++i)
        task.initial_state[i] = on_value(i, i - 1); // block i on block i-1
    for (int i = 0; i < n - 1; ++i)
        task.initial_state[n + i] = 1; // not clear (blocks_task layout)
    task.validate();
    return task;
}

/*
  Two-goal task with a short locked route and a long detour to target A,
  and target B two steps past A. The heuristic and oracle values it is
  engineered to produce (goal landmarks only):

      h(A-goal) = h*(A-goal) = 3        via {unlock}, {walk s d, walk c4 d}, {grab key}
      h*(B-goal) = 3                    via walk s b1, walk b1 z, walk z b
      detour plan (7 steps, valid for A): walk s c1 .. walk c4 d, grab key, unlock d a
      oracle on the full detour observations: h*_omega(A) = 7, h*_omega(B) = 9
*/
struct TwoRouteFixture {
    Task task;
    PartialState goal_a; // reference goal
    PartialState goal_b;
    Plan detour_plan;                     // 7 steps, achieves goal_a
    std::string noise_label = "walk a n1"; // never on the detour plan
};

inline TwoRouteFixture two_route_fixture() {
    Task task;
    task.name = "two_route";
    task.variables.push_back(make_var(
        "pos", {"s", "d", "a", "c1", "c2", "c3", "c4", "b1", "z", "b", "n1"}));
    task.variables.push_back(make_var("key", {"no", "yes"}));
    enum { S, D, A, C1, C2, C3, C4, B1, Z, B, N1 };
    const int pos = 0, key = 1;
    task.operators = {
        make_op("walk s d", {{pos, S}}, {{pos, D}}),
        make_op("walk s c1", {{pos, S}}, {{pos, C1}}),
        make_op("walk c1 c2", {{pos, C1}}, {{pos, C2}}),
        make_op("walk c2 c3", {{pos, C2}}, {{pos, C3}}),
        make_op("walk c3 c4", {{pos, C3}}, {{pos, C4}}),
        make_op("walk c4 d", {{pos, C4}}, {{pos, D}}),
        make_op("grab key", {{key, 0}}, {{key, 1}}),
        make_op("unlock d a", {{pos, D}, {key, 1}}, {{pos, A}}),
        make_op("walk s b1", {{pos, S}}, {{pos, B1}}),
        make_op("walk b1 z", {{pos, B1}}, {{pos, Z}}),
        make_op("walk a z", {{pos, A}}, {{pos, Z}}),
        make_op("walk z b", {{pos, Z}}, {{pos, B}}),
        make_op("walk a n1", {{pos, A}}, {{pos, N1}}),
    };
    task.initial_state = {S, 0};
    task.validate();

    TwoRouteFixture fx;
    fx.task = std::move(task);
    fx.goal_a = PartialState({{pos, A}});
    fx.goal_b = PartialState({{pos, B}});
    fx.detour_plan.steps = {"walk s c1", "walk c1 c2", "walk c2 c3",
                            "walk c3 c4", "walk c4 d",  "grab key",
                            "unlock d a"};
    return fx;
}

/*
  Task pinning the noisy cost-difference scenario: a 7-step corridor
  observed completely plus three noise labels (10 observations total, all
  forced at eps = 0). Goal landmarks are laid out so that, with all ten
  observation counts forced,
      h_omega(goal_a) = 10 + 3 = 13   (three landmark rows off the corridor)
      h_omega(goal_b) = 10 + 1 = 11   (two of three rows sit on forced ops)
  while the plain landmark LP gives h = 3 for both.
*/
struct CorridorFixture {
    Task task;
    PartialState goal_a;
    PartialState goal_b;
    std::vector<std::string> noisy_observations; // the 10-label sequence
};

inline CorridorFixture corridor_fixture() {
    Task task;
    task.name = "corridor";
    task.variables.push_back(make_var("pos", {"s", "c1", "c2", "c3", "c4", "c5",
                                              "c6", "c7", "h1", "ga", "gb",
                                              "x1", "x2", "x3"}));
    task.variables.push_back(make_var("tool", {"no", "yes"}));
    task.variables.push_back(make_var("badge", {"no", "yes"}));
    enum { S, C1, C2, C3, C4, C5, C6, C7, H1, GA, GB, X1, X2, X3 };
    const int pos = 0, tool = 1, badge = 2;
    task.operators = {
        // step1 also hands out the badge goal_b needs; its precondition
        // holds initially, so the badge contributes exactly one landmark.
        make_op("step1", {{pos, S}}, {{pos, C1}, {badge, 1}}),
        make_op("step2", {{pos, C1}}, {{pos, C2}}),
        make_op("step3", {{pos, C2}}, {{pos, C3}}),
        make_op("step4", {{pos, C3}}, {{pos, C4}}),
        make_op("step5", {{pos, C4}}, {{pos, C5}}),
        make_op("step6", {{pos, C5}}, {{pos, C6}}),
        make_op("step7", {{pos, C6}}, {{pos, C7}}),
        make_op("detour1", {{pos, S}}, {{pos, X1}}),
        make_op("detour2", {{pos, S}}, {{pos, X2}}),
        make_op("detour3", {{pos, S}}, {{pos, X3}}),
        make_op("climb c7 h1", {{pos, C7}}, {{pos, H1}}),
        make_op("enter h1 ga", {{pos, H1}}, {{pos, GA}}),
        make_op("fetch tool", {{tool, 0}}, {{tool, 1}}),
        make_op("enter c7 gb", {{pos, C7}}, {{pos, GB}}),
    };
    task.initial_state = {S, 0, 0};
    task.validate();

    CorridorFixture fx;
    fx.task = std::move(task);
    fx.goal_a = PartialState({{pos, GA}, {tool, 1}});
    fx.goal_b = PartialState({{pos, GB}, {badge, 1}});
    fx.noisy_observations = {"step1", "detour1", "step2", "step3", "detour2",
                             "step4", "step5",  "step6", "detour3", "step7"};
    return fx;
}

/*
  Two-region task pinning the observation-landmark scenario. The first
  observation is a real plan step whose source cell has three producers,
  the second is noise from the far region with two producers:

      obs "cross x1 x2" -> landmark {walk x0 x1, walk xa x1, walk xb x1}
      obs "cross y1 y2" -> landmark {walk yc y1, walk yd y1}

  and with eps = 1/2 the improved IP pays for one observation only:
  value 3 (cross x1 x2 + one producer + enter x2 g).
*/
struct TwoRegionFixture {
    Task task;
    PartialState goal;
    std::vector<std::string> observations; // one real, one noisy
};

inline TwoRegionFixture two_region_fixture() {
    Task task;
    task.name = "two_region";
    task.variables.push_back(make_var(
        "pos", {"x0", "x1", "x2", "g", "xa", "xb", "y1", "y2", "yc", "yd"}));
    enum { X0, X1, X2, G, XA, XB, Y1, Y2, YC, YD };
    const int pos = 0;
    task.operators = {
        make_op("cross x1 x2", {{pos, X1}}, {{pos, X2}}),
        make_op("walk x0 x1", {{pos, X0}}, {{pos, X1}}),
        make_op("walk xa x1", {{pos, XA}}, {{pos, X1}}),
        make_op("walk xb x1", {{pos, XB}}, {{pos, X1}}),
        make_op("walk x0 xa", {{pos, X0}}, {{pos, XA}}),
        make_op("walk x0 xb", {{pos, X0}}, {{pos, XB}}),
        make_op("cross y1 y2", {{pos, Y1}}, {{pos, Y2}}),
        make_op("walk yc y1", {{pos, YC}}, {{pos, Y1}}),
        make_op("walk yd y1", {{pos, YD}}, {{pos, Y1}}),
        make_op("walk xa yc", {{pos, XA}}, {{pos, YC}}),
        make_op("walk xb yd", {{pos, XB}}, {{pos, YD}}),
        make_op("walk y2 x2", {{pos, Y2}}, {{pos, X2}}),
        make_op("enter x2 g", {{pos, X2}}, {{pos, G}}),
    };
    task.initial_state = {X0};
    task.validate();

    TwoRegionFixture fx;
    fx.task = std::move(task);
    fx.goal = PartialState({{pos, G}});
    fx.observations = {"cross x1 x2", "cross y1 y2"};
    return fx;
}

/*
  One-observation task where the ratio-based reference set and the
  cost-difference set disagree: goal_far sits at the end of a 4-step lane
  whose first step is observed, goal_near is one step away but complying
  costs 3 (step out, walk back, step in). So
      h*_omega(far) = 4 = h*(far)      difference 0
      h*_omega(near) = 3, h*(near) = 1  difference 2
  and the cost-difference solution is {goal_far}.
*/
struct LaneFixture {
    Task task;
    PartialState goal_far;
    PartialState goal_near;
    std::vector<std::string> observations;
};

inline LaneFixture lane_fixture() {
    Task task;
    task.name = "lane";
    task.variables.push_back(
        make_var("pos", {"s0", "p1", "p2", "p3", "far", "near"}));
    enum { S0, P1, P2, P3, FAR, NEAR };
    const int pos = 0;
    task.operators = {
        make_op("go s0 p1", {{pos, S0}}, {{pos, P1}}),
        make_op("go p1 p2", {{pos, P1}}, {{pos, P2}}),
        make_op("go p2 p3", {{pos, P2}}, {{pos, P3}}),
        make_op("go p3 far", {{pos, P3}}, {{pos, FAR}}),
        make_op("go p1 s0", {{pos, P1}}, {{pos, S0}}),
        make_op("go s0 near", {{pos, S0}}, {{pos, NEAR}}),
    };
    task.initial_state = {S0};
    task.validate();

    LaneFixture fx;
    fx.task = std::move(task);
    fx.goal_far = PartialState({{pos, FAR}});
    fx.goal_near = PartialState({{pos, NEAR}});
    fx.observations = {"go s0 p1"};
    return fx;
}

/// Seeded random task with hypotheses produced by random walks, so every
/// hypothesis is reachable and the first one has a known witness plan.
struct RandomInstance {
    Task task; // goal-less
    std::vector<PartialState> hypotheses;
    Plan reference_plan; // achieves hypotheses[0]
};

struct RandomTaskOptions {
    int min_vars = 2, max_vars = 4;
    int min_domain = 2, max_domain = 4;
    int min_ops = 6, max_ops = 14;
    int walk_length = 8;
    int num_hypotheses = 3;
    int goal_atoms = 2;
    long max_states = 10000;
};

inline RandomInstance random_instance(Rng &rng,
                                      const RandomTaskOptions &opt = {}) {
    for (int attempt = 0; attempt < 1000; ++attempt) {
        Task task;
        task.name = "random";
        int nv = opt.min_vars + (int)rng.below(opt.max_vars - opt.min_vars + 1);
        long states = 1;
        for (int v = 0; v < nv; ++v) {
            int dom =
                opt.min_domain + (int)rng.below(opt.max_domain - opt.min_domain + 1);
            if (states * dom > opt.max_states)
                dom = opt.min_domain;
            states *= dom;
            std::vector<std::string> values;
            for (int d = 0; d < dom; ++d)
                values.push_back("x" + std::to_string(d));
            task.variables.push_back(
                make_var("v" + std::to_string(v), values));
        }
        int nops = opt.min_ops + (int)rng.below(opt.max_ops - opt.min_ops + 1);
        for (int o = 0; o < nops; ++o) {
            std::vector<Atom> pre, eff;
            for (int v = 0; v < nv; ++v) {
                int dom = task.variables[v].domain_size();
                if (rng.below(2) == 0)
                    pre.push_back({v, (int)rng.below(dom)});
                if (rng.below(2) == 0)
                    eff.push_back({v, (int)rng.below(dom)});
            }
            if (eff.empty()) {
                int v = (int)rng.below(nv);
                eff.push_back({v, (int)rng.below(task.variables[v].domain_size())});
            }
            task.operators.push_back(make_op("op" + std::to_string(o),
                                             std::move(pre), std::move(eff)));
        }
        for (int v = 0; v < nv; ++v)
            task.initial_state.push_back(
                (int)rng.below(task.variables[v].domain_size()));
        task.validate();

        RandomInstance inst;
        bool ok = true;
        for (int h = 0; h < opt.num_hypotheses && ok; ++h) {
            State s = task.initial_state;
            Plan walk;
            for (int step = 0; step < opt.walk_length; ++step) {
                std::vector<int> applicable_ops;
                for (int o = 0; o < task.num_operators(); ++o)
                    if (applicable(s, task.operators[o]))
                        applicable_ops.push_back(o);
                if (applicable_ops.empty())
                    break;
                int pick = applicable_ops[rng.below(applicable_ops.size())];
                walk.steps.push_back(task.operators[pick].label);
                s = apply_op(s, task.operators[pick]);
            }
            if (walk.empty()) {
                ok = false;
                break;
            }
            std::vector<Atom> atoms;
            int want = std::min(opt.goal_atoms, nv);
            int start_var = (int)rng.below(nv);
            for (int k = 0; k < want; ++k) {
                int v = (start_var + k) % nv;
                atoms.push_back({v, s[v]});
            }
            PartialState hyp{std::move(atoms)};
            if (h == 0) {
                if (consistent_with(task.initial_state, hyp)) {
                    // Reference goal must need at least one step.
                    ok = false;
                    break;
                }
                inst.reference_plan = std::move(walk);
            }
            inst.hypotheses.push_back(std::move(hyp));
        }
        if (!ok)
            continue;
        inst.task = std::move(task);
        return inst;
    }
    throw Error(ErrorKind::InvalidArgument,
                "random instance generation kept failing");
}

} // namespace ocgr::fixtures

#endif
