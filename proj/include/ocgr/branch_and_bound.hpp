#ifndef OCGR_BRANCH_AND_BOUND_HPP
#define OCGR_BRANCH_AND_BOUND_HPP

#include "ocgr/errors.hpp"
#include "ocgr/linear_model.hpp"
#include "ocgr/simplex.hpp"

#include <cmath>
#include <optional>
#include <queue>
#include <vector>

namespace ocgr {

struct BranchAndBoundOptions {
    long node_limit = 50000;
    double integrality_tol = 1e-6;
    SimplexOptions lp;
};

/*
  Best-first branch and bound over the LP relaxation; every column is an
  integer variable (the operator- and observation-counting variables are
  Z>=0 by definition). Branching tightens the most fractional column's
  bounds; each node solves a plain LinearModel.
*/
inline LpOutcome solve_ip(const LinearModel &model,
                          BranchAndBoundOptions options = {}) {
    if (model.infeasible_marker)
        return {LpStatus::Infeasible, 0.0, {}, std::nullopt};

    struct Node {
        double bound;
        long seq;
        LinearModel model;
    };
    struct NodeOrder {
        bool operator()(const Node &a, const Node &b) const {
            if (a.bound != b.bound)
                return a.bound > b.bound; // min-heap on bound
            return a.seq > b.seq;
        }
    };

    auto most_fractional = [&](const LpOutcome &lp) -> int {
        int best = -1;
        double best_dist = options.integrality_tol;
        for (std::size_t j = 0; j < lp.column_values.size(); ++j) {
            double v = lp.column_values[j];
            double dist = std::abs(v - std::round(v));
            if (dist > best_dist) {
                best_dist = dist;
                best = (int)j;
            }
        }
        return best;
    };

    std::priority_queue<Node, std::vector<Node>, NodeOrder> open;
    long seq = 0;

    LpOutcome root = solve_lp(model, options.lp);
    if (root.status == LpStatus::Infeasible)
        return root;
    if (root.status == LpStatus::Unbounded)
        raise(ErrorKind::NumericalFailure, "integer program is unbounded");
    open.push({root.objective, seq++, model});

    std::optional<LpOutcome> incumbent;
    long nodes = 0;
    while (!open.empty()) {
        if (++nodes > options.node_limit)
            raise(ErrorKind::IterationLimit, "branch-and-bound node limit");
        Node node = open.top();
        open.pop();
        if (incumbent && node.bound >= incumbent->objective - 1e-9)
            break; // best-first: remaining nodes cannot improve
        LpOutcome lp = solve_lp(node.model, options.lp);
        if (lp.status == LpStatus::Infeasible)
            continue;
        if (lp.status == LpStatus::Unbounded)
            raise(ErrorKind::NumericalFailure, "unbounded node relaxation");
        if (incumbent && lp.objective >= incumbent->objective - 1e-9)
            continue;
        int branch_col = most_fractional(lp);
        if (branch_col < 0) {
            // Integral solution; snap the values.
            for (double &v : lp.column_values)
                v = std::round(v);
            if (!incumbent || lp.objective < incumbent->objective)
                incumbent = lp;
            continue;
        }
        double v = lp.column_values[branch_col];
        // Down branch: x <= floor(v).
        {
            Node child{lp.objective, seq++, node.model};
            Rational floor_v((std::int64_t)std::floor(v));
            Column &col = child.model.columns[branch_col];
            if (!col.upper || floor_v < *col.upper)
                col.upper = floor_v;
            if (!(col.upper && *col.upper < col.lower))
                open.push(std::move(child));
        }
        // Up branch: x >= ceil(v).
        {
            Node child{lp.objective, seq++, node.model};
            Rational ceil_v((std::int64_t)std::ceil(v));
            Column &col = child.model.columns[branch_col];
            if (col.lower < ceil_v)
                col.lower = ceil_v;
            if (!(col.upper && *col.upper < col.lower))
                open.push(std::move(child));
        }
    }
    if (incumbent)
        return *incumbent;
    return {LpStatus::Infeasible, 0.0, {}, std::nullopt};
}

} // namespace ocgr

#endif
