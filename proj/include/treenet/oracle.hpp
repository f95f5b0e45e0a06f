#pragma once

// Independent checks for the kernel and the optimizer: a matrix-free hydraulic evaluator and
// brute-force enumeration of small design spaces.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "treenet/errors.hpp"
#include "treenet/feasibility.hpp"
#include "treenet/hydraulics.hpp"
#include "treenet/network.hpp"
#include "treenet/problem.hpp"

namespace treenet {

struct EnumerationBudget {
    std::uint64_t max_combinations = 10'000'000;
};

/// Size of the design space, saturating at UINT64_MAX.
inline std::uint64_t design_space_size(std::size_t pipes, std::size_t catalog_size) {
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < pipes; ++i) {
        if (catalog_size != 0 && total > UINT64_MAX / catalog_size) return UINT64_MAX;
        total *= catalog_size;
    }
    return total;
}

/// Scores every genome, counting in mixed radix with pipe 0 as the fastest digit, and keeps
/// the best under compare_solutions (so equal-cost optima resolve to the lexicographically
/// smallest genome). Refuses to start when the space exceeds the budget.
inline Candidate exhaustive_optimize(const DesignProblem& problem, EnumerationBudget budget = {}) {
    const auto pipes = problem.pipe_count();
    const auto alphabet = problem.catalog_size();
    const auto space = design_space_size(pipes, alphabet);
    if (space > budget.max_combinations)
        throw BudgetExceeded("design space has " +
                             (space == UINT64_MAX ? std::string("more than 2^64") : std::to_string(space)) +
                             " combinations, budget is " + std::to_string(budget.max_combinations));

    Genome genome(pipes, 0);
    Candidate best = problem.evaluate(genome);
    for (std::uint64_t n = 1; n < space; ++n) {
        for (std::size_t i = 0; i < pipes; ++i) {
            if (++genome[i] < alphabet) break;
            genome[i] = 0;
        }
        auto c = problem.evaluate(genome);
        if (better_than(c, best)) best = std::move(c);
    }
    return best;
}

/// Same outputs as simulate(), computed by explicit traversal: flows by accumulating subtree
/// demand from the leaves up, heads by carrying losses from the reservoir down each branch.
inline HydraulicState path_walk_simulate(const TreeNetwork& net, std::span<const double> diameters,
                                         const HydraulicParams& params) {
    const auto n = net.node_count();
    if (diameters.size() != n)
        throw DimensionError("diameter assignment has " + std::to_string(diameters.size()) + " entries for " +
                             std::to_string(n) + " pipes");
    params.check();
    const auto nodes = net.nodes();
    const auto pipes = net.pipes();
    const auto order = net.preorder();

    HydraulicState s;
    s.flows.assign(n, 0.0);
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        const auto v = *it;
        double q = nodes[v].demand;
        for (auto c : net.child_pipes(v)) q += s.flows[c];
        s.flows[v] = q;
    }

    s.friction_gradients.resize(n);
    s.friction_fitting_gradients.resize(n);
    s.pipe_head_losses.resize(n);
    s.nodal_heads.resize(n);
    s.residual_heads.resize(n);
    const double e0 = net.reservoir().elevation;
    for (const auto v : order) {
        const double hf = friction_gradient(s.flows[v], diameters[v], params.hazen_williams, params.flow_exponent);
        s.friction_gradients[v] = hf;
        s.friction_fitting_gradients[v] = params.fitting_loss * hf;
        s.pipe_head_losses[v] = pipes[v].length * s.friction_fitting_gradients[v];
        const auto up = net.upstream_node(v);
        const double upstream_head = up == kReservoir ? e0 : s.nodal_heads[up];
        s.nodal_heads[v] = upstream_head - s.pipe_head_losses[v];
        s.residual_heads[v] = s.nodal_heads[v] - nodes[v].elevation;
    }
    return s;
}

} // namespace treenet
