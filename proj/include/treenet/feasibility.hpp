#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <vector>

#include "treenet/errors.hpp"
#include "treenet/hydraulics.hpp"

namespace treenet {

/// One catalog index per pipe.
using Genome = std::vector<std::size_t>;

struct DesignLimits {
    double min_residual_head = 10.0;  // m
    double max_loss_gradient = 0.005; // m/m, applies to friction + fitting gradient

    void check() const {
        if (!(min_residual_head > 0.0)) throw DomainError("minimum residual head must be > 0");
        if (!(max_loss_gradient > 0.0)) throw DomainError("maximum loss gradient must be > 0");
    }
};

struct ConstraintCheck {
    double value = 0.0;
    bool satisfied = false;
};

struct FeasibilityReport {
    std::vector<ConstraintCheck> per_pipe; // loss gradient vs maximum
    std::vector<ConstraintCheck> per_node; // residual head vs minimum
    bool feasible = false;
    double violation = 0.0; // sum of limit-normalized excesses, 0 iff feasible
};

/// Boundary equality counts as satisfied.
inline FeasibilityReport evaluate_constraints(const HydraulicState& state, const DesignLimits& limits) {
    FeasibilityReport r;
    r.per_pipe.reserve(state.friction_fitting_gradients.size());
    r.per_node.reserve(state.residual_heads.size());
    bool all = true;
    double v = 0.0;
    for (double g : state.friction_fitting_gradients) {
        const bool ok = g <= limits.max_loss_gradient;
        r.per_pipe.push_back({g, ok});
        if (!ok) {
            all = false;
            v += (g - limits.max_loss_gradient) / limits.max_loss_gradient;
        }
    }
    for (double h : state.residual_heads) {
        const bool ok = h >= limits.min_residual_head;
        r.per_node.push_back({h, ok});
        if (!ok) {
            all = false;
            v += (limits.min_residual_head - h) / limits.min_residual_head;
        }
    }
    r.feasible = all;
    r.violation = all ? 0.0 : v;
    return r;
}

/// What the optimizer and the exhaustive search rank.
struct Candidate {
    Genome genome;
    double cost = 0.0;
    bool feasible = false;
    double violation = 0.0;
};

/// Feasibility first: feasible before infeasible, feasibles by cost, infeasibles by violation
/// then cost; any remaining tie is broken by lexicographic genome order. "less" means better.
inline std::weak_ordering compare_solutions(const Candidate& a, const Candidate& b) {
    auto by_value = [](double x, double y) {
        if (x < y) return std::weak_ordering::less;
        if (y < x) return std::weak_ordering::greater;
        return std::weak_ordering::equivalent;
    };
    if (a.feasible != b.feasible) return a.feasible ? std::weak_ordering::less : std::weak_ordering::greater;
    if (!a.feasible) {
        if (auto c = by_value(a.violation, b.violation); c != 0) return c;
    }
    if (auto c = by_value(a.cost, b.cost); c != 0) return c;
    return std::lexicographical_compare_three_way(a.genome.begin(), a.genome.end(), b.genome.begin(), b.genome.end());
}

inline bool better_than(const Candidate& a, const Candidate& b) { return compare_solutions(a, b) < 0; }

} // namespace treenet
