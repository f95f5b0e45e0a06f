#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "treenet/cost.hpp"
#include "treenet/feasibility.hpp"
#include "treenet/hydraulics.hpp"
#include "treenet/network.hpp"

namespace treenet {

/// Everything produced when a design is scored.
struct Evaluation {
    Candidate candidate;
    DiameterAssignment diameters;
    HydraulicState state;
    CostReport cost;
    FeasibilityReport report;
};

/// A sizing instance: layout, catalog, limits and hydraulic coefficients. Scores genomes by
/// simulate -> cost -> constraints. Holds no mutable state, so one instance can be shared.
class DesignProblem {
public:
    DesignProblem(const TreeNetwork& net, PipeCatalog catalog, DesignLimits limits, HydraulicParams params)
        : model_(net), lengths_(net.lengths()), catalog_(std::move(catalog)), limits_(limits), params_(params) {
        if (catalog_.empty()) throw DomainError("pipe catalog is empty");
        limits_.check();
        params_.check();
    }

    std::size_t pipe_count() const noexcept { return lengths_.size(); }
    std::size_t catalog_size() const noexcept { return catalog_.size(); }
    const PipeCatalog& catalog() const noexcept { return catalog_; }
    const DesignLimits& limits() const noexcept { return limits_; }
    const HydraulicParams& params() const noexcept { return params_; }
    const HydraulicModel& model() const noexcept { return model_; }

    DiameterAssignment diameters(std::span<const std::size_t> genome) const {
        check_genome(genome);
        DiameterAssignment d(genome.size());
        for (std::size_t i = 0; i < genome.size(); ++i) d[i] = catalog_.diameter(genome[i]);
        return d;
    }

    Evaluation evaluate_full(std::span<const std::size_t> genome) const {
        Evaluation e;
        e.diameters = diameters(genome);
        e.state = model_.simulate(e.diameters, params_);
        e.cost = network_cost(e.diameters, lengths_, catalog_);
        e.report = evaluate_constraints(e.state, limits_);
        e.candidate = {Genome(genome.begin(), genome.end()), e.cost.total, e.report.feasible, e.report.violation};
        return e;
    }

    Candidate evaluate(std::span<const std::size_t> genome) const { return std::move(evaluate_full(genome).candidate); }

private:
    void check_genome(std::span<const std::size_t> genome) const {
        if (genome.size() != lengths_.size())
            throw DimensionError("genome has " + std::to_string(genome.size()) + " genes for " +
                                 std::to_string(lengths_.size()) + " pipes");
        for (auto g : genome)
            if (g >= catalog_.size()) throw DomainError("gene " + std::to_string(g) + " outside catalog");
    }

    HydraulicModel model_;
    std::vector<double> lengths_;
    PipeCatalog catalog_;
    DesignLimits limits_;
    HydraulicParams params_;
};

} // namespace treenet
