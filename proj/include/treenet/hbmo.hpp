#pragma once

// Honey-bee mating optimization over discrete diameter genomes.
//
// The queen is the best design found so far. Each generation a drone pool is formed (half
// random genomes, half worker-mutated copies of the queen), the queen flies a mating flight
// that fills her spermatheca with drones accepted by simulated-annealing style probability
// exp(-|f_queen - f_drone| / S), and broods are bred from queen x sperm then improved by
// workers (mutation). Any evaluated design that beats the queen replaces her.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "treenet/errors.hpp"
#include "treenet/feasibility.hpp"
#include "treenet/problem.hpp"

namespace treenet {

using Rng = std::mt19937_64;

struct HbmoParams {
    std::size_t drone_count = 50;
    std::size_t spermatheca_capacity = 50;
    std::size_t brood_count = 50;
    std::size_t mating_flights = 500; // generations
    // initial speed is drawn from [min, max] x (fitness spread of the initial population)
    double speed_initial_min = 0.5;
    double speed_initial_max = 1.0;
    double speed_decay = 0.98;
    double speed_min = 0.01;
    double crossover_queen_bias = 0.5;
    double mutation_rate = -1.0; // per gene; negative selects 2 / pipe count
    std::size_t max_evaluations = 200000;
    std::uint64_t seed = 1;

    double effective_mutation_rate(std::size_t pipes) const {
        if (mutation_rate >= 0.0) return mutation_rate;
        return pipes == 0 ? 0.0 : std::min(1.0, 2.0 / static_cast<double>(pipes));
    }

    void check() const {
        auto prob = [](double p) { return p >= 0.0 && p <= 1.0; };
        if (drone_count == 0) throw DomainError("drone_count must be positive");
        if (spermatheca_capacity == 0) throw DomainError("spermatheca_capacity must be positive");
        if (spermatheca_capacity > drone_count) throw DomainError("spermatheca_capacity must not exceed drone_count");
        if (brood_count == 0) throw DomainError("brood_count must be positive");
        if (mating_flights == 0) throw DomainError("mating_flights must be positive");
        if (max_evaluations == 0) throw DomainError("max_evaluations must be positive");
        if (!(speed_initial_min > 0.0) || !(speed_initial_max >= speed_initial_min))
            throw DomainError("initial speed range must be positive and ordered");
        if (!(speed_decay > 0.0 && speed_decay < 1.0)) throw DomainError("speed_decay must lie in (0, 1)");
        if (!(speed_min > 0.0)) throw DomainError("speed_min must be positive");
        if (!prob(crossover_queen_bias)) throw DomainError("crossover_queen_bias must be a probability");
        if (mutation_rate > 1.0) throw DomainError("mutation_rate must be a probability");
    }
};

struct SpeedRange {
    double low = 0.5;
    double high = 1.0;
};

/// A genome paired with its scalarized fitness (lower is better).
struct ScoredGenome {
    Genome genome;
    double fitness = 0.0;
};

inline Genome random_genome(std::size_t pipes, std::size_t catalog_size, Rng& rng) {
    if (catalog_size == 0) throw DomainError("cannot draw a genome from an empty catalog");
    std::uniform_int_distribution<std::size_t> pick(0, catalog_size - 1);
    Genome g(pipes);
    for (auto& gene : g) gene = pick(rng);
    return g;
}

/// Runs one mating flight and returns the accepted drone genomes in acceptance order.
inline std::vector<Genome> mating_flight(const ScoredGenome& queen, std::span<const ScoredGenome> drones,
                                         SpeedRange speed_range, const HbmoParams& params, Rng& rng) {
    std::vector<Genome> spermatheca;
    if (drones.empty()) return spermatheca;
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    double speed = speed_range.low == speed_range.high
                       ? speed_range.low
                       : std::uniform_real_distribution<double>(speed_range.low, speed_range.high)(rng);
    for (const auto& drone : drones) {
        if (spermatheca.size() >= params.spermatheca_capacity || speed < params.speed_min) break;
        const double p = std::exp(-std::abs(queen.fitness - drone.fitness) / speed);
        if (unit(rng) < p) spermatheca.push_back(drone.genome);
        speed *= params.speed_decay;
    }
    return spermatheca;
}

/// Uniform crossover: each gene comes from the queen with probability `queen_bias`.
inline Genome breed(std::span<const std::size_t> queen, std::span<const std::size_t> sperm, double queen_bias,
                    Rng& rng) {
    if (queen.size() != sperm.size())
        throw DimensionError("breed: queen has " + std::to_string(queen.size()) + " genes, sperm has " +
                             std::to_string(sperm.size()));
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    Genome child(queen.size());
    for (std::size_t i = 0; i < queen.size(); ++i) child[i] = unit(rng) < queen_bias ? queen[i] : sperm[i];
    return child;
}

/// Worker heuristic. Each gene mutates with probability `rate`; a mutation is, with equal
/// chance, a +-1 catalog step (clamped to the catalog) or a uniform redraw.
inline Genome mutate(Genome genome, double rate, std::size_t catalog_size, Rng& rng) {
    if (catalog_size <= 1 || rate <= 0.0) return genome;
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_int_distribution<std::size_t> pick(0, catalog_size - 1);
    for (auto& gene : genome) {
        if (!(unit(rng) < rate)) continue;
        if (unit(rng) < 0.5) {
            if (unit(rng) < 0.5)
                gene = gene == 0 ? 0 : gene - 1;
            else
                gene = std::min(gene + 1, catalog_size - 1);
        } else {
            gene = pick(rng);
        }
    }
    return genome;
}

enum class StopReason { Generations, EvaluationBudget, SingletonSpace };

inline const char* to_string(StopReason r) {
    switch (r) {
    case StopReason::Generations: return "generations";
    case StopReason::EvaluationBudget: return "evaluation_budget";
    case StopReason::SingletonSpace: return "singleton_space";
    }
    return "unknown";
}

struct GenerationRecord {
    std::size_t generation = 0;
    std::size_t evaluations = 0; // cumulative
    Candidate best;
};

struct RunHistory {
    std::vector<GenerationRecord> generations;
    std::size_t evaluations = 0;
    StopReason reason = StopReason::Generations;

    bool operator==(const RunHistory& o) const {
        if (evaluations != o.evaluations || reason != o.reason || generations.size() != o.generations.size())
            return false;
        for (std::size_t k = 0; k < generations.size(); ++k) {
            const auto& a = generations[k];
            const auto& b = o.generations[k];
            if (a.generation != b.generation || a.evaluations != b.evaluations || a.best.genome != b.best.genome ||
                a.best.cost != b.best.cost || a.best.feasible != b.best.feasible || a.best.violation != b.best.violation)
                return false;
        }
        return true;
    }
};

struct OptimizeResult {
    Evaluation best; // freshly re-evaluated, never cached
    RunHistory history;

    bool feasible() const noexcept { return best.report.feasible; }
};

/// Maps candidates to one scalar so acceptance distances work across feasibility classes:
/// feasible designs score their cost, infeasible ones (1 + violation) x reference cost, where the
/// reference is the worst feasible cost seen (or the initial population's highest cost).
class Scalarizer {
public:
    explicit Scalarizer(double reference) : reference_(reference) {}

    void observe(const Candidate& c) {
        if (!c.feasible) return;
        if (!seen_feasible_ || c.cost > worst_feasible_) worst_feasible_ = c.cost;
        seen_feasible_ = true;
    }

    double operator()(const Candidate& c) const {
        if (c.feasible) return c.cost;
        const double ref = seen_feasible_ ? worst_feasible_ : reference_;
        return (1.0 + c.violation) * ref;
    }

private:
    double reference_;
    double worst_feasible_ = 0.0;
    bool seen_feasible_ = false;
};

inline OptimizeResult optimize(const DesignProblem& problem, const HbmoParams& params) {
    params.check();
    const std::size_t pipes = problem.pipe_count();
    const std::size_t alphabet = problem.catalog_size();
    const double rate = params.effective_mutation_rate(pipes);

    Rng rng(params.seed);
    RunHistory history;

    if (alphabet == 1) {
        Genome only(pipes, 0);
        OptimizeResult result{problem.evaluate_full(only), {}};
        result.history.evaluations = 1;
        result.history.reason = StopReason::SingletonSpace;
        result.history.generations.push_back({0, 1, result.best.candidate});
        return result;
    }

    std::size_t evaluations = 0;
    auto budget_left = [&] { return evaluations < params.max_evaluations; };
    auto score = [&](const Genome& g) {
        ++evaluations;
        return problem.evaluate(g);
    };

    std::vector<Candidate> population;
    population.reserve(params.drone_count);
    while (population.size() < params.drone_count && budget_left())
        population.push_back(score(random_genome(pipes, alphabet, rng)));

    Candidate queen = *std::min_element(population.begin(), population.end(), better_than);

    double max_cost = 0.0;
    for (const auto& c : population) max_cost = std::max(max_cost, c.cost);
    Scalarizer scalarize(max_cost > 0.0 ? max_cost : 1.0);
    for (const auto& c : population) scalarize.observe(c);

    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (const auto& c : population) {
        const double f = scalarize(c);
        lo = std::min(lo, f);
        hi = std::max(hi, f);
    }
    const double spread = hi > lo ? hi - lo : 1.0;
    const SpeedRange speeds{params.speed_initial_min * spread, params.speed_initial_max * spread};

    auto consider = [&](Candidate c) {
        scalarize.observe(c);
        if (better_than(c, queen)) queen = std::move(c);
    };

    history.reason = StopReason::Generations;
    std::vector<ScoredGenome> drones;
    std::vector<Candidate> drone_candidates;
    for (std::size_t gen = 0; gen < params.mating_flights; ++gen) {
        if (!budget_left()) {
            history.reason = StopReason::EvaluationBudget;
            break;
        }

        drone_candidates.clear();
        for (std::size_t k = 0; k < params.drone_count && budget_left(); ++k) {
            Genome g = k % 2 == 0 ? random_genome(pipes, alphabet, rng) : mutate(queen.genome, rate, alphabet, rng);
            drone_candidates.push_back(score(g));
        }
        drones.clear();
        for (const auto& c : drone_candidates) drones.push_back({c.genome, scalarize(c)});
        for (auto& c : drone_candidates) consider(std::move(c));

        const ScoredGenome queen_scored{queen.genome, scalarize(queen)};
        const auto spermatheca = mating_flight(queen_scored, drones, speeds, params, rng);

        for (std::size_t b = 0; b < params.brood_count && budget_left(); ++b) {
            Genome child;
            if (spermatheca.empty()) {
                child = queen.genome;
            } else {
                std::uniform_int_distribution<std::size_t> pick(0, spermatheca.size() - 1);
                child = breed(queen.genome, spermatheca[pick(rng)], params.crossover_queen_bias, rng);
            }
            child = mutate(std::move(child), rate, alphabet, rng);
            consider(score(child));
        }

        history.generations.push_back({gen, evaluations, queen});
    }
    if (history.reason == StopReason::Generations && !budget_left() &&
        history.generations.size() < params.mating_flights)
        history.reason = StopReason::EvaluationBudget;
    history.evaluations = evaluations;

    return OptimizeResult{problem.evaluate_full(queen.genome), std::move(history)};
}

} // namespace treenet
