// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "properties.hpp"
#include "support.hpp"
#include "treenet/cost.hpp"
#include "treenet/feasibility.hpp"
#include "treenet/hbmo.hpp"
#include "treenet/hydraulics.hpp"
#include "treenet/oracle.hpp"

using namespace treenet;
using namespace treenet::testing;
using Clock = std::chrono::steady_clock;

namespace {

const std::vector<double> kCommercial = {55, 79, 97, 140, 198, 246};
const std::vector<double> kPublishedUnitCosts = {5.0259, 8.4781, 10.6801, 14.0679, 22.5046, 29.6739};
const std::vector<double> kPublishedGradients = {0.0040, 0.0014, 0.0004, 0.0034, 0.0003, 0.0000, 0.0011, 0.0019,
                                     0.0006, 0.0000, 0.0016, 0.0008, 0.0021, 0.0010, 0.0028, 0.0003,
                                     0.0005, 0.0000, 0.0002, 0.0001, 0.0004, 0.0027, 0.0004, 0.0028};
const std::vector<double> kPublishedResiduals = {20.0088, 29.7801, 49.4855, 44.2133, 49.1135, 54.4775, 44.0688, 24.1675,
                                     24.0770, 49.0731, 27.5114, 22.9846, 25.4312, 31.7940, 40.4496, 57.7719,
                                     53.9765, 29.7702, 52.8990, 50.8724, 52.7147, 29.1779, 48.9941, 51.7607};
const std::vector<double> kHbmoDesign = {198, 198, 198, 97, 79, 79, 79, 97, 79, 97, 55, 198,
                                         140, 140, 97, 97, 79, 97, 79, 79, 55, 79, 55, 55};
const std::vector<double> kNwsdbDesign = {246, 198, 198, 140, 79, 55, 79, 140, 79, 55, 79, 198,
                                          198, 140, 140, 79, 79, 55, 55, 55, 55, 97, 79, 79};

constexpr double kUnitCostTol = 1e-3;
constexpr double kCostTol = 1.0;
constexpr double kGradientTol = 1e-4;
constexpr double kResidualTol = 1e-2;
constexpr double kMaxGradient = 0.005;
constexpr double kMinResidual = 10.0;
constexpr double kBestKnownCost = 100172.1;
constexpr double kUtilityCost = 107588.1;
constexpr std::size_t kEvaluationCap = 200000;
constexpr std::size_t kPropertyCases = 100;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
    bool pass = true;
    std::string detail;

    void fail(const std::string& why) {
        pass = false;
        detail += (detail.empty() ? "" : "; ") + why;
    }
    void note(const std::string& what) { detail += (detail.empty() ? "" : "; ") + what; }
};

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
    char buf[256];
    std::snprintf(buf, sizeof(buf), f, a, b, c);
    return buf;
}

Outcome catalog_reproduction() {
    Outcome o;
    const auto table = load_cost_table();
    const auto t0 = Clock::now();
    const auto catalog = build_catalog(table, kCommercial);
    const double elapsed = seconds_since(t0);
    double worst = 0.0;
    for (std::size_t k = 0; k < kCommercial.size(); ++k) {
        const double dev = std::abs(catalog.unit_cost(k) - kPublishedUnitCosts[k]);
        worst = std::max(worst, dev);
        if (dev > kUnitCostTol) o.fail(fmt("%g mm: %.6f vs %.4f", kCommercial[k], catalog.unit_cost(k), kPublishedUnitCosts[k]));
    }
    if (elapsed >= 0.1) o.fail(fmt("took %.3f s", elapsed));
    o.note(fmt("max deviation %.2e, %.2e s", worst, elapsed));
    return o;
}

Outcome cost_reproduction() {
    Outcome o;
    const auto net = load_network("warapitiya");
    const auto catalog = build_catalog(load_cost_table(), kCommercial);
    const auto t0 = Clock::now();
    const double hbmo = network_cost(kHbmoDesign, net.lengths(), catalog).total;
    const double nwsdb = network_cost(kNwsdbDesign, net.lengths(), catalog).total;
    const double elapsed = seconds_since(t0);
    if (std::abs(hbmo - 100172) > kCostTol) o.fail(fmt("optimized design costs %.3f", hbmo));
    if (std::abs(nwsdb - 107588) > kCostTol) o.fail(fmt("utility design costs %.3f", nwsdb));
    if (elapsed >= 0.1) o.fail(fmt("took %.3f s", elapsed));
    o.note(fmt("totals %.3f and %.3f", hbmo, nwsdb));
    return o;
}

Outcome gradient_reproduction() {
    Outcome o;
    const auto net = load_network("warapitiya");
    const HydraulicParams params{130, 1.15};
    const auto state = simulate(net, kHbmoDesign, params);

    constexpr int reps = 2000;
    const auto t0 = Clock::now();
    double sink = 0.0;
    for (int r = 0; r < reps; ++r) sink += simulate(net, kHbmoDesign, params).residual_heads[0];
    const double per_run = seconds_since(t0) / reps;
    (void)sink;

    double worst = 0.0;
    for (std::size_t i = 0; i < kPublishedGradients.size(); ++i) {
        const double g = state.friction_fitting_gradients[i];
        worst = std::max(worst, std::abs(g - kPublishedGradients[i]));
        if (std::abs(g - kPublishedGradients[i]) > kGradientTol)
            o.fail(fmt("P%g computed %.6f vs published %.4f", double(i + 1), g, kPublishedGradients[i]));
        if (g > kMaxGradient) o.fail(fmt("P%g gradient %.6f exceeds limit", double(i + 1), g));
    }
    if (per_run >= 1e-3) o.fail(fmt("simulation took %.3e s", per_run));
    o.note(fmt("max deviation %.2e, %.2e s per simulation", worst, per_run));
    return o;
}

Outcome residual_reproduction() {
    Outcome o;
    const auto net = load_network("warapitiya");
    const auto state = simulate(net, kHbmoDesign, HydraulicParams{130, 1.15});
    double worst = 0.0;
    for (std::size_t j = 0; j < kPublishedResiduals.size(); ++j) {
        const double h = state.residual_heads[j];
        worst = std::max(worst, std::abs(h - kPublishedResiduals[j]));
        if (std::abs(h - kPublishedResiduals[j]) > kResidualTol)
            o.fail(fmt("N%g computed %.4f vs published %.4f", double(j + 1), h, kPublishedResiduals[j]));
        if (h < kMinResidual) o.fail(fmt("N%g residual %.4f below minimum", double(j + 1), h));
    }
    o.note(fmt("max deviation %.2e m", worst));
    return o;
}

Outcome oracle_equality() {
    Outcome o;
    const DesignProblem problem(load_network("dummy6"), build_catalog(load_cost_table(), kCommercial),
                                DesignLimits{kMinResidual, kMaxGradient}, HydraulicParams{130, 1.15});
    const auto t0 = Clock::now();
    const auto truth = exhaustive_optimize(problem);
    const double elapsed = seconds_since(t0);

    std::optional<Candidate> best;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        HbmoParams p;
        p.seed = seed;
        auto r = optimize(problem, p);
        if (!best || better_than(r.best.candidate, *best)) best = r.best.candidate;
    }
    if (best->genome != truth.genome) o.fail(fmt("HBMO best %.4f vs enumerated %.4f", best->cost, truth.cost));
    if (elapsed >= 10.0) o.fail(fmt("enumeration took %.2f s", elapsed));
    o.note(fmt("optimum %.4f over 46656 designs in %.3f s", truth.cost, elapsed));
    return o;
}

Outcome warapitiya_target() {
    Outcome o;
    const DesignProblem problem(load_network("warapitiya"), build_catalog(load_cost_table(), kCommercial),
                                DesignLimits{kMinResidual, kMaxGradient}, HydraulicParams{130, 1.15});
    const auto t0 = Clock::now();
    double best = std::numeric_limits<double>::infinity();
    double worst_feasible = 0.0;
    int feasible_runs = 0;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        HbmoParams p;
        p.seed = seed;
        p.max_evaluations = kEvaluationCap;
        const auto r = optimize(problem, p);
        if (r.history.evaluations > kEvaluationCap) o.fail(fmt("seed %g used %g evaluations", double(seed), double(r.history.evaluations)));
        if (!r.feasible()) continue;
        ++feasible_runs;
        best = std::min(best, r.best.candidate.cost);
        worst_feasible = std::max(worst_feasible, r.best.candidate.cost);
        if (r.best.candidate.cost > kUtilityCost) o.fail(fmt("seed %g feasible cost %.4f", double(seed), r.best.candidate.cost));
    }
    const double elapsed = seconds_since(t0);
    if (feasible_runs == 0) o.fail("no feasible run");
    else if (best > kBestKnownCost) o.fail(fmt("best cost %.4f", best));
    if (elapsed >= 300.0) o.fail(fmt("took %.1f s", elapsed));
    o.note(fmt("best %.4f, worst feasible %.4f, ", best, worst_feasible) +
           fmt("%g/20 feasible, %.1f s", double(feasible_runs), elapsed));
    return o;
}

Outcome property_suites() {
    Outcome o;
    std::uint64_t seed = 777;
    for (const auto& prop : all_properties()) {
        const auto msg = run_property(prop.check, kPropertyCases, seed++);
        if (!msg.empty()) o.fail(std::string(prop.name) + ": " + msg);
    }
    o.note(std::to_string(all_properties().size()) + " suites x " + std::to_string(kPropertyCases) + " cases");
    return o;
}

} // namespace

int main() {
    struct Criterion {
        const char* label;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria{
        {"1 published unit costs", catalog_reproduction},
        {"2 published design totals", cost_reproduction},
        {"3 published pipe gradients", gradient_reproduction},
        {"4 published residual heads", residual_reproduction},
        {"5 HBMO equals exhaustive optimum (dummy6)", oracle_equality},
        {"6 Warapitiya best-known cost", warapitiya_target},
        {"7 property suites", property_suites},
    };
    int failures = 0;
    for (const auto& c : criteria) {
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o.fail(std::string("exception: ") + e.what());
        }
        std::printf("[%s] %-44s %s\n", o.pass ? "PASS" : "FAIL", c.label, o.detail.c_str());
        std::fflush(stdout);
        failures += o.pass ? 0 : 1;
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
