#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "treenet/cost.hpp"
#include "treenet/feasibility.hpp"
#include "treenet/hbmo.hpp"
#include "treenet/hydraulics.hpp"
#include "treenet/io.hpp"
#include "treenet/network.hpp"
#include "treenet/oracle.hpp"
#include "treenet/problem.hpp"

namespace fs = std::filesystem;
using namespace treenet;

namespace {

enum ExitCode : int {
    kOk = 0,
    kUsage = 1,
    kParseError = 2,
    kValidationError = 3,
    kInfeasible = 4,
    kBudgetExceeded = 5,
    kVerifyFailed = 6,
    kMissingFile = 7,
};

struct CommonOptions {
    std::string network;
    std::string catalog;
    std::string config;
    std::optional<std::uint64_t> seed;
    std::string out = ".";
    std::string precision = "report";

    Precision report_precision() const { return precision == "full" ? Precision::Full : Precision::Report; }
};

RunConfig load_config(const CommonOptions& opt) {
    RunConfig cfg = opt.config.empty() ? RunConfig{} : parse_config(read_file(opt.config));
    if (opt.seed) cfg.hbmo.seed = *opt.seed;
    return cfg;
}

void require(const std::string& value, const char* flag) {
    if (value.empty()) throw CLI::RequiredError(flag);
}

int cmd_simulate(const CommonOptions& opt, const std::string& diameters_path) {
    require(opt.network, "--network");
    require(diameters_path, "--diameters");
    const auto net = parse_network(read_file(opt.network));
    const auto cfg = load_config(opt);
    const auto diameters = parse_diameters(read_file(diameters_path), net);
    const auto state = simulate(net, diameters, cfg.hydraulics);
    const auto report = evaluate_constraints(state, cfg.limits);

    const fs::path out(opt.out);
    write_file(out / "pipes.csv", format_pipe_report(net, diameters, state, report, opt.report_precision()));
    write_file(out / "nodes.csv", format_node_report(net, state, report, opt.report_precision()));
    std::cout << "feasible: " << (report.feasible ? "yes" : "no") << "\n"
              << "violation: " << detail::format_double(report.violation) << "\n";
    if (!opt.catalog.empty()) {
        const auto catalog = parse_catalog(read_file(opt.catalog));
        std::printf("cost: %.4f\n", network_cost(diameters, net.lengths(), catalog).total);
    }
    std::cout << "wrote " << (out / "pipes.csv").string() << " and " << (out / "nodes.csv").string() << "\n";
    return kOk;
}

std::string summary_csv(const Evaluation& best, std::size_t evaluations, const char* reason) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.4f", best.candidate.cost);
    std::string s = "key,value\n";
    s += std::string("cost,") + buf + "\n";
    s += std::string("feasible,") + (best.report.feasible ? "yes" : "no") + "\n";
    s += "violation," + detail::format_double(best.report.violation) + "\n";
    s += "evaluations," + std::to_string(evaluations) + "\n";
    s += std::string("stop_reason,") + reason + "\n";
    return s;
}

int cmd_optimize(const CommonOptions& opt) {
    require(opt.network, "--network");
    require(opt.catalog, "--catalog");
    const auto net = parse_network(read_file(opt.network));
    const auto cfg = load_config(opt);
    const DesignProblem problem(net, parse_catalog(read_file(opt.catalog)), cfg.limits, cfg.hydraulics);
    const auto result = optimize(problem, cfg.hbmo);

    const fs::path out(opt.out);
    const auto p = opt.report_precision();
    write_file(out / "solution.csv", format_diameters(net, result.best.diameters));
    write_file(out / "summary.csv", summary_csv(result.best, result.history.evaluations, to_string(result.history.reason)));
    write_file(out / "pipes.csv", format_pipe_report(net, result.best.diameters, result.best.state, result.best.report, p));
    write_file(out / "nodes.csv", format_node_report(net, result.best.state, result.best.report, p));
    write_file(out / "history.csv", format_history(result.history, problem.catalog(), p));

    std::printf("seed: %llu\ncost: %.4f\nfeasible: %s\nevaluations: %zu\n",
                static_cast<unsigned long long>(cfg.hbmo.seed), result.best.candidate.cost,
                result.feasible() ? "yes" : "no", result.history.evaluations);
    if (!result.feasible()) {
        std::cerr << "no feasible design found; best infeasible design written\n";
        return kInfeasible;
    }
    return kOk;
}

int cmd_exhaustive(const CommonOptions& opt) {
    require(opt.network, "--network");
    require(opt.catalog, "--catalog");
    const auto net = parse_network(read_file(opt.network));
    const auto cfg = load_config(opt);
    const DesignProblem problem(net, parse_catalog(read_file(opt.catalog)), cfg.limits, cfg.hydraulics);
    const auto best = exhaustive_optimize(problem, cfg.budget);
    const auto full = problem.evaluate_full(best.genome);
    const auto space = design_space_size(problem.pipe_count(), problem.catalog_size());

    const fs::path out(opt.out);
    write_file(out / "optimum.csv", format_diameters(net, full.diameters));
    write_file(out / "summary.csv", summary_csv(full, static_cast<std::size_t>(space), "enumerated"));
    std::printf("combinations: %llu\ncost: %.4f\nfeasible: %s\n", static_cast<unsigned long long>(space),
                full.candidate.cost, full.report.feasible ? "yes" : "no");
    return full.report.feasible ? kOk : kInfeasible;
}

std::vector<double> parse_diameter_list(const std::string& text) {
    std::vector<double> out;
    for (auto part : detail::split_on(text, ',')) {
        if (part.empty()) continue;
        out.push_back(detail::parse_double(part, 0, "diameter"));
    }
    if (out.empty()) throw ParseError(0, "no diameters given");
    return out;
}

int cmd_interpolate(const CommonOptions& opt, const std::string& table_path, const std::string& diameters) {
    require(table_path, "--table");
    require(diameters, "--diameters");
    const auto table = parse_cost_table(read_file(table_path));
    const auto catalog = build_catalog(table, parse_diameter_list(diameters));
    const auto text = serialize_catalog(catalog, opt.precision == "full" ? -1 : 4);
    write_file(fs::path(opt.out) / "catalog.txt", text);
    std::cout << text;
    return kOk;
}

struct Check {
    std::string name;
    bool pass = false;
    double max_deviation = 0.0;
    std::string detail;
};

void print_check(const Check& c) {
    std::printf("%-36s %s  max deviation %.6g%s%s\n", c.name.c_str(), c.pass ? "PASS" : "FAIL", c.max_deviation,
                c.detail.empty() ? "" : "  ", c.detail.c_str());
}

int cmd_verify(const std::string& data_dir) {
    const fs::path dir = fs::path(data_dir) / "warapitiya";
    for (const char* f : {"network.txt", "cost_table.txt", "catalog.txt", "config.txt", "diameters_hbmo.csv",
                          "diameters_nwsdb.csv", "golden_unit_costs.csv", "golden_costs.csv", "golden_gff.csv", "golden_residual_heads.csv"})
        if (!fs::exists(dir / f)) throw MissingFileError("missing fixture '" + (dir / f).string() + "'");

    const auto net = parse_network(read_file(dir / "network.txt"));
    const auto cfg = parse_config(read_file(dir / "config.txt"));
    const auto table = parse_cost_table(read_file(dir / "cost_table.txt"));
    const auto catalog = parse_catalog(read_file(dir / "catalog.txt"));
    const auto hbmo = parse_diameters(read_file(dir / "diameters_hbmo.csv"), net);
    const auto nwsdb = parse_diameters(read_file(dir / "diameters_nwsdb.csv"), net);

    std::vector<Check> checks;

    Check t4{"published unit costs", true};
    for (const auto& [diameter, published] : parse_id_value_csv(read_file(dir / "golden_unit_costs.csv"))) {
        const double d = detail::parse_double(diameter, 0, "diameter");
        const auto idx = catalog.index_of(d);
        if (!idx) throw ParseError(0, "catalog has no " + diameter + " mm entry");
        // both the fresh interpolation and the bundled catalog must agree with the published table
        const double dev = std::max(std::abs(lagrange_interpolate(table, d) - published),
                                    std::abs(catalog.unit_cost(*idx) - published));
        t4.max_deviation = std::max(t4.max_deviation, dev);
        if (dev > 1e-3) t4.pass = false;
    }
    checks.push_back(t4);

    Check t5{"published design totals", true};
    for (const auto& [name, total] : parse_id_value_csv(read_file(dir / "golden_costs.csv"))) {
        const auto& d = name == "hbmo" ? hbmo : nwsdb;
        const double dev = std::abs(network_cost(d, net.lengths(), catalog).total - total);
        t5.max_deviation = std::max(t5.max_deviation, dev);
        if (dev > 1.0) t5.pass = false;
    }
    checks.push_back(t5);

    const auto state = simulate(net, hbmo, cfg.hydraulics);

    auto compare = [&](Check c, const fs::path& golden, const std::vector<double>& values, double tol, auto limit_ok,
                       bool by_pipe) {
        c.pass = true;
        std::string worst;
        for (const auto& [id, expected] : parse_id_value_csv(read_file(golden))) {
            const auto idx = by_pipe ? net.pipe_index(id) : net.node_index(id);
            if (!idx) throw ParseError(0, "golden file names unknown element '" + id + "'");
            const double v = values[*idx];
            const double dev = std::abs(v - expected);
            if (dev > c.max_deviation) {
                c.max_deviation = dev;
                worst = id;
            }
            if (dev > tol || !limit_ok(v)) {
                c.pass = false;
                char buf[128];
                std::snprintf(buf, sizeof(buf), "%s%s computed %.6f published %.4f", c.detail.empty() ? "" : "; ",
                              id.c_str(), v, expected);
                c.detail += buf;
            }
        }
        if (c.pass && !worst.empty()) c.detail = "at " + worst;
        return c;
    };
    checks.push_back(compare(Check{"published pipe gradients"}, dir / "golden_gff.csv",
                             state.friction_fitting_gradients, 1e-4,
                             [&](double g) { return g <= cfg.limits.max_loss_gradient; }, true));
    checks.push_back(compare(Check{"published residual heads"}, dir / "golden_residual_heads.csv",
                             state.residual_heads, 1e-2,
                             [&](double h) { return h >= cfg.limits.min_residual_head; }, false));

    bool all = true;
    for (const auto& c : checks) {
        print_check(c);
        all = all && c.pass;
    }
    std::printf("%s\n", all ? "all checks passed" : "verification FAILED");
    return all ? kOk : kVerifyFailed;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Branched water network simulation and least-cost pipe sizing"};
    app.require_subcommand(1);

    CommonOptions opt;
    auto add_common = [&](CLI::App* sub, bool seeded) {
        sub->add_option("--network", opt.network, "Network file");
        sub->add_option("--catalog", opt.catalog, "Pipe catalog file (diameter_mm unit_cost)");
        sub->add_option("--config", opt.config, "Config file (key = value)");
        if (seeded) sub->add_option("--seed", opt.seed, "Random seed (overrides config)");
        sub->add_option("--out", opt.out, "Output directory")->capture_default_str();
        sub->add_option("--precision", opt.precision, "Number formatting in reports")
            ->check(CLI::IsMember({"report", "full"}))
            ->capture_default_str();
    };

    std::string diameters_file;
    auto* sim = app.add_subcommand("simulate", "Run the hydraulic kernel for one diameter assignment");
    add_common(sim, false);
    sim->add_option("--diameters", diameters_file, "CSV pipe_id,diameter_mm")->required();

    auto* opt_cmd = app.add_subcommand("optimize", "Search least-cost feasible diameters (honey-bee mating)");
    add_common(opt_cmd, true);

    auto* exh = app.add_subcommand("exhaustive", "Enumerate every design (small networks only)");
    add_common(exh, false);

    std::string table_path;
    std::string diameter_list;
    auto* interp = app.add_subcommand("interpolate-costs", "Interpolate unit costs for commercial diameters");
    interp->add_option("--table", table_path, "Base cost table (diameter_mm unit_cost)")->required();
    interp->add_option("--diameters", diameter_list, "Comma-separated diameters in mm")->required();
    interp->add_option("--out", opt.out, "Output directory")->capture_default_str();
    interp->add_option("--precision", opt.precision, "report = 4 decimals, full = round-trip")
        ->check(CLI::IsMember({"report", "full"}))
        ->capture_default_str();

    std::string data_dir = TREENET_DATA_DIR;
    auto* ver = app.add_subcommand("verify", "Check the bundled case-study data against published values");
    ver->add_option("--data", data_dir, "Dataset root")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kOk : kUsage;
    }

    try {
        if (*sim) return cmd_simulate(opt, diameters_file);
        if (*opt_cmd) return cmd_optimize(opt);
        if (*exh) return cmd_exhaustive(opt);
        if (*interp) return cmd_interpolate(opt, table_path, diameter_list);
        if (*ver) return cmd_verify(data_dir);
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kParseError;
    } catch (const ValidationError& e) {
        std::cerr << "invalid network: " << e.what() << "\n";
        return kValidationError;
    } catch (const DimensionError& e) {
        std::cerr << "size mismatch: " << e.what() << "\n";
        return kValidationError;
    } catch (const DomainError& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return kValidationError;
    } catch (const BudgetExceeded& e) {
        std::cerr << "refused: " << e.what() << "\n";
        return kBudgetExceeded;
    } catch (const MissingFileError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kMissingFile;
    } catch (const CLI::RequiredError& e) {
        std::cerr << "missing option " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}
