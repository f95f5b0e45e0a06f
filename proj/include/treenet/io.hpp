#pragma once

// File formats shared by the command-line tool and the tests: run configuration, diameter
// assignments, and the CSV reports.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "treenet/cost.hpp"
#include "treenet/detail/text.hpp"
#include "treenet/errors.hpp"
#include "treenet/feasibility.hpp"
#include "treenet/hbmo.hpp"
#include "treenet/hydraulics.hpp"
#include "treenet/network.hpp"
#include "treenet/oracle.hpp"

namespace treenet {

class MissingFileError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw MissingFileError("cannot open '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_file(const std::filesystem::path& path, std::string_view content) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
    out << content;
}

struct RunConfig {
    DesignLimits limits;
    HydraulicParams hydraulics;
    HbmoParams hbmo;
    EnumerationBudget budget;
};

/// `key = value` lines; '#' comments. Unknown or repeated keys are errors.
inline RunConfig parse_config(std::string_view text) {
    RunConfig cfg;
    using Setter = std::function<void(std::string_view, std::size_t)>;
    auto real = [](double& dst, const char* key) {
        return Setter([&dst, key](std::string_view v, std::size_t line) { dst = detail::parse_double(v, line, key); });
    };
    auto count = [](std::size_t& dst, const char* key) {
        return Setter([&dst, key](std::string_view v, std::size_t line) {
            dst = static_cast<std::size_t>(detail::parse_u64(v, line, key));
        });
    };
    std::map<std::string, Setter, std::less<>> keys{
        {"min_residual_head_m", real(cfg.limits.min_residual_head, "min_residual_head_m")},
        {"max_loss_gradient", real(cfg.limits.max_loss_gradient, "max_loss_gradient")},
        {"hazen_williams_coeff", real(cfg.hydraulics.hazen_williams, "hazen_williams_coeff")},
        {"fitting_loss_coeff", real(cfg.hydraulics.fitting_loss, "fitting_loss_coeff")},
        {"flow_exponent", real(cfg.hydraulics.flow_exponent, "flow_exponent")},
        {"drone_count", count(cfg.hbmo.drone_count, "drone_count")},
        {"spermatheca_capacity", count(cfg.hbmo.spermatheca_capacity, "spermatheca_capacity")},
        {"brood_count", count(cfg.hbmo.brood_count, "brood_count")},
        {"mating_flights", count(cfg.hbmo.mating_flights, "mating_flights")},
        {"speed_initial_min", real(cfg.hbmo.speed_initial_min, "speed_initial_min")},
        {"speed_initial_max", real(cfg.hbmo.speed_initial_max, "speed_initial_max")},
        {"speed_decay", real(cfg.hbmo.speed_decay, "speed_decay")},
        {"speed_min", real(cfg.hbmo.speed_min, "speed_min")},
        {"crossover_queen_bias", real(cfg.hbmo.crossover_queen_bias, "crossover_queen_bias")},
        {"mutation_rate", real(cfg.hbmo.mutation_rate, "mutation_rate")},
        {"max_evaluations", count(cfg.hbmo.max_evaluations, "max_evaluations")},
        {"seed", Setter([&cfg](std::string_view v, std::size_t line) { cfg.hbmo.seed = detail::parse_u64(v, line, "seed"); })},
        {"max_combinations", Setter([&cfg](std::string_view v, std::size_t line) {
             cfg.budget.max_combinations = detail::parse_u64(v, line, "max_combinations");
         })},
    };
    std::map<std::string, std::size_t, std::less<>> seen;
    detail::for_each_line(text, [&](std::size_t line, std::string_view content) {
        const auto eq = content.find('=');
        if (eq == std::string_view::npos) throw ParseError(line, "expected 'key = value'");
        const auto key = detail::trim(content.substr(0, eq));
        const auto value = detail::trim(content.substr(eq + 1));
        const auto it = keys.find(key);
        if (it == keys.end()) throw ParseError(line, "unknown config key '" + std::string(key) + "'");
        if (!seen.emplace(std::string(key), line).second)
            throw ParseError(line, "config key '" + std::string(key) + "' given twice");
        if (value.empty()) throw ParseError(line, "missing value for '" + std::string(key) + "'");
        it->second(value, line);
    });
    cfg.limits.check();
    cfg.hydraulics.check();
    cfg.hbmo.check();
    if (cfg.budget.max_combinations == 0) throw DomainError("max_combinations must be positive");
    return cfg;
}

/// `pipe_id,diameter_mm` CSV with a header row; returned in the network's canonical pipe order.
inline DiameterAssignment parse_diameters(std::string_view text, const TreeNetwork& net) {
    DiameterAssignment out(net.pipe_count(), 0.0);
    std::vector<bool> given(net.pipe_count(), false);
    std::size_t rows = 0;
    bool header = false;
    detail::for_each_line(text, [&](std::size_t line, std::string_view content) {
        const auto f = detail::split_on(content, ',');
        if (f.size() != 2) throw ParseError(line, "expected 'pipe_id,diameter_mm'");
        if (!header) {
            if (f[0] != "pipe_id" || f[1] != "diameter_mm")
                throw ParseError(line, "expected header 'pipe_id,diameter_mm'");
            header = true;
            return;
        }
        ++rows;
        const auto idx = net.pipe_index(f[0]);
        if (!idx) throw ParseError(line, "unknown pipe '" + std::string(f[0]) + "'");
        if (given[*idx]) throw ParseError(line, "pipe '" + std::string(f[0]) + "' listed twice");
        const double d = detail::parse_double(f[1], line, "diameter_mm");
        if (!(d > 0.0)) throw ParseError(line, "diameter must be > 0");
        out[*idx] = d;
        given[*idx] = true;
    });
    if (!header) throw ParseError(0, "diameters file is empty");
    if (rows != net.pipe_count())
        throw DimensionError("diameters file lists " + std::to_string(rows) + " pipes but the network has " +
                             std::to_string(net.pipe_count()));
    return out;
}

inline std::string format_diameters(const TreeNetwork& net, std::span<const double> diameters) {
    std::ostringstream out;
    out << "pipe_id,diameter_mm\n";
    for (std::size_t i = 0; i < net.pipe_count(); ++i)
        out << net.pipes()[i].id << ',' << detail::format_double(diameters[i]) << '\n';
    return out.str();
}

enum class Precision { Report, Full };

namespace detail {

inline std::string fmt_value(double v, Precision p) {
    if (p == Precision::Full) return format_double(v);
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.4f", v);
    std::string s(buf);
    if (s == "-0.0000") s = "0.0000";
    return s;
}

inline const char* yes_no(bool b) { return b ? "yes" : "no"; }

} // namespace detail

inline std::string format_pipe_report(const TreeNetwork& net, std::span<const double> diameters,
                                      const HydraulicState& state, const FeasibilityReport& report,
                                      Precision p = Precision::Report) {
    std::ostringstream out;
    out << "pipe_id,diameter_mm,flow_m3_per_day,g_ff_m_per_m,satisfied\n";
    for (std::size_t i = 0; i < net.pipe_count(); ++i)
        out << net.pipes()[i].id << ',' << detail::format_double(diameters[i]) << ','
            << detail::fmt_value(state.flows[i], p) << ',' << detail::fmt_value(state.friction_fitting_gradients[i], p)
            << ',' << detail::yes_no(report.per_pipe[i].satisfied) << '\n';
    return out.str();
}

inline std::string format_node_report(const TreeNetwork& net, const HydraulicState& state,
                                      const FeasibilityReport& report, Precision p = Precision::Report) {
    std::ostringstream out;
    out << "node_id,head_m,residual_head_m,satisfied\n";
    for (std::size_t j = 0; j < net.node_count(); ++j)
        out << net.nodes()[j].id << ',' << detail::fmt_value(state.nodal_heads[j], p) << ','
            << detail::fmt_value(state.residual_heads[j], p) << ',' << detail::yes_no(report.per_node[j].satisfied)
            << '\n';
    return out.str();
}

inline std::string format_history(const RunHistory& history, const PipeCatalog& catalog, Precision p) {
    std::ostringstream out;
    out << "generation,evaluations,cost,feasible,violation,diameters_mm\n";
    for (const auto& g : history.generations) {
        out << g.generation << ',' << g.evaluations << ',' << detail::fmt_value(g.best.cost, p) << ','
            << detail::yes_no(g.best.feasible) << ',' << detail::fmt_value(g.best.violation, p) << ',';
        for (std::size_t i = 0; i < g.best.genome.size(); ++i)
            out << (i ? ";" : "") << detail::format_double(catalog.diameter(g.best.genome[i]));
        out << '\n';
    }
    return out.str();
}

/// Reads a two-column `id,value` CSV with a header row (the golden table fixtures).
inline std::vector<std::pair<std::string, double>> parse_id_value_csv(std::string_view text) {
    std::vector<std::pair<std::string, double>> rows;
    bool header = false;
    detail::for_each_line(text, [&](std::size_t line, std::string_view content) {
        const auto f = detail::split_on(content, ',');
        if (f.size() != 2) throw ParseError(line, "expected two comma-separated columns");
        if (!header) {
            header = true;
            return;
        }
        rows.emplace_back(std::string(f[0]), detail::parse_double(f[1], line, "value"));
    });
    return rows;
}

} // namespace treenet
