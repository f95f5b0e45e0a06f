#pragma once

// Fixtures and generators shared by the unit, property and acceptance suites.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "treenet/cost.hpp"
#include "treenet/io.hpp"
#include "treenet/network.hpp"

namespace treenet::testing {

inline std::filesystem::path data_dir() { return TREENET_DATA_DIR; }

inline TreeNetwork load_network(const std::string& dataset) {
    return parse_network(read_file(data_dir() / dataset / "network.txt"));
}

inline PipeCatalog load_catalog(const std::string& dataset) {
    return parse_catalog(read_file(data_dir() / dataset / "catalog.txt"));
}

inline CostTable load_cost_table() { return parse_cost_table(read_file(data_dir() / "warapitiya" / "cost_table.txt")); }

inline DiameterAssignment load_diameters(const TreeNetwork& net, const std::string& file) {
    return parse_diameters(read_file(data_dir() / "warapitiya" / file), net);
}

/// The six-node demonstration layout: N0 feeds N1 and N2, N1 feeds N3 and N4, N2 feeds N5
/// and N6. Pipe Pi ends at Ni.
inline NetworkRecords fig3_records(std::vector<double> demands = {1, 1, 1, 1, 1, 1},
                                   std::vector<double> elevations = {80, 82, 78, 84, 83, 86},
                                   std::vector<double> lengths = {300, 250, 400, 350, 280, 320}) {
    NetworkRecords r;
    r.reservoir = ReservoirRecord{"N0", 100.0};
    for (int j = 0; j < 6; ++j)
        r.nodes.push_back({"N" + std::to_string(j + 1), elevations[j], demands[j]});
    const char* up[] = {"N0", "N0", "N1", "N1", "N2", "N2"};
    for (int i = 0; i < 6; ++i)
        r.pipes.push_back({"P" + std::to_string(i + 1), up[i], "N" + std::to_string(i + 1), lengths[i]});
    return r;
}

inline TreeNetwork fig3(std::vector<double> demands = {1, 1, 1, 1, 1, 1}) {
    return TreeNetwork::from_records(fig3_records(std::move(demands)));
}

inline TreeNetwork single_pipe(double length = 100.0, double demand = 10.0) {
    NetworkRecords r;
    r.reservoir = ReservoirRecord{"N0", 50.0};
    r.nodes.push_back({"N1", 20.0, demand});
    r.pipes.push_back({"P1", "N0", "N1", length});
    return TreeNetwork::from_records(std::move(r));
}

/// N0 -> N1 -> ... -> Nn
inline TreeNetwork chain(std::size_t n) {
    NetworkRecords r;
    r.reservoir = ReservoirRecord{"N0", 100.0};
    for (std::size_t j = 1; j <= n; ++j) {
        r.nodes.push_back({"N" + std::to_string(j), 50.0, 10.0});
        r.pipes.push_back({"P" + std::to_string(j), "N" + std::to_string(j - 1), "N" + std::to_string(j), 100.0});
    }
    return TreeNetwork::from_records(std::move(r));
}

/// Random rooted tree with `n` demand nodes. Node and pipe listing orders are shuffled so
/// canonicalization is exercised; the parent of each node is drawn among earlier-created ones.
inline TreeNetwork random_tree(std::size_t n, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> elev(0.0, 60.0);
    std::uniform_real_distribution<double> demand(0.0, 200.0);
    std::uniform_real_distribution<double> length(10.0, 1500.0);
    std::bernoulli_distribution zero_demand(0.1);

    std::vector<std::size_t> label(n);
    for (std::size_t k = 0; k < n; ++k) label[k] = k + 1;
    std::shuffle(label.begin(), label.end(), rng);

    NetworkRecords r;
    r.reservoir = ReservoirRecord{"R", 120.0};
    std::vector<std::string> ids;
    for (std::size_t k = 0; k < n; ++k) ids.push_back("J" + std::to_string(label[k]));
    for (std::size_t k = 0; k < n; ++k) {
        std::uniform_int_distribution<std::size_t> parent(0, k); // 0 = reservoir
        const auto p = parent(rng);
        r.pipes.push_back({"L" + std::to_string(label[k]), p == 0 ? std::string("R") : ids[p - 1], ids[k], length(rng)});
        r.nodes.push_back({ids[k], elev(rng), zero_demand(rng) ? 0.0 : demand(rng)});
    }
    std::shuffle(r.nodes.begin(), r.nodes.end(), rng);
    std::shuffle(r.pipes.begin(), r.pipes.end(), rng);
    return TreeNetwork::from_records(std::move(r));
}

inline DiameterAssignment random_diameters(std::size_t n, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> d(40.0, 600.0);
    DiameterAssignment out(n);
    for (auto& x : out) x = d(rng);
    return out;
}

/// |a - b| / max(|a|, |b|); zero when both are zero.
inline double rel_diff(double a, double b) {
    const double scale = std::max(std::abs(a), std::abs(b));
    return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

} // namespace treenet::testing
