#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "treenet/detail/text.hpp"
#include "treenet/errors.hpp"

namespace treenet {

struct ReservoirRecord {
    std::string id;
    double elevation = 0.0; // m above MSL

    bool operator==(const ReservoirRecord&) const = default;
};

struct NodeRecord {
    std::string id;
    double elevation = 0.0; // m above MSL
    double demand = 0.0;    // m^3/day

    bool operator==(const NodeRecord&) const = default;
};

struct PipeRecord {
    std::string id;
    std::string upstream;
    std::string downstream;
    double length = 0.0; // m

    bool operator==(const PipeRecord&) const = default;
};

/// Unvalidated network description, exactly as read from a file or assembled by hand.
struct NetworkRecords {
    std::optional<ReservoirRecord> reservoir;
    std::vector<NodeRecord> nodes;
    std::vector<PipeRecord> pipes;
};

struct ValidationVerdict {
    ViolationKind kind = ViolationKind::None;
    std::string message;

    bool ok() const noexcept { return kind == ViolationKind::None; }
    explicit operator bool() const noexcept { return ok(); }
};

/// Marks the reservoir wherever a node index is expected.
inline constexpr std::size_t kReservoir = std::numeric_limits<std::size_t>::max();

namespace detail {

struct DisjointSets {
    std::vector<std::size_t> parent;

    explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }

    std::size_t find(std::size_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }

    bool unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent[b] = a;
        return true;
    }
};

} // namespace detail

/// Checks that the records describe a tree rooted at the reservoir with edges directed away
/// from it. Reports the first violation found; structural problems (ids, values) are checked
/// before topology, and topology in the order cycle, multiple incoming, roots/disconnection.
inline ValidationVerdict validate_tree(const NetworkRecords& records) {
    auto fail = [](ViolationKind kind, std::string msg) { return ValidationVerdict{kind, std::move(msg)}; };

    if (!records.reservoir) return fail(ViolationKind::NoReservoir, "network has no reservoir");
    const auto& reservoir = *records.reservoir;
    if (!std::isfinite(reservoir.elevation))
        return fail(ViolationKind::BadValue, "reservoir elevation is not finite");
    if (records.nodes.empty()) return fail(ViolationKind::NoNodes, "network has no demand nodes");

    // vertex 0 is the reservoir, vertex k + 1 is nodes[k]
    std::unordered_map<std::string_view, std::size_t> vertex;
    vertex.emplace(reservoir.id, 0);
    for (std::size_t k = 0; k < records.nodes.size(); ++k) {
        const auto& node = records.nodes[k];
        if (!vertex.emplace(node.id, k + 1).second)
            return fail(ViolationKind::DuplicateId, "node id '" + node.id + "' is used twice");
        if (!std::isfinite(node.elevation))
            return fail(ViolationKind::BadValue, "node '" + node.id + "' elevation is not finite");
        if (!(node.demand >= 0.0) || !std::isfinite(node.demand))
            return fail(ViolationKind::BadValue, "node '" + node.id + "' demand must be >= 0");
    }

    std::unordered_map<std::string_view, std::size_t> pipe_ids;
    for (const auto& pipe : records.pipes) {
        if (!pipe_ids.emplace(pipe.id, 0).second)
            return fail(ViolationKind::DuplicateId, "pipe id '" + pipe.id + "' is used twice");
        if (!vertex.contains(pipe.upstream))
            return fail(ViolationKind::UnknownNode, "pipe '" + pipe.id + "' starts at unknown node '" + pipe.upstream + "'");
        if (!vertex.contains(pipe.downstream))
            return fail(ViolationKind::UnknownNode, "pipe '" + pipe.id + "' ends at unknown node '" + pipe.downstream + "'");
        if (pipe.upstream == pipe.downstream)
            return fail(ViolationKind::SelfLoop, "pipe '" + pipe.id + "' connects '" + pipe.upstream + "' to itself");
        if (!(pipe.length > 0.0) || !std::isfinite(pipe.length))
            return fail(ViolationKind::BadValue, "pipe '" + pipe.id + "' length must be > 0");
        if (pipe.downstream == reservoir.id)
            return fail(ViolationKind::ReservoirInflow, "pipe '" + pipe.id + "' flows into the reservoir");
    }

    const std::size_t vertices = records.nodes.size() + 1;
    detail::DisjointSets sets(vertices);
    for (const auto& pipe : records.pipes) {
        if (!sets.unite(vertex.at(pipe.upstream), vertex.at(pipe.downstream)))
            return fail(ViolationKind::Cycle, "pipe '" + pipe.id + "' closes a loop");
    }

    std::vector<std::size_t> incoming(vertices, 0);
    std::vector<std::size_t> degree(vertices, 0);
    for (const auto& pipe : records.pipes) {
        const auto down = vertex.at(pipe.downstream);
        if (++incoming[down] > 1)
            return fail(ViolationKind::MultipleIncoming, "node '" + pipe.downstream + "' is fed by more than one pipe");
        ++degree[down];
        ++degree[vertex.at(pipe.upstream)];
    }

    for (std::size_t k = 0; k < records.nodes.size(); ++k) {
        if (incoming[k + 1] == 0) {
            const auto& id = records.nodes[k].id;
            if (degree[k + 1] == 0)
                return fail(ViolationKind::Disconnected, "node '" + id + "' has no pipes");
            return fail(ViolationKind::MultipleRoots, "node '" + id + "' has no incoming pipe");
        }
    }
    return {};
}

/// Validated rooted tree in canonical numbering: node order is preserved from the input, and
/// pipe i is the unique pipe terminating at node i (so there are as many pipes as nodes).
/// Immutable once built.
class TreeNetwork {
public:
    /// The empty network (no reservoir). Only useful as a placeholder.
    TreeNetwork() = default;

    /// Validates and canonicalizes; throws ValidationError on the first violation.
    static TreeNetwork from_records(NetworkRecords records) {
        if (auto verdict = validate_tree(records); !verdict)
            throw ValidationError(verdict.kind, verdict.message);

        TreeNetwork net;
        net.reservoir_ = std::move(*records.reservoir);
        net.nodes_ = std::move(records.nodes);

        std::unordered_map<std::string, std::size_t> index;
        for (std::size_t j = 0; j < net.nodes_.size(); ++j) index.emplace(net.nodes_[j].id, j);

        const std::size_t n = net.nodes_.size();
        net.pipes_.resize(n);
        net.upstream_.assign(n, kReservoir);
        net.children_.assign(n, {});
        for (auto& pipe : records.pipes) {
            const auto down = index.at(pipe.downstream);
            const auto up = pipe.upstream == net.reservoir_->id ? kReservoir : index.at(pipe.upstream);
            net.upstream_[down] = up;
            net.pipes_[down] = std::move(pipe);
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (net.upstream_[i] == kReservoir)
                net.root_pipes_.push_back(i);
            else
                net.children_[net.upstream_[i]].push_back(i);
        }

        net.preorder_.reserve(n);
        std::vector<std::size_t> stack(net.root_pipes_.rbegin(), net.root_pipes_.rend());
        while (!stack.empty()) {
            const auto v = stack.back();
            stack.pop_back();
            net.preorder_.push_back(v);
            const auto& kids = net.children_[v];
            stack.insert(stack.end(), kids.rbegin(), kids.rend());
        }
        return net;
    }

    bool empty() const noexcept { return !reservoir_.has_value(); }

    const ReservoirRecord& reservoir() const {
        if (!reservoir_) throw ValidationError(ViolationKind::NoReservoir, "network has no reservoir");
        return *reservoir_;
    }

    std::span<const NodeRecord> nodes() const noexcept { return nodes_; }
    std::span<const PipeRecord> pipes() const noexcept { return pipes_; }
    std::size_t node_count() const noexcept { return nodes_.size(); }
    std::size_t pipe_count() const noexcept { return pipes_.size(); }

    /// Node the pipe leaves from; kReservoir for pipes fed directly by the reservoir.
    std::size_t upstream_node(std::size_t pipe) const { return upstream_.at(pipe); }

    /// Pipes leaving a node. Under canonical numbering these double as the child node indices.
    std::span<const std::size_t> child_pipes(std::size_t node) const { return children_.at(node); }
    std::span<const std::size_t> root_pipes() const noexcept { return root_pipes_; }

    /// Every node appears after its parent.
    std::span<const std::size_t> preorder() const noexcept { return preorder_; }

    std::optional<std::size_t> node_index(std::string_view id) const {
        for (std::size_t j = 0; j < nodes_.size(); ++j)
            if (nodes_[j].id == id) return j;
        return std::nullopt;
    }

    std::optional<std::size_t> pipe_index(std::string_view id) const {
        for (std::size_t i = 0; i < pipes_.size(); ++i)
            if (pipes_[i].id == id) return i;
        return std::nullopt;
    }

    std::vector<double> demands() const { return project(nodes_, &NodeRecord::demand); }
    std::vector<double> elevations() const { return project(nodes_, &NodeRecord::elevation); }
    std::vector<double> lengths() const { return project(pipes_, &PipeRecord::length); }

    bool operator==(const TreeNetwork& other) const {
        return reservoir_ == other.reservoir_ && nodes_ == other.nodes_ && pipes_ == other.pipes_;
    }

private:
    template <typename Rec>
    static std::vector<double> project(const std::vector<Rec>& recs, double Rec::*field) {
        std::vector<double> out;
        out.reserve(recs.size());
        for (const auto& r : recs) out.push_back(r.*field);
        return out;
    }

    std::optional<ReservoirRecord> reservoir_;
    std::vector<NodeRecord> nodes_;
    std::vector<PipeRecord> pipes_;
    std::vector<std::size_t> upstream_;
    std::vector<std::vector<std::size_t>> children_;
    std::vector<std::size_t> root_pipes_;
    std::vector<std::size_t> preorder_;
};

/// Nodes supplied through `pipe`: its own downstream node plus that node's whole subtree.
/// Returned in ascending index order.
inline std::vector<std::size_t> downstream_nodes(const TreeNetwork& net, std::size_t pipe) {
    if (pipe >= net.pipe_count())
        throw std::out_of_range("pipe index " + std::to_string(pipe) + " out of range");
    std::vector<std::size_t> out;
    std::vector<std::size_t> stack{pipe};
    while (!stack.empty()) {
        const auto v = stack.back();
        stack.pop_back();
        out.push_back(v);
        for (auto c : net.child_pipes(v)) stack.push_back(c);
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// Pipes on the unique reservoir-to-node path, reservoir end first.
inline std::vector<std::size_t> path_to_root(const TreeNetwork& net, std::size_t node) {
    if (node >= net.node_count())
        throw std::out_of_range("node index " + std::to_string(node) + " out of range");
    std::vector<std::size_t> path;
    for (auto v = node; v != kReservoir; v = net.upstream_node(v)) path.push_back(v);
    std::reverse(path.begin(), path.end());
    return path;
}

/// Parses the sectioned network format:
///
///     [reservoir]
///     id N0
///     elevation_m 506.0
///     [nodes]
///     N1 485.0 3.75          # id elevation_m demand_m3_per_day
///     [pipes]
///     P1 N0 N1 250           # id from_node to_node length_m
///
/// Throws ParseError for syntax problems and ValidationError if the result is not a tree.
inline TreeNetwork parse_network(std::string_view text) {
    enum class Section { None, Reservoir, Nodes, Pipes };
    Section section = Section::None;
    NetworkRecords records;
    std::optional<std::string> res_id;
    std::optional<double> res_elev;
    bool seen[3] = {false, false, false};

    detail::for_each_line(text, [&](std::size_t line, std::string_view content) {
        if (content.front() == '[') {
            Section next;
            int slot;
            if (content == "[reservoir]") { next = Section::Reservoir; slot = 0; }
            else if (content == "[nodes]") { next = Section::Nodes; slot = 1; }
            else if (content == "[pipes]") { next = Section::Pipes; slot = 2; }
            else throw ParseError(line, "unknown section header '" + std::string(content) + "'");
            if (seen[slot]) throw ParseError(line, "section " + std::string(content) + " repeated");
            if (static_cast<int>(next) != static_cast<int>(section) + 1)
                throw ParseError(line, "sections must appear in the order [reservoir], [nodes], [pipes]");
            seen[slot] = true;
            section = next;
            return;
        }
        const auto fields = detail::split_ws(content);
        switch (section) {
        case Section::None:
            throw ParseError(line, "content before the [reservoir] section");
        case Section::Reservoir:
            if (fields.size() != 2) throw ParseError(line, "expected 'key value' in [reservoir]");
            if (fields[0] == "id") {
                if (res_id) throw ParseError(line, "reservoir id given twice");
                res_id = std::string(fields[1]);
            } else if (fields[0] == "elevation_m") {
                if (res_elev) throw ParseError(line, "reservoir elevation given twice");
                res_elev = detail::parse_double(fields[1], line, "elevation_m");
            } else {
                throw ParseError(line, "unknown reservoir key '" + std::string(fields[0]) + "'");
            }
            return;
        case Section::Nodes:
            if (fields.size() != 3)
                throw ParseError(line, "expected 'id elevation_m demand_m3_per_day'");
            records.nodes.push_back({std::string(fields[0]),
                                     detail::parse_double(fields[1], line, "elevation_m"),
                                     detail::parse_double(fields[2], line, "demand_m3_per_day")});
            return;
        case Section::Pipes:
            if (fields.size() != 4) throw ParseError(line, "expected 'id from_node to_node length_m'");
            records.pipes.push_back({std::string(fields[0]), std::string(fields[1]), std::string(fields[2]),
                                     detail::parse_double(fields[3], line, "length_m")});
            return;
        }
    });

    if (!seen[0]) throw ParseError(0, "missing [reservoir] section");
    if (!res_id) throw ParseError(0, "reservoir section is missing 'id'");
    if (!res_elev) throw ParseError(0, "reservoir section is missing 'elevation_m'");
    if (!seen[1]) throw ParseError(0, "missing [nodes] section");
    if (!seen[2]) throw ParseError(0, "missing [pipes] section");
    records.reservoir = ReservoirRecord{*res_id, *res_elev};
    return TreeNetwork::from_records(std::move(records));
}

/// Writes the canonical form; numbers use the shortest round-tripping representation.
inline std::string serialize_network(const TreeNetwork& net) {
    const auto& res = net.reservoir();
    std::ostringstream out;
    out << "[reservoir]\n"
        << "id " << res.id << '\n'
        << "elevation_m " << detail::format_double(res.elevation) << '\n'
        << "\n[nodes]\n# id elevation_m demand_m3_per_day\n";
    for (const auto& n : net.nodes())
        out << n.id << ' ' << detail::format_double(n.elevation) << ' ' << detail::format_double(n.demand) << '\n';
    out << "\n[pipes]\n# id from_node to_node length_m\n";
    for (const auto& p : net.pipes())
        out << p.id << ' ' << p.upstream << ' ' << p.downstream << ' ' << detail::format_double(p.length) << '\n';
    return out.str();
}

} // namespace treenet
