#pragma once

// Spanning-tree matrix hydraulics for branched networks.
//
// Two 0/1 transforms derived purely from the layout drive the whole computation:
//   flow transform  (pipes x nodes): Q = T_flow * D    (continuity)
//   head transform  (nodes x pipes): H = E0 - T_head * F (energy along each supply path)
// Under canonical numbering T_head is exactly the transpose of T_flow.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "treenet/errors.hpp"
#include "treenet/network.hpp"

namespace treenet {

using DiameterAssignment = std::vector<double>; // mm, one entry per pipe

inline constexpr double kSecondsPerDay = 86400.0;
inline constexpr double kHazenWilliamsFactor = 10.666;
inline constexpr double kDiameterExponent = 4.87;

struct HydraulicParams {
    double hazen_williams = 130.0; // C_HW
    double fitting_loss = 1.15;    // C_ft, multiplies the friction gradient
    double flow_exponent = 1.85;   // Hazen-Williams flow exponent

    void check() const {
        if (!(hazen_williams > 0.0)) throw DomainError("Hazen-Williams coefficient must be > 0");
        if (!(fitting_loss >= 1.0)) throw DomainError("fitting-loss coefficient must be >= 1");
        if (!(flow_exponent > 0.0)) throw DomainError("flow exponent must be > 0");
    }
};

/// Dense row-major 0/1 matrix.
class BinaryMatrix {
public:
    BinaryMatrix() = default;
    BinaryMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    std::uint8_t operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
    void set(std::size_t r, std::size_t c, bool v = true) { data_[r * cols_ + c] = v ? 1 : 0; }

    BinaryMatrix transpose() const {
        BinaryMatrix t(cols_, rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c) t.set(c, r, (*this)(r, c) != 0);
        return t;
    }

    std::vector<double> multiply(std::span<const double> x) const {
        if (x.size() != cols_)
            throw DimensionError("matrix has " + std::to_string(cols_) + " columns but vector has " +
                                 std::to_string(x.size()) + " entries");
        std::vector<double> y(rows_, 0.0);
        for (std::size_t r = 0; r < rows_; ++r) {
            double acc = 0.0;
            const auto* row = data_.data() + r * cols_;
            for (std::size_t c = 0; c < cols_; ++c)
                if (row[c]) acc += x[c];
            y[r] = acc;
        }
        return y;
    }

    bool operator==(const BinaryMatrix&) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<std::uint8_t> data_;
};

/// pipes x nodes; entry (i, j) is 1 iff node j is supplied through pipe i.
struct FlowTransform {
    BinaryMatrix matrix;
    bool operator==(const FlowTransform&) const = default;
};

/// nodes x pipes; entry (j, i) is 1 iff pipe i lies on node j's supply path.
struct HeadTransform {
    BinaryMatrix matrix;
    bool operator==(const HeadTransform&) const = default;
};

struct HydraulicState {
    std::vector<double> flows;                      // m^3/day per pipe
    std::vector<double> friction_gradients;         // m/m per pipe
    std::vector<double> friction_fitting_gradients; // m/m per pipe
    std::vector<double> pipe_head_losses;           // m per pipe
    std::vector<double> nodal_heads;                // m per node
    std::vector<double> residual_heads;             // m per node
};

namespace detail {

inline void require_same_size(std::size_t a, std::size_t b, const char* what) {
    if (a != b)
        throw DimensionError(std::string(what) + ": sizes " + std::to_string(a) + " and " +
                             std::to_string(b) + " differ");
}

} // namespace detail

inline FlowTransform build_flow_transform(const TreeNetwork& net) {
    FlowTransform t{BinaryMatrix(net.pipe_count(), net.node_count())};
    // walk each node up to the reservoir, marking every pipe passed
    for (std::size_t j = 0; j < net.node_count(); ++j)
        for (auto v = j; v != kReservoir; v = net.upstream_node(v)) t.matrix.set(v, j);
    return t;
}

inline HeadTransform build_head_transform(const TreeNetwork& net) {
    HeadTransform t{BinaryMatrix(net.node_count(), net.pipe_count())};
    for (std::size_t j = 0; j < net.node_count(); ++j)
        for (auto v = j; v != kReservoir; v = net.upstream_node(v)) t.matrix.set(j, v);
    return t;
}

inline std::vector<double> compute_flows(const FlowTransform& transform, std::span<const double> demands) {
    return transform.matrix.multiply(demands);
}

/// Hazen-Williams friction gradient in m/m. Flow is m^3/day and diameter mm; both are converted
/// to SI (m^3/s, m) before evaluation.
inline double friction_gradient(double flow, double diameter, double c_hw, double flow_exponent = 1.85) {
    if (!(diameter > 0.0)) throw DomainError("diameter must be > 0, got " + std::to_string(diameter));
    if (!(flow >= 0.0)) throw DomainError("flow must be >= 0, got " + std::to_string(flow));
    if (flow == 0.0) return 0.0;
    const double q = flow / kSecondsPerDay;
    const double d = diameter / 1000.0;
    return kHazenWilliamsFactor * std::pow(q, flow_exponent) /
           (std::pow(c_hw, flow_exponent) * std::pow(d, kDiameterExponent));
}

inline std::vector<double> friction_gradients(std::span<const double> flows, std::span<const double> diameters,
                                              const HydraulicParams& params) {
    detail::require_same_size(flows.size(), diameters.size(), "friction_gradients");
    std::vector<double> out(flows.size());
    for (std::size_t i = 0; i < flows.size(); ++i)
        out[i] = friction_gradient(flows[i], diameters[i], params.hazen_williams, params.flow_exponent);
    return out;
}

inline std::vector<double> apply_fitting_losses(std::span<const double> friction, double c_ft) {
    std::vector<double> out(friction.begin(), friction.end());
    for (auto& g : out) g *= c_ft;
    return out;
}

inline std::vector<double> pipe_head_losses(std::span<const double> lengths, std::span<const double> gradients) {
    detail::require_same_size(lengths.size(), gradients.size(), "pipe_head_losses");
    std::vector<double> out(lengths.size());
    for (std::size_t i = 0; i < lengths.size(); ++i) out[i] = lengths[i] * gradients[i];
    return out;
}

inline std::vector<double> nodal_heads(double reservoir_elevation, const HeadTransform& transform,
                                       std::span<const double> losses) {
    auto heads = transform.matrix.multiply(losses);
    for (auto& h : heads) h = reservoir_elevation - h;
    return heads;
}

inline std::vector<double> residual_heads(std::span<const double> heads, std::span<const double> elevations) {
    detail::require_same_size(heads.size(), elevations.size(), "residual_heads");
    std::vector<double> out(heads.size());
    for (std::size_t j = 0; j < heads.size(); ++j) out[j] = heads[j] - elevations[j];
    return out;
}

/// Network-bound kernel: the transforms and the flow vector depend only on layout and demands,
/// so they are computed once and reused for every diameter assignment.
class HydraulicModel {
public:
    explicit HydraulicModel(const TreeNetwork& net)
        : flow_(build_flow_transform(net)),
          head_(build_head_transform(net)),
          reservoir_elevation_(net.reservoir().elevation),
          lengths_(net.lengths()),
          elevations_(net.elevations()),
          flows_(compute_flows(flow_, net.demands())) {}

    const FlowTransform& flow_transform() const noexcept { return flow_; }
    const HeadTransform& head_transform() const noexcept { return head_; }
    std::span<const double> flows() const noexcept { return flows_; }
    std::size_t pipe_count() const noexcept { return lengths_.size(); }

    HydraulicState simulate(std::span<const double> diameters, const HydraulicParams& params) const {
        params.check();
        detail::require_same_size(diameters.size(), lengths_.size(), "diameter assignment vs pipes");
        HydraulicState s;
        s.flows = flows_;
        s.friction_gradients = friction_gradients(s.flows, diameters, params);
        s.friction_fitting_gradients = apply_fitting_losses(s.friction_gradients, params.fitting_loss);
        s.pipe_head_losses = pipe_head_losses(lengths_, s.friction_fitting_gradients);
        s.nodal_heads = nodal_heads(reservoir_elevation_, head_, s.pipe_head_losses);
        s.residual_heads = residual_heads(s.nodal_heads, elevations_);
        return s;
    }

private:
    FlowTransform flow_;
    HeadTransform head_;
    double reservoir_elevation_;
    std::vector<double> lengths_;
    std::vector<double> elevations_;
    std::vector<double> flows_;
};

inline HydraulicState simulate(const TreeNetwork& net, std::span<const double> diameters,
                               const HydraulicParams& params) {
    return HydraulicModel(net).simulate(diameters, params);
}

} // namespace treenet
