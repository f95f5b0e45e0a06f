#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "treenet/detail/text.hpp"
#include "treenet/errors.hpp"

namespace treenet {

struct CostPoint {
    double diameter = 0.0;  // mm
    double unit_cost = 0.0; // cost units per metre

    bool operator==(const CostPoint&) const = default;
};

namespace detail {

inline void check_cost_points(std::span<const CostPoint> points, std::size_t min_points, const char* what) {
    if (points.size() < min_points)
        throw DomainError(std::string(what) + " needs at least " + std::to_string(min_points) + " points");
    for (std::size_t k = 0; k < points.size(); ++k) {
        if (!(points[k].diameter > 0.0) || !std::isfinite(points[k].diameter))
            throw DomainError(std::string(what) + ": diameters must be positive");
        if (!(points[k].unit_cost > 0.0) || !std::isfinite(points[k].unit_cost))
            throw DomainError(std::string(what) + ": unit costs must be positive");
        if (k > 0 && !(points[k].diameter > points[k - 1].diameter))
            throw DomainError(std::string(what) + ": diameters must be distinct and strictly increasing");
    }
}

// Shared "diameter_mm unit_cost" line format.
inline std::vector<CostPoint> parse_cost_lines(std::string_view text) {
    std::vector<CostPoint> points;
    for_each_line(text, [&](std::size_t line, std::string_view content) {
        const auto f = split_ws(content);
        if (f.size() != 2) throw ParseError(line, "expected 'diameter_mm unit_cost'");
        CostPoint p{parse_double(f[0], line, "diameter_mm"), parse_double(f[1], line, "unit_cost")};
        if (!points.empty() && !(p.diameter > points.back().diameter))
            throw ParseError(line, "diameters must be strictly increasing");
        points.push_back(p);
    });
    return points;
}

inline std::string format_cost_lines(std::span<const CostPoint> points, int decimals) {
    std::ostringstream out;
    out << "# diameter_mm unit_cost\n";
    for (const auto& p : points) {
        out << detail::format_double(p.diameter) << ' ';
        if (decimals < 0) {
            out << detail::format_double(p.unit_cost);
        } else {
            out.setf(std::ios::fixed);
            out.precision(decimals);
            out << p.unit_cost;
            out.unsetf(std::ios::fixed);
        }
        out << '\n';
    }
    return out.str();
}

} // namespace detail

/// Tabulated base costs; the interpolation nodes. Strictly increasing diameters.
class CostTable {
public:
    explicit CostTable(std::vector<CostPoint> points) : points_(std::move(points)) {
        detail::check_cost_points(points_, 2, "cost table");
        const std::size_t n = points_.size();
        // barycentric weights w_k = 1 / prod_{m != k} (x_k - x_m)
        weights_.assign(n, 1.0);
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t m = 0; m < n; ++m)
                if (m != k) weights_[k] /= points_[k].diameter - points_[m].diameter;
    }

    /// Accepts points in any order; sorts them. Duplicate diameters are rejected.
    static CostTable from_unordered(std::vector<CostPoint> points) {
        std::sort(points.begin(), points.end(),
                  [](const CostPoint& a, const CostPoint& b) { return a.diameter < b.diameter; });
        return CostTable(std::move(points));
    }

    std::span<const CostPoint> points() const noexcept { return points_; }
    std::span<const double> weights() const noexcept { return weights_; }
    double min_diameter() const noexcept { return points_.front().diameter; }
    double max_diameter() const noexcept { return points_.back().diameter; }

private:
    std::vector<CostPoint> points_;
    std::vector<double> weights_;
};

/// Value at `diameter` of the unique polynomial of degree n-1 through all n table points.
/// Evaluated in second (true) barycentric form. Extrapolation is rejected.
inline double lagrange_interpolate(const CostTable& table, double diameter) {
    if (!(diameter >= table.min_diameter() && diameter <= table.max_diameter()))
        throw DomainError("diameter " + detail::format_double(diameter) + " mm is outside the cost table range [" +
                          detail::format_double(table.min_diameter()) + ", " +
                          detail::format_double(table.max_diameter()) + "]");
    const auto pts = table.points();
    const auto w = table.weights();
    double num = 0.0;
    double den = 0.0;
    for (std::size_t k = 0; k < pts.size(); ++k) {
        const double dx = diameter - pts[k].diameter;
        if (dx == 0.0) return pts[k].unit_cost;
        const double t = w[k] / dx;
        num += t * pts[k].unit_cost;
        den += t;
    }
    return num / den;
}

/// Commercially available diameters with their unit costs; catalog position is the genome alphabet.
class PipeCatalog {
public:
    PipeCatalog() = default;
    explicit PipeCatalog(std::vector<CostPoint> entries) : entries_(std::move(entries)) {
        detail::check_cost_points(entries_, 1, "pipe catalog");
    }

    std::size_t size() const noexcept { return entries_.size(); }
    bool empty() const noexcept { return entries_.empty(); }
    std::span<const CostPoint> entries() const noexcept { return entries_; }
    double diameter(std::size_t index) const { return entries_.at(index).diameter; }
    double unit_cost(std::size_t index) const { return entries_.at(index).unit_cost; }

    std::optional<std::size_t> index_of(double diameter) const {
        for (std::size_t k = 0; k < entries_.size(); ++k)
            if (entries_[k].diameter == diameter) return k;
        return std::nullopt;
    }

    bool operator==(const PipeCatalog&) const = default;

private:
    std::vector<CostPoint> entries_;
};

inline PipeCatalog build_catalog(const CostTable& table, std::span<const double> diameters) {
    std::vector<double> sorted(diameters.begin(), diameters.end());
    std::sort(sorted.begin(), sorted.end());
    std::vector<CostPoint> entries;
    entries.reserve(sorted.size());
    for (double d : sorted) entries.push_back({d, lagrange_interpolate(table, d)});
    return PipeCatalog(std::move(entries));
}

struct CostReport {
    std::vector<double> per_pipe; // cost units
    double total = 0.0;
};

/// Total network cost: unit cost of each assigned diameter times the pipe length.
inline CostReport network_cost(std::span<const double> diameters, std::span<const double> lengths,
                               const PipeCatalog& catalog) {
    if (diameters.size() != lengths.size())
        throw DimensionError("network_cost: " + std::to_string(diameters.size()) + " diameters for " +
                             std::to_string(lengths.size()) + " pipe lengths");
    CostReport report;
    report.per_pipe.reserve(diameters.size());
    for (std::size_t i = 0; i < diameters.size(); ++i) {
        const auto k = catalog.index_of(diameters[i]);
        if (!k)
            throw DomainError("diameter " + detail::format_double(diameters[i]) + " mm is not in the catalog");
        report.per_pipe.push_back(catalog.unit_cost(*k) * lengths[i]);
    }
    report.total = std::accumulate(report.per_pipe.begin(), report.per_pipe.end(), 0.0);
    return report;
}

inline CostTable parse_cost_table(std::string_view text) { return CostTable(detail::parse_cost_lines(text)); }
inline PipeCatalog parse_catalog(std::string_view text) { return PipeCatalog(detail::parse_cost_lines(text)); }

/// `decimals` < 0 writes full round-trip precision.
inline std::string serialize_catalog(const PipeCatalog& catalog, int decimals = -1) {
    return detail::format_cost_lines(catalog.entries(), decimals);
}

} // namespace treenet
