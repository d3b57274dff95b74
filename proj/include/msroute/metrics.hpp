#pragma once

#include <optional>
#include <span>
#include <vector>

#include "msroute/routegraph.hpp"

namespace msroute {

struct SnapshotEntry {
    int segment = 0;
    int layer = 0;
    double p = 0.0;  // u / capacity
};

// Normalized usage of every segment-layer pair that is a routing resource:
// r > 0, layer permitted for the segment's axis, capacity > 0.
struct CongestionSnapshot {
    std::vector<SnapshotEntry> entries;

    std::vector<double> values() const;
    std::vector<double> values_on_layer(int layer) const;
};

CongestionSnapshot take_snapshot(std::span<const Segment> segments, const CapacityProfile& profile);

// Mean of the ceil(x% * count) largest values (at least one). Throws MetricError on
// an empty population or x outside (0, 100].
double ace(double x_percent, std::span<const double> values);

inline constexpr double kWace4Points[4] = {0.5, 1.0, 2.0, 5.0};

// Equal-weight mean of ACE at 0.5, 1, 2 and 5 percent.
double wace4(std::span<const double> values);

struct CongestionSummary {
    std::optional<double> wace4;                   // over all entries
    std::vector<std::optional<double>> per_layer;  // index 0 is layer 1; empty layers stay unset
    std::optional<double> max_over_layers;
    double max_p = 0.0;
};

CongestionSummary summarize_congestion(const CongestionSnapshot& snap, int layers);

} // namespace msroute
