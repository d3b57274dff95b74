#include "msroute/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "msroute/error.hpp"

namespace msroute {

std::vector<double> CongestionSnapshot::values() const {
    std::vector<double> v;
    v.reserve(entries.size());
    for (const auto& e : entries) {
        v.push_back(e.p);
    }
    return v;
}

std::vector<double> CongestionSnapshot::values_on_layer(int layer) const {
    std::vector<double> v;
    for (const auto& e : entries) {
        if (e.layer == layer) {
            v.push_back(e.p);
        }
    }
    return v;
}

CongestionSnapshot take_snapshot(std::span<const Segment> segments, const CapacityProfile& profile) {
    CongestionSnapshot snap;
    for (const Segment& s : segments) {
        if (s.r <= 0) {
            continue;
        }
        for (int l = 1; l <= profile.layers; ++l) {
            if (!layer_allowed(profile, s.axis(), l)) {
                continue;
            }
            const int cap = capacity_at(profile, s.r, l);
            if (cap <= 0) {
                continue;
            }
            const std::size_t i = static_cast<std::size_t>(l - 1);
            const int u = i < s.usage.size() ? s.usage[i] : 0;
            snap.entries.push_back({s.id, l, static_cast<double>(u) / cap});
        }
    }
    return snap;
}

double ace(double x_percent, std::span<const double> values) {
    if (values.empty()) {
        throw MetricError("ACE of an empty snapshot is undefined");
    }
    if (!(x_percent > 0.0 && x_percent <= 100.0)) {
        throw MetricError("ACE percentage must lie in (0, 100]");
    }
    const std::size_t n = values.size();
    const auto take = std::clamp<std::size_t>(static_cast<std::size_t>(std::ceil(x_percent / 100.0 * static_cast<double>(n))), 1, n);
    std::vector<double> v(values.begin(), values.end());
    std::partial_sort(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(take), v.end(), std::greater<>());
    double sum = 0.0;
    for (std::size_t i = 0; i < take; ++i) {
        sum += v[i];
    }
    return sum / static_cast<double>(take);
}

double wace4(std::span<const double> values) {
    double sum = 0.0;
    for (double x : kWace4Points) {
        sum += ace(x, values);
    }
    return sum / 4.0;
}

CongestionSummary summarize_congestion(const CongestionSnapshot& snap, int layers) {
    CongestionSummary out;
    const auto all = snap.values();
    if (!all.empty()) {
        out.wace4 = wace4(all);
        out.max_p = *std::max_element(all.begin(), all.end());
    }
    for (int l = 1; l <= layers; ++l) {
        const auto v = snap.values_on_layer(l);
        if (v.empty()) {
            out.per_layer.emplace_back();
            continue;
        }
        const double w = wace4(v);
        out.per_layer.emplace_back(w);
        out.max_over_layers = std::max(out.max_over_layers.value_or(w), w);
    }
    return out;
}

} // namespace msroute
