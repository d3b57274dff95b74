#include "msroute/routegraph.hpp"

#include <algorithm>
#include <limits>

#include "msroute/error.hpp"
#include "msroute/floorplan_io.hpp"

namespace msroute {

const char* to_string(ProfileKind k) {
    switch (k) {
    case ProfileKind::Uniform: return "uniform";
    case ProfileKind::Hyperbolic: return "hyperbolic";
    case ProfileKind::Ladder: return "ladder";
    }
    return "?";
}

const char* to_string(LayerModel m) { return m == LayerModel::ReservedHV ? "reserved-hv" : "unreserved"; }

namespace {

int ceil_div(int a, int b) { return (a + b - 1) / b; }

} // namespace

int capacity_at(const CapacityProfile& profile, int r, int layer) {
    if (layer < 1 || layer > profile.layers) {
        throw PreconditionError("layer " + std::to_string(layer) + " outside [1, " + std::to_string(profile.layers) + "]");
    }
    if (r <= 0) {
        return 0;
    }
    switch (profile.kind) {
    case ProfileKind::Uniform: return r;
    case ProfileKind::Hyperbolic: return ceil_div(r, layer);
    case ProfileKind::Ladder: return layer <= 2 ? r : (layer <= 4 ? ceil_div(r, 2) : ceil_div(r, 4));
    }
    return r;
}

bool layer_allowed(const CapacityProfile& profile, Axis axis, int layer) {
    if (layer < 1 || layer > profile.layers) {
        return false;
    }
    if (profile.model == LayerModel::Unreserved) {
        return true;
    }
    return (layer % 2 == 1) == (axis == Axis::H);
}

std::optional<int> first_layer(const CapacityProfile& profile, Axis axis) {
    for (int l = 1; l <= profile.layers; ++l) {
        if (layer_allowed(profile, axis, l)) {
            return l;
        }
    }
    return std::nullopt;
}

void init_layers(Segment& seg, const CapacityProfile& profile) {
    seg.usage.assign(static_cast<std::size_t>(profile.layers), 0);
    seg.curr_layer = first_layer(profile, seg.axis()).value_or(0);
}

bool is_routable_resource(const Segment& seg, const CapacityProfile& profile) {
    return seg.r > 0 && seg.curr_layer > 0 && first_layer(profile, seg.axis()).has_value();
}

bool layer_full(const Segment& seg, const CapacityProfile& profile) {
    if (seg.curr_layer <= 0) {
        return true;
    }
    return seg.usage.at(static_cast<std::size_t>(seg.curr_layer - 1)) >= capacity_at(profile, seg.r, seg.curr_layer);
}

std::optional<int> next_layer(const Segment& seg, const CapacityProfile& profile) {
    if (seg.curr_layer <= 0) {
        return std::nullopt;
    }
    const int step = profile.model == LayerModel::ReservedHV ? 2 : 1;
    const int next = seg.curr_layer + step;
    if (next > profile.layers) {
        return std::nullopt;
    }
    return next;
}

std::optional<int> advance_layer(Segment& seg, const CapacityProfile& profile) {
    if (!layer_full(seg, profile)) {
        throw PreconditionError("advance_layer called while the current layer has room");
    }
    const auto next = next_layer(seg, profile);
    if (next) {
        seg.curr_layer = *next;
    }
    return next;
}

std::optional<LayerCost> congestion_cost(const Segment& seg, const CapacityProfile& profile) {
    if (!is_routable_resource(seg, profile)) {
        return std::nullopt;
    }
    int layer = seg.curr_layer;
    while (true) {
        const int cap = capacity_at(profile, seg.r, layer);
        const int u = seg.usage[static_cast<std::size_t>(layer - 1)];
        if (u < cap) {
            const double p = static_cast<double>(u) / cap;
            return LayerCost{layer, 1.0 / (1.0 - p)};
        }
        Segment probe;
        probe.span = seg.span;
        probe.curr_layer = layer;
        const auto next = next_layer(probe, profile);
        if (!next) {
            return std::nullopt;
        }
        layer = *next;
    }
}

bool is_saturated(const Segment& seg, const CapacityProfile& profile) { return !congestion_cost(seg, profile); }

std::optional<double> edge_weight(const Segment& seg, const CapacityProfile& profile) {
    const auto cost = congestion_cost(seg, profile);
    if (!cost) {
        return std::nullopt;
    }
    return seg.length() * cost->factor;
}

int charge(Segment& seg, const CapacityProfile& profile) {
    const auto cost = congestion_cost(seg, profile);
    if (!cost) {
        throw PreconditionError("charge on a saturated segment " + std::to_string(seg.id));
    }
    seg.curr_layer = cost->layer;
    ++seg.usage[static_cast<std::size_t>(cost->layer - 1)];
    if (layer_full(seg, profile)) {
        advance_layer(seg, profile);
    }
    return cost->layer;
}

void uncharge(Segment& seg, int layer) {
    int& u = seg.usage.at(static_cast<std::size_t>(layer - 1));
    if (u <= 0) {
        throw PreconditionError("uncharge below zero usage");
    }
    --u;
}

bool usage_within_capacity(std::span<const Segment> segments, const CapacityProfile& profile) {
    for (const Segment& s : segments) {
        for (int l = 1; l <= static_cast<int>(s.usage.size()); ++l) {
            const int u = s.usage[static_cast<std::size_t>(l - 1)];
            if (u < 0) {
                return false;
            }
            if (u > 0 && (!layer_allowed(profile, s.axis(), l) || u > capacity_at(profile, s.r, l))) {
                return false;
            }
        }
    }
    return true;
}

JunctionGraph::JunctionGraph(std::size_t junction_count, std::vector<int> edge_segments,
                             std::vector<std::vector<int>> incident)
    : edges_(std::move(edge_segments)), incident_(std::move(incident)) {
    incident_.resize(junction_count);
    const int top = edges_.empty() ? 0 : *std::max_element(edges_.begin(), edges_.end()) + 1;
    member_.assign(static_cast<std::size_t>(top), 0);
    for (int e : edges_) {
        member_[static_cast<std::size_t>(e)] = 1;
    }
}

bool JunctionGraph::has_edge(int segment) const {
    return segment >= 0 && static_cast<std::size_t>(segment) < member_.size() && member_[static_cast<std::size_t>(segment)];
}

JunctionGraph build_junction_graph(std::span<const Segment> segments, std::span<const TJunction> junctions,
                                   const CapacityProfile& profile) {
    const int n = static_cast<int>(junctions.size());
    std::vector<int> edges;
    std::vector<std::vector<int>> incident(junctions.size());
    for (const Segment& s : segments) {
        for (int j : s.junctions) {
            if (j < 0 || j >= n) {
                throw GeometryError("segment " + std::to_string(s.id) + " has no endpoint junction");
            }
        }
        if (!(s.r > 0 && first_layer(profile, s.axis()))) {
            continue;
        }
        edges.push_back(s.id);
        incident[static_cast<std::size_t>(s.junctions[0])].push_back(s.id);
        incident[static_cast<std::size_t>(s.junctions[1])].push_back(s.id);
    }
    return JunctionGraph(junctions.size(), std::move(edges), std::move(incident));
}

Gsrg build_gsrg(const JunctionGraph& jg, std::span<const Segment> segments, const CapacityProfile& profile,
                const Net& net, std::span<const int> owned) {
    Gsrg g;
    g.base = &jg;
    g.net_id = net.id;
    for (std::size_t i = 0; i < net.pins.size(); ++i) {
        const Point p = net.pins[i].absolute;
        int best = -1;
        double best_d = std::numeric_limits<double>::infinity();
        for (int id : jg.edges()) {
            const Segment& s = segments[static_cast<std::size_t>(id)];
            const bool mine = std::find(owned.begin(), owned.end(), id) != owned.end();
            if (!mine && is_saturated(s, profile)) {
                continue;
            }
            const double d = s.span.distance_to(p);
            if (d < best_d) {  // edges() is in id order, so ties keep the lower id
                best_d = d;
                best = id;
            }
        }
        PinNode node;
        node.pin = static_cast<int>(i);
        node.position = p;
        if (best < 0) {
            if (!g.unhosted_pin) {
                g.unhosted_pin = static_cast<int>(i);
            }
        } else {
            const Segment& host = segments[static_cast<std::size_t>(best)];
            node.host = best;
            node.junctions = host.junctions;
            node.distance = {manhattan(p, host.span.low_end()), manhattan(p, host.span.high_end())};
        }
        g.pins.push_back(node);
    }
    return g;
}

std::vector<int> strip_pins(const Gsrg& g) { return g.base->edges(); }

std::string junction_graph_csv(const JunctionGraph& jg, std::span<const Segment> segments, const CapacityProfile& profile) {
    std::string out = "edge,segment,j0,j1,length,r";
    for (int l = 1; l <= profile.layers; ++l) {
        out += ",u" + std::to_string(l);
    }
    out += "\n";
    for (std::size_t e = 0; e < jg.edges().size(); ++e) {
        const Segment& s = segments[static_cast<std::size_t>(jg.edges()[e])];
        out += std::to_string(e) + "," + std::to_string(s.id) + "," + std::to_string(s.junctions[0]) + "," +
               std::to_string(s.junctions[1]) + "," + format_fixed(s.length()) + "," + std::to_string(s.r);
        for (int l = 1; l <= profile.layers; ++l) {
            const std::size_t i = static_cast<std::size_t>(l - 1);
            out += "," + std::to_string(i < s.usage.size() ? s.usage[i] : 0);
        }
        out += "\n";
    }
    return out;
}

} // namespace msroute
