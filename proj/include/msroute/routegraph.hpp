#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "msroute/adjacency.hpp"
#include "msroute/staircase.hpp"

namespace msroute {

enum class ProfileKind { Uniform, Hyperbolic, Ladder };
enum class LayerModel { ReservedHV, Unreserved };

const char* to_string(ProfileKind k);
const char* to_string(LayerModel m);

struct CapacityProfile {
    ProfileKind kind = ProfileKind::Uniform;
    int layers = 8;  // M
    LayerModel model = LayerModel::ReservedHV;
};

// Per-layer capacity derived from the base capacity r. Throws PreconditionError
// when layer is outside [1, M].
int capacity_at(const CapacityProfile& profile, int r, int layer);

// Reserved model: H on odd layers, V on even layers.
bool layer_allowed(const CapacityProfile& profile, Axis axis, int layer);

// Lowest allowed layer for the axis, if any.
std::optional<int> first_layer(const CapacityProfile& profile, Axis axis);

// Resets usage to M zeros and curr_layer to the first allowed layer (0 when none).
void init_layers(Segment& seg, const CapacityProfile& profile);

// r > 0 and some layer is allowed for the segment's axis.
bool is_routable_resource(const Segment& seg, const CapacityProfile& profile);

bool layer_full(const Segment& seg, const CapacityProfile& profile);

// Next allowed layer above curr_layer, if any.
std::optional<int> next_layer(const Segment& seg, const CapacityProfile& profile);

// Moves curr_layer up once the current layer is full; nullopt when no layer is left
// (curr_layer unchanged). Throws PreconditionError if the current layer has room.
std::optional<int> advance_layer(Segment& seg, const CapacityProfile& profile);

// No capacity left on any remaining layer, or not a routing resource at all.
bool is_saturated(const Segment& seg, const CapacityProfile& profile);

// Layer the next net would use and 1/(1-p) there; nullopt when saturated.
struct LayerCost {
    int layer = 0;
    double factor = 1.0;
};
std::optional<LayerCost> congestion_cost(const Segment& seg, const CapacityProfile& profile);

// length / (1 - p); nullopt means unusable.
std::optional<double> edge_weight(const Segment& seg, const CapacityProfile& profile);

// Adds one net on the layer congestion_cost() reports and advances eagerly when
// that layer fills up. Returns the layer used. Throws PreconditionError if saturated.
int charge(Segment& seg, const CapacityProfile& profile);

// Removes one net from `layer`. Only used by tests and tools; routing rolls back
// by restoring snapshots.
void uncharge(Segment& seg, int layer);

// True iff every segment-layer usage is within capacity.
bool usage_within_capacity(std::span<const Segment> segments, const CapacityProfile& profile);

class JunctionGraph {
public:
    JunctionGraph() = default;
    JunctionGraph(std::size_t junction_count, std::vector<int> edge_segments, std::vector<std::vector<int>> incident);

    std::size_t node_count() const { return incident_.size(); }
    std::size_t edge_count() const { return edges_.size(); }
    const std::vector<int>& edges() const { return edges_; }  // segment ids
    const std::vector<int>& incident(int junction) const { return incident_.at(static_cast<std::size_t>(junction)); }
    bool has_edge(int segment) const;

private:
    std::vector<int> edges_;
    std::vector<std::vector<int>> incident_;
    std::vector<char> member_;
};

// One edge per routing-resource segment between its endpoint junctions. Throws
// GeometryError for a segment whose endpoints are not valid junction ids.
JunctionGraph build_junction_graph(std::span<const Segment> segments, std::span<const TJunction> junctions,
                                   const CapacityProfile& profile);

struct PinNode {
    int pin = 0;   // index into the net's pins
    Point position;
    int host = -1;  // host segment id
    std::array<int, 2> junctions{-1, -1};
    std::array<double, 2> distance{0.0, 0.0};  // Manhattan pin-to-junction
};

struct Gsrg {
    const JunctionGraph* base = nullptr;
    int net_id = 0;
    std::vector<PinNode> pins;
    std::optional<int> unhosted_pin;  // first pin with no usable host segment

    std::size_t pin_edge_count() const { return pins.size() * 2; }
    bool complete() const { return !unhosted_pin.has_value(); }
    // Node ids: junctions first, then pins in order.
    int pin_node(std::size_t i) const { return static_cast<int>(base->node_count() + i); }
};

// Host of each pin: the nearest segment (Euclidean distance to its span) that is
// currently usable or listed in `owned`; ties to the lower id.
Gsrg build_gsrg(const JunctionGraph& jg, std::span<const Segment> segments, const CapacityProfile& profile,
                const Net& net, std::span<const int> owned = {});

// Base graph edge set after dropping the pin nodes.
std::vector<int> strip_pins(const Gsrg& g);

// "edge,segment,j0,j1,length,r,u1..uM"
std::string junction_graph_csv(const JunctionGraph& jg, std::span<const Segment> segments, const CapacityProfile& profile);

} // namespace msroute
