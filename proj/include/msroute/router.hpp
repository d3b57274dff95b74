#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "msroute/adjacency.hpp"
#include "msroute/floorplan.hpp"
#include "msroute/routegraph.hpp"
#include "msroute/staircase.hpp"

namespace msroute {

enum class Search { Forward, Backward };

struct RunConfig {
    Search search = Search::Forward;
    CapacityProfile profile;
    Balance balance = Balance::Number;
    // Multiplies every positive base capacity (rounded, at least 1). 1.0 leaves
    // the estimate untouched; fixtures use it to build ample or tight instances.
    double capacity_scale = 1.0;

    // FCN, BCH, ... from search and profile kind.
    std::string name() const;
};

// FCN/FCH/FCL/BCN/BCH/BCL. Throws PreconditionError for anything else.
RunConfig preset(std::string_view name, int layers = 8, LayerModel model = LayerModel::ReservedHV,
                 Balance balance = Balance::Number);
const std::vector<std::string>& preset_names();

struct RoutePath {
    int net_id = 0;
    int source_pin = 0;  // indices into the net's pins
    int sink_pin = 0;
    int source_host = -1;
    int sink_host = -1;
    int source_junction = -1;  // where the path leaves the source pin
    int sink_junction = -1;
    std::vector<int> segments;  // junction-graph segments in travel order
    std::vector<int> layers;    // per entry of `segments`
    std::array<int, 2> host_layers{1, 1};
    double source_distance = 0.0;  // pin-to-junction legs
    double sink_distance = 0.0;
    double length = 0.0;
    double weight = 0.0;
    int vias = 0;

    // Layer sequence including both host segments, as used for via counting.
    std::vector<int> layer_sequence() const;
};

struct Smst {
    int net_id = 0;
    std::vector<RoutePath> paths;
    std::vector<int> segments;        // distinct, sorted
    std::vector<int> steiner_points;  // junction ids, sorted
    double wirelength = 0.0;
    int vias = 0;
};

enum class NetStatus { Routed, Failed };

inline const char* to_string(NetStatus s) { return s == NetStatus::Routed ? "routed" : "failed"; }

struct NetResult {
    int net_id = 0;
    NetStatus status = NetStatus::Failed;
    Smst smst;
    std::optional<std::pair<int, int>> failed_pair;  // pin indices
    std::string reason;
    double max_detour = 0.0;  // worst path length / Manhattan distance
};

// Stable sort by (hpwl, degree, id); returns indices into `nets`.
std::vector<int> order_nets(std::span<const Net> nets);

// Pin indices (source, sink). Forward: smaller x, then smaller y. Backward: larger x,
// then larger y. Coincident pins: the lower index is the source.
std::pair<int, int> identify_source(const Net& net, int a, int b, Search search);

struct PinPair {
    int a = 0;  // a < b
    int b = 0;
    double weight = 0.0;
};

// Prim over the pin clique weighted by pairwise HPWL (the Manhattan distance for two
// pins), starting from pin 0, ties by the smaller (a, b). Returned in routing order:
// non-decreasing weight, then (a, b). A 2-pin net gives its single pair.
std::vector<PinPair> decompose_net(const Net& net);

// |1 - L1| + sum |Li - Li+1| + |Ln - 1|.
int count_vias(std::span<const int> layers);

// Distinct segments, wirelength (shared segments and pin legs counted once), vias
// (sum over paths) and Steiner points: junctions touched by three or more distinct
// segments of the tree, a pin leg counting as its host segment.
Smst identify_steiner_points(int net_id, std::vector<RoutePath> paths, std::span<const Segment> segments);

struct RoutingProblem {
    Floorplan fp;
    RunConfig config;
    MscTree tree;
    std::vector<TJunction> junctions;
    std::vector<Segment> segments;  // capacities assigned, usage zero
    JunctionGraph graph;
};

// Validates the floorplan, builds the MSC tree, junctions, segments and junction graph.
RoutingProblem prepare_problem(Floorplan fp, const RunConfig& config);

struct RouteState {
    std::vector<Segment> segments;

    friend bool operator==(const RouteState& a, const RouteState& b);
};

RouteState initial_state(const RoutingProblem& problem);

struct RouteOptions {
    // Check usage against capacity after every net; InvariantError on violation.
    bool check_invariants = true;
    // Called before each pair is routed; returning true fails the net there.
    std::function<bool(const Net&, std::size_t pair)> inject_failure;
};

// Routes one net. On failure every usage change made for the net is undone.
NetResult route_net(const RoutingProblem& problem, RouteState& state, const Net& net, const RouteOptions& options = {});

struct RouteOutcome {
    std::vector<int> order;          // net indices in routing order
    std::vector<NetResult> results;  // indexed by net id
    RouteState state;
    double runtime_seconds = 0.0;
};

RouteOutcome route_all(const RoutingProblem& problem, const RouteOptions& options = {});

} // namespace msroute
