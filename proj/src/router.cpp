#include "msroute/router.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

#include "msroute/error.hpp"
#include "msroute/shortest_path.hpp"

namespace msroute {

std::string RunConfig::name() const {
    std::string s = search == Search::Forward ? "FC" : "BC";
    switch (profile.kind) {
    case ProfileKind::Uniform: s += "N"; break;
    case ProfileKind::Hyperbolic: s += "H"; break;
    case ProfileKind::Ladder: s += "L"; break;
    }
    return s;
}

const std::vector<std::string>& preset_names() {
    static const std::vector<std::string> names{"FCN", "FCH", "FCL", "BCN", "BCH", "BCL"};
    return names;
}

RunConfig preset(std::string_view name, int layers, LayerModel model, Balance balance) {
    if (name.size() != 3 || name[1] != 'C' || (name[0] != 'F' && name[0] != 'B')) {
        throw PreconditionError("unknown run configuration '" + std::string(name) + "'");
    }
    if (layers < 1) {
        throw PreconditionError("layer count must be at least 1");
    }
    RunConfig c;
    c.search = name[0] == 'F' ? Search::Forward : Search::Backward;
    switch (name[2]) {
    case 'N': c.profile.kind = ProfileKind::Uniform; break;
    case 'H': c.profile.kind = ProfileKind::Hyperbolic; break;
    case 'L': c.profile.kind = ProfileKind::Ladder; break;
    default: throw PreconditionError("unknown run configuration '" + std::string(name) + "'");
    }
    c.profile.layers = layers;
    c.profile.model = model;
    c.balance = balance;
    return c;
}

std::vector<int> RoutePath::layer_sequence() const {
    std::vector<int> seq;
    seq.reserve(layers.size() + 2);
    if (source_host >= 0) {
        seq.push_back(host_layers[0]);
    }
    seq.insert(seq.end(), layers.begin(), layers.end());
    if (sink_host >= 0) {
        seq.push_back(host_layers[1]);
    }
    return seq;
}

std::vector<int> order_nets(std::span<const Net> nets) {
    std::vector<int> idx(nets.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) {
        const Net& x = nets[static_cast<std::size_t>(a)];
        const Net& y = nets[static_cast<std::size_t>(b)];
        if (x.hpwl != y.hpwl) {
            return x.hpwl < y.hpwl;
        }
        if (x.degree() != y.degree()) {
            return x.degree() < y.degree();
        }
        return x.id < y.id;
    });
    return idx;
}

std::pair<int, int> identify_source(const Net& net, int a, int b, Search search) {
    const Point pa = net.pins.at(static_cast<std::size_t>(a)).absolute;
    const Point pb = net.pins.at(static_cast<std::size_t>(b)).absolute;
    if (pa == pb) {
        return a < b ? std::pair{a, b} : std::pair{b, a};
    }
    bool a_first = pa.x != pb.x ? pa.x < pb.x : pa.y < pb.y;
    if (search == Search::Backward) {
        a_first = !a_first;
    }
    return a_first ? std::pair{a, b} : std::pair{b, a};
}

std::vector<PinPair> decompose_net(const Net& net) {
    const std::size_t t = net.pins.size();
    if (t < 2) {
        throw InvalidNetError("net " + net.name + " has fewer than 2 pins");
    }
    std::vector<char> in_tree(t, 0);
    std::vector<double> best(t, 0.0);
    std::vector<int> link(t, 0);
    in_tree[0] = 1;
    for (std::size_t v = 1; v < t; ++v) {
        best[v] = manhattan(net.pins[0].absolute, net.pins[v].absolute);
    }
    auto key = [](int u, int v) { return std::pair{std::min(u, v), std::max(u, v)}; };

    std::vector<PinPair> out;
    for (std::size_t step = 1; step < t; ++step) {
        int pick = -1;
        for (std::size_t v = 0; v < t; ++v) {
            if (in_tree[v]) {
                continue;
            }
            if (pick < 0) {
                pick = static_cast<int>(v);
                continue;
            }
            const auto p = static_cast<std::size_t>(pick);
            if (best[v] < best[p] ||
                (best[v] == best[p] && key(link[v], static_cast<int>(v)) < key(link[p], pick))) {
                pick = static_cast<int>(v);
            }
        }
        const auto p = static_cast<std::size_t>(pick);
        in_tree[p] = 1;
        const auto [a, b] = key(link[p], pick);
        out.push_back({a, b, best[p]});
        for (std::size_t v = 0; v < t; ++v) {
            if (in_tree[v]) {
                continue;
            }
            const double d = manhattan(net.pins[p].absolute, net.pins[v].absolute);
            if (d < best[v] || (d == best[v] && key(pick, static_cast<int>(v)) < key(link[v], static_cast<int>(v)))) {
                best[v] = d;
                link[v] = pick;
            }
        }
    }
    std::stable_sort(out.begin(), out.end(), [](const PinPair& x, const PinPair& y) {
        if (x.weight != y.weight) {
            return x.weight < y.weight;
        }
        return std::pair{x.a, x.b} < std::pair{y.a, y.b};
    });
    return out;
}

int count_vias(std::span<const int> layers) {
    if (layers.empty()) {
        return 0;
    }
    int v = std::abs(1 - layers.front()) + std::abs(layers.back() - 1);
    for (std::size_t i = 1; i < layers.size(); ++i) {
        v += std::abs(layers[i - 1] - layers[i]);
    }
    return v;
}

Smst identify_steiner_points(int net_id, std::vector<RoutePath> paths, std::span<const Segment> segments) {
    Smst smst;
    smst.net_id = net_id;
    std::set<int> segs;
    std::set<std::pair<int, int>> legs;  // (pin, junction)
    std::map<int, std::set<int>> touching;  // junction -> segments
    for (const RoutePath& p : paths) {
        for (int s : p.segments) {
            segs.insert(s);
        }
        if (p.source_host >= 0 && legs.emplace(p.source_pin, p.source_junction).second) {
            smst.wirelength += p.source_distance;
        }
        if (p.sink_host >= 0 && legs.emplace(p.sink_pin, p.sink_junction).second) {
            smst.wirelength += p.sink_distance;
        }
        if (p.source_host >= 0) {
            touching[p.source_junction].insert(p.source_host);
        }
        if (p.sink_host >= 0) {
            touching[p.sink_junction].insert(p.sink_host);
        }
        smst.vias += p.vias;
    }
    for (int s : segs) {
        const Segment& seg = segments[static_cast<std::size_t>(s)];
        smst.wirelength += seg.length();
        touching[seg.junctions[0]].insert(s);
        touching[seg.junctions[1]].insert(s);
    }
    for (const auto& [j, set] : touching) {
        if (set.size() >= 3) {
            smst.steiner_points.push_back(j);
        }
    }
    smst.segments.assign(segs.begin(), segs.end());
    smst.paths = std::move(paths);
    return smst;
}

RoutingProblem prepare_problem(Floorplan fp, const RunConfig& config) {
    if (config.profile.layers < 1) {
        throw PreconditionError("layer count must be at least 1");
    }
    if (!(config.capacity_scale > 0.0)) {
        throw PreconditionError("capacity scale must be positive");
    }
    for (std::size_t i = 0; i < fp.nets.size(); ++i) {
        if (fp.nets[i].id != static_cast<int>(i)) {
            throw PreconditionError("net ids must equal their list positions");
        }
    }
    RoutingProblem p;
    p.config = config;
    p.tree = build_msc_tree(fp, config.balance);
    p.junctions = enumerate_tjunctions(fp);
    p.segments = extract_segments(p.tree, fp, p.junctions);
    attach_segments(p.junctions, p.segments);
    assign_capacities(p.segments, p.tree, fp);
    for (Segment& s : p.segments) {
        if (s.r > 0 && config.capacity_scale != 1.0) {
            s.r = std::max(1, static_cast<int>(std::lround(s.r * config.capacity_scale)));
        }
        init_layers(s, config.profile);
    }
    p.graph = build_junction_graph(p.segments, p.junctions, config.profile);
    p.fp = std::move(fp);
    return p;
}

bool operator==(const RouteState& a, const RouteState& b) {
    if (a.segments.size() != b.segments.size()) {
        return false;
    }
    for (std::size_t i = 0; i < a.segments.size(); ++i) {
        if (a.segments[i].usage != b.segments[i].usage || a.segments[i].curr_layer != b.segments[i].curr_layer) {
            return false;
        }
    }
    return true;
}

RouteState initial_state(const RoutingProblem& problem) { return RouteState{problem.segments}; }

namespace {

// Tags for pin legs in the per-pair graph; segments use their ids.
constexpr int kSourceLeg0 = -1;
constexpr int kSourceLeg1 = -2;
constexpr int kSinkLeg0 = -3;
constexpr int kSinkLeg1 = -4;

class NetRouter {
public:
    NetRouter(const RoutingProblem& problem, RouteState& state, const Net& net)
        : problem_(problem), state_(state), net_(net), profile_(problem.config.profile) {}

    // Layer the net holds on an owned segment, if any.
    std::optional<int> owned_layer(int seg) const {
        auto it = owned_.find(seg);
        return it == owned_.end() ? std::nullopt : std::optional<int>(it->second);
    }

    std::vector<int> owned_ids() const {
        std::vector<int> ids;
        for (const auto& [s, l] : owned_) {
            ids.push_back(s);
        }
        return ids;
    }

    // 1/(1-p) for a pin leg along `host`; plain distance on a segment the net already holds.
    std::optional<double> leg_factor(int host) const {
        if (owned_.contains(host)) {
            return 1.0;
        }
        const auto cost = congestion_cost(state_.segments[static_cast<std::size_t>(host)], profile_);
        if (!cost) {
            return std::nullopt;
        }
        return cost->factor;
    }

    std::optional<RoutePath> route_pair(const Gsrg& gsrg, int src, int snk) {
        const PinNode& s = gsrg.pins[static_cast<std::size_t>(src)];
        const PinNode& t = gsrg.pins[static_cast<std::size_t>(snk)];
        RoutePath path;
        path.net_id = net_.id;
        path.source_pin = src;
        path.sink_pin = snk;
        if (s.position == t.position) {
            path.source_host = path.sink_host = -1;
            return path;
        }

        const JunctionGraph& jg = problem_.graph;
        const int nj = static_cast<int>(jg.node_count());
        WeightedGraph g(jg.node_count() + 2);
        for (int id : jg.edges()) {
            const Segment& seg = state_.segments[static_cast<std::size_t>(id)];
            std::optional<double> w = owned_.contains(id) ? std::optional<double>(seg.length()) : edge_weight(seg, profile_);
            if (w) {
                g.add_edge(seg.junctions[0], seg.junctions[1], *w, id);
            }
        }
        const auto fs = leg_factor(s.host);
        const auto ft = leg_factor(t.host);
        if (!fs || !ft) {
            return std::nullopt;
        }
        g.add_edge(nj, s.junctions[0], s.distance[0] * *fs, kSourceLeg0);
        g.add_edge(nj, s.junctions[1], s.distance[1] * *fs, kSourceLeg1);
        g.add_edge(nj + 1, t.junctions[0], t.distance[0] * *ft, kSinkLeg0);
        g.add_edge(nj + 1, t.junctions[1], t.distance[1] * *ft, kSinkLeg1);

        const auto sp = dijkstra_ssp(g, nj, nj + 1);
        if (!sp) {
            return std::nullopt;
        }
        path.weight = sp->weight;
        path.source_host = s.host;
        path.sink_host = t.host;
        for (int e : sp->edges) {
            const int tag = g.edge(e).tag;
            switch (tag) {
            case kSourceLeg0:
            case kSourceLeg1: {
                const int k = tag == kSourceLeg0 ? 0 : 1;
                path.source_junction = s.junctions[static_cast<std::size_t>(k)];
                path.source_distance = s.distance[static_cast<std::size_t>(k)];
                break;
            }
            case kSinkLeg0:
            case kSinkLeg1: {
                const int k = tag == kSinkLeg0 ? 0 : 1;
                path.sink_junction = t.junctions[static_cast<std::size_t>(k)];
                path.sink_distance = t.distance[static_cast<std::size_t>(k)];
                break;
            }
            default:
                path.segments.push_back(tag);
                path.length += state_.segments[static_cast<std::size_t>(tag)].length();
            }
        }
        path.length += path.source_distance + path.sink_distance;
        return path;
    }

    // Charges every segment the path touches that the net does not hold yet and
    // records the layers.
    void commit(RoutePath& path) {
        if (path.source_host < 0) {
            return;
        }
        path.host_layers[0] = take(path.source_host);
        path.layers.clear();
        for (int s : path.segments) {
            path.layers.push_back(take(s));
        }
        path.host_layers[1] = take(path.sink_host);
        path.vias = count_vias(path.layer_sequence());
    }

    void rollback() {
        for (auto& [id, saved] : saved_) {
            Segment& seg = state_.segments[static_cast<std::size_t>(id)];
            seg.usage = std::move(saved.first);
            seg.curr_layer = saved.second;
        }
        saved_.clear();
        owned_.clear();
    }

private:
    int take(int seg) {
        if (auto l = owned_layer(seg)) {
            return *l;
        }
        Segment& s = state_.segments[static_cast<std::size_t>(seg)];
        saved_.emplace(seg, std::pair{s.usage, s.curr_layer});
        const int layer = charge(s, profile_);
        owned_.emplace(seg, layer);
        return layer;
    }

    const RoutingProblem& problem_;
    RouteState& state_;
    const Net& net_;
    const CapacityProfile& profile_;
    std::map<int, int> owned_;  // segment -> layer
    std::map<int, std::pair<std::vector<int>, int>> saved_;
};

void check_path(const RoutePath& p, const std::vector<Segment>& segments, const Net& net) {
    if (p.source_host < 0) {
        return;
    }
    int at = p.source_junction;
    const Segment& sh = segments[static_cast<std::size_t>(p.source_host)];
    if (at != sh.junctions[0] && at != sh.junctions[1]) {
        throw InvariantError("path does not start at its source host");
    }
    for (int s : p.segments) {
        const Segment& seg = segments[static_cast<std::size_t>(s)];
        if (seg.junctions[0] != at && seg.junctions[1] != at) {
            throw InvariantError("consecutive path segments do not share a junction");
        }
        at = seg.other_end(at);
    }
    const Segment& th = segments[static_cast<std::size_t>(p.sink_host)];
    if (at != p.sink_junction || (at != th.junctions[0] && at != th.junctions[1])) {
        throw InvariantError("path does not end at its sink host");
    }
    const double md = manhattan(net.pins[static_cast<std::size_t>(p.source_pin)].absolute,
                                net.pins[static_cast<std::size_t>(p.sink_pin)].absolute);
    if (p.length < md * (1.0 - 1e-12) - 1e-9) {
        throw InvariantError("routed path is shorter than the Manhattan distance of its pins");
    }
}

} // namespace

NetResult route_net(const RoutingProblem& problem, RouteState& state, const Net& net, const RouteOptions& options) {
    NetResult result;
    result.net_id = net.id;
    NetRouter router(problem, state, net);

    const std::vector<PinPair> pairs = decompose_net(net);
    const Gsrg gsrg = build_gsrg(problem.graph, state.segments, problem.config.profile, net);
    auto fail = [&](int a, int b, std::string why) {
        router.rollback();
        result.status = NetStatus::Failed;
        result.failed_pair = std::pair{a, b};
        result.reason = std::move(why);
        result.smst = Smst{};
        result.smst.net_id = net.id;
        return result;
    };

    std::vector<RoutePath> paths;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        const auto [src, snk] = identify_source(net, pairs[i].a, pairs[i].b, problem.config.search);
        if (options.inject_failure && options.inject_failure(net, i)) {
            return fail(src, snk, "injected failure");
        }
        const bool coincident = net.pins[static_cast<std::size_t>(src)].absolute == net.pins[static_cast<std::size_t>(snk)].absolute;
        if (!coincident && (gsrg.pins[static_cast<std::size_t>(src)].host < 0 || gsrg.pins[static_cast<std::size_t>(snk)].host < 0)) {
            return fail(src, snk, "pin has no usable host segment");
        }
        auto path = router.route_pair(gsrg, src, snk);
        if (!path) {
            return fail(src, snk, "sink unreachable");
        }
        router.commit(*path);
        if (options.check_invariants) {
            check_path(*path, state.segments, net);
        }
        const double md = manhattan(net.pins[static_cast<std::size_t>(src)].absolute, net.pins[static_cast<std::size_t>(snk)].absolute);
        if (md > 0.0) {
            result.max_detour = std::max(result.max_detour, path->length / md);
        }
        paths.push_back(std::move(*path));
    }
    result.status = NetStatus::Routed;
    result.smst = identify_steiner_points(net.id, std::move(paths), state.segments);
    return result;
}

RouteOutcome route_all(const RoutingProblem& problem, const RouteOptions& options) {
    RouteOutcome out;
    out.state = initial_state(problem);
    out.order = order_nets(problem.fp.nets);
    out.results.resize(problem.fp.nets.size());
    const auto start = std::chrono::steady_clock::now();
    for (int idx : out.order) {
        const Net& net = problem.fp.nets[static_cast<std::size_t>(idx)];
        out.results[static_cast<std::size_t>(idx)] = route_net(problem, out.state, net, options);
        if (options.check_invariants && !usage_within_capacity(out.state.segments, problem.config.profile)) {
            throw InvariantError("segment usage exceeds capacity after net " + net.name);
        }
    }
    out.runtime_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return out;
}

} // namespace msroute
