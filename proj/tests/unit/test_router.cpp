#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "helpers.hpp"
#include "msroute/error.hpp"
#include "msroute/generator.hpp"
#include "msroute/router.hpp"
#include "msroute/shortest_path.hpp"
#include "oracles.hpp"

using namespace msroute;

namespace {

Net net_at(std::vector<Point> pts, double hpwl = 0.0, int id = 0) {
    Net n;
    n.id = id;
    n.name = "n" + std::to_string(id);
    for (const auto& p : pts) {
        Pin pin;
        pin.absolute = p;
        n.pins.push_back(pin);
    }
    n.hpwl = hpwl;
    return n;
}

Segment seg(int id, Axis axis, double fixed, double lo, double hi, int j0, int j1) {
    Segment s;
    s.id = id;
    s.span = {axis, fixed, lo, hi};
    s.junctions = {j0, j1};
    return s;
}

// Every routed path walks host -> segments -> host and is no shorter than its pins' distance.
void audit_paths(const RoutingProblem& problem, const RouteOutcome& out) {
    for (const auto& res : out.results) {
        if (res.status != NetStatus::Routed) continue;
        const Net& net = problem.fp.nets[static_cast<std::size_t>(res.net_id)];
        CHECK(res.smst.paths.size() == static_cast<std::size_t>(net.degree() - 1));
        for (const auto& p : res.smst.paths) {
            const double md = manhattan(net.pins[static_cast<std::size_t>(p.source_pin)].absolute,
                                        net.pins[static_cast<std::size_t>(p.sink_pin)].absolute);
            CHECK(p.length >= md - 1e-9);
            CHECK(p.vias == count_vias(p.layer_sequence()));
            CHECK(p.layers.size() == p.segments.size());
            for (std::size_t i = 0; i < p.segments.size(); ++i) {
                CHECK(layer_allowed(problem.config.profile, problem.segments[static_cast<std::size_t>(p.segments[i])].axis(), p.layers[i]));
            }
        }
    }
}

} // namespace

TEST_SUITE("router") {

TEST_CASE("presets") {
    CHECK(preset_names() == std::vector<std::string>{"FCN", "FCH", "FCL", "BCN", "BCH", "BCL"});
    for (const auto& name : preset_names()) CHECK(preset(name).name() == name);
    CHECK(preset("BCH").search == Search::Backward);
    CHECK(preset("FCL").profile.kind == ProfileKind::Ladder);
    CHECK_THROWS_AS(preset("XYZ"), PreconditionError);
}

TEST_CASE("order_nets sorts by hpwl, then degree, then id") {
    std::vector<Net> nets{net_at({{0, 0}, {1, 1}, {2, 2}}, 5.0, 0), net_at({{0, 0}, {1, 1}}, 5.0, 1), net_at({{0, 0}, {1, 0}}, 1.0, 2),
                          net_at({{0, 0}, {1, 1}}, 5.0, 3)};
    CHECK(order_nets(nets) == std::vector<int>{2, 1, 3, 0});
    CHECK(order_nets(std::span<const Net>{}).empty());
}

TEST_CASE("identify_source") {
    const Net n = net_at({{5, 1}, {2, 9}, {5, 0}, {5, 0}});
    CHECK(identify_source(n, 0, 1, Search::Forward) == std::pair{1, 0});
    CHECK(identify_source(n, 0, 1, Search::Backward) == std::pair{0, 1});
    CHECK(identify_source(n, 0, 2, Search::Forward) == std::pair{2, 0});
    CHECK(identify_source(n, 0, 2, Search::Backward) == std::pair{0, 2});
    CHECK(identify_source(n, 3, 2, Search::Forward) == std::pair{2, 3});
    CHECK(identify_source(n, 3, 2, Search::Backward) == std::pair{2, 3});
}

TEST_CASE("decompose_net") {
    SUBCASE("two pins") {
        const auto pairs = decompose_net(net_at({{0, 0}, {3, 4}}));
        REQUIRE(pairs.size() == 1);
        CHECK(pairs[0].a == 0);
        CHECK(pairs[0].b == 1);
        CHECK(pairs[0].weight == 7.0);
    }
    SUBCASE("collinear pins chain up in weight order") {
        const auto pairs = decompose_net(net_at({{0, 0}, {10, 0}, {3, 0}}));
        REQUIRE(pairs.size() == 2);
        CHECK((pairs[0].a == 0 && pairs[0].b == 2 && pairs[0].weight == 3.0));
        CHECK((pairs[1].a == 1 && pairs[1].b == 2 && pairs[1].weight == 7.0));
    }
    SUBCASE("degree one") { CHECK_THROWS_AS(decompose_net(net_at({{0, 0}})), InvalidNetError); }
    SUBCASE("random nets against the spanning-tree oracle") {
        std::mt19937_64 rng(17);
        std::uniform_int_distribution<int> coord(0, 30), deg(2, 6);
        for (int trial = 0; trial < 200; ++trial) {
            std::vector<Point> pts(static_cast<std::size_t>(deg(rng)));
            for (auto& p : pts) p = {static_cast<double>(coord(rng)), static_cast<double>(coord(rng))};
            const auto pairs = decompose_net(net_at(pts));
            CHECK(pairs.size() == pts.size() - 1);
            double total = 0;
            for (const auto& pp : pairs) total += pp.weight;
            CHECK(total == oracle::min_spanning_tree_weight(pts));
            for (std::size_t i = 1; i < pairs.size(); ++i) CHECK(pairs[i - 1].weight <= pairs[i].weight);
        }
    }
}

TEST_CASE("dijkstra_ssp") {
    SUBCASE("example") {
        WeightedGraph g(4);
        g.add_edge(0, 1, 1.0);
        g.add_edge(1, 3, 5.0);
        g.add_edge(0, 2, 2.0);
        g.add_edge(2, 3, 2.5);
        const auto p = dijkstra_ssp(g, 0, 3);
        REQUIRE(p);
        CHECK(p->weight == 4.5);
        CHECK(p->nodes == std::vector<int>{0, 2, 3});
        CHECK(p->edges == std::vector<int>{2, 3});
        CHECK(dijkstra_ssp(g, 2, 2)->nodes == std::vector<int>{2});
    }
    SUBCASE("unreachable and bad input") {
        WeightedGraph g(3);
        g.add_edge(0, 1, 1.0);
        CHECK_FALSE(dijkstra_ssp(g, 0, 2).has_value());
        CHECK_THROWS(g.add_edge(0, 5, 1.0));
        CHECK_THROWS(g.add_edge(0, 1, -1.0));
    }
    SUBCASE("random graphs against exhaustive search") {
        std::mt19937_64 rng(99);
        for (int trial = 0; trial < 150; ++trial) {
            const int n = 2 + static_cast<int>(rng() % 8);
            WeightedGraph g(static_cast<std::size_t>(n));
            const int m = static_cast<int>(rng() % static_cast<unsigned>(2 * n + 1));
            for (int e = 0; e < m; ++e) {
                const int u = static_cast<int>(rng() % static_cast<unsigned>(n)), v = static_cast<int>(rng() % static_cast<unsigned>(n));
                if (u != v) g.add_edge(u, v, static_cast<double>(rng() % 20));
            }
            const auto got = dijkstra_ssp(g, 0, n - 1);
            const auto want = oracle::min_simple_path(g, 0, n - 1);
            REQUIRE(got.has_value() == want.has_value());
            if (got) {
                CHECK(got->weight == *want);
                double sum = 0;
                for (int e : got->edges) sum += g.edge(e).weight;
                CHECK(sum == got->weight);
            }
        }
    }
}

TEST_CASE("count_vias") {
    CHECK(count_vias(std::vector<int>{1, 2, 2, 3}) == 4);
    CHECK(count_vias(std::vector<int>{1}) == 0);
    CHECK(count_vias(std::vector<int>{2}) == 2);
    CHECK(count_vias(std::vector<int>{}) == 0);
    CHECK(count_vias(std::vector<int>{1, 4, 1}) == 6);
}

TEST_CASE("identify_steiner_points on a hand-built tree") {
    // s0 and s1 along y = 0 meeting at j1, s2 rising from j1.
    const std::vector<Segment> segs{seg(0, Axis::H, 0, 0, 10, 0, 1), seg(1, Axis::H, 0, 10, 20, 1, 2), seg(2, Axis::V, 10, 0, 5, 1, 3)};
    RoutePath a;
    a.source_pin = 0;
    a.source_host = 0;
    a.source_junction = 0;
    a.source_distance = 1;
    a.sink_pin = 1;
    a.sink_host = 1;
    a.sink_junction = 2;
    a.sink_distance = 2;
    a.segments = {0, 1};
    RoutePath b;
    b.source_pin = 2;
    b.source_host = 2;
    b.source_junction = 3;
    b.source_distance = 3;
    b.sink_pin = 0;
    b.sink_host = 0;
    b.sink_junction = 0;
    b.sink_distance = 1;  // same leg as a's source, counted once
    b.segments = {2, 0};
    b.vias = 2;
    const Smst t = identify_steiner_points(7, {a, b}, segs);
    CHECK(t.net_id == 7);
    CHECK(t.segments == std::vector<int>{0, 1, 2});
    CHECK(t.steiner_points == std::vector<int>{1});
    CHECK(t.wirelength == 31.0);
    CHECK(t.vias == 2);
}

TEST_CASE("prepare_problem preconditions") {
    Floorplan fp = testutil::apte_like();
    RunConfig c = preset("FCN");
    c.capacity_scale = 0;
    CHECK_THROWS_AS(prepare_problem(fp, c), PreconditionError);
    std::swap(fp.nets[0].id, fp.nets[1].id);
    CHECK_THROWS_AS(prepare_problem(fp, preset("FCN")), PreconditionError);
}

TEST_CASE("routing the fixture") {
    const RoutingProblem problem = prepare_problem(testutil::apte_like(), preset("FCN"));
    const RouteOutcome out = route_all(problem);
    CHECK(out.results.size() == 44);
    CHECK(out.order == order_nets(problem.fp.nets));
    int routed = 0;
    for (const auto& r : out.results) routed += r.status == NetStatus::Routed;
    CHECK(routed == 44);
    CHECK(usage_within_capacity(out.state.segments, problem.config.profile));
    audit_paths(problem, out);

    SUBCASE("deterministic") {
        const RouteOutcome again = route_all(problem);
        CHECK(again.state == out.state);
        for (std::size_t i = 0; i < out.results.size(); ++i) {
            CHECK(again.results[i].smst.wirelength == out.results[i].smst.wirelength);
            CHECK(again.results[i].smst.segments == out.results[i].smst.segments);
        }
    }
    SUBCASE("usage equals the number of nets owning each segment") {
        std::vector<int> owners(problem.segments.size(), 0);
        for (const auto& r : out.results) {
            std::set<int> used(r.smst.segments.begin(), r.smst.segments.end());
            for (const auto& p : r.smst.paths) {
                if (p.source_host >= 0) used.insert(p.source_host);
                if (p.sink_host >= 0) used.insert(p.sink_host);
            }
            for (int s : used) ++owners[static_cast<std::size_t>(s)];
        }
        for (const auto& s : out.state.segments) {
            int total = 0;
            for (int u : s.usage) total += u;
            CHECK(total == owners[static_cast<std::size_t>(s.id)]);
        }
    }
}

TEST_CASE("rollback restores the pre-net state") {
    const RoutingProblem problem = prepare_problem(generate_random_floorplan(40, 120, 6, 4), preset("FCH"));
    RouteState state = initial_state(problem);
    const auto order = order_nets(problem.fp.nets);
    int checked = 0;
    for (std::size_t i = 0; i < order.size(); ++i) {
        const Net& net = problem.fp.nets[static_cast<std::size_t>(order[i])];
        if (i % 3 == 0) {
            for (std::size_t at = 0; at + 1 < static_cast<std::size_t>(net.degree()); ++at) {
                const RouteState before = state;
                RouteOptions opt;
                opt.inject_failure = [at](const Net&, std::size_t pair) { return pair == at; };
                const NetResult r = route_net(problem, state, net, opt);
                CHECK(r.status == NetStatus::Failed);
                CHECK(r.reason == "injected failure");
                CHECK(r.failed_pair.has_value());
                CHECK(state == before);
                ++checked;
            }
        }
        route_net(problem, state, net);
    }
    CHECK(checked > 40);
}

TEST_CASE("nets with no usable resources fail cleanly") {
    const Floorplan fp = testutil::make_floorplan({{"a", 0, 0, 1, 1}, {"b", 1, 0, 1, 1}}, {{"a", "b"}, {"a", "b"}, {"a", "b"}});
    const RoutingProblem problem = prepare_problem(fp, preset("FCN", 1));
    const RouteOutcome out = route_all(problem);
    int routed = 0;
    for (const auto& r : out.results) {
        routed += r.status == NetStatus::Routed;
        if (r.status == NetStatus::Failed) CHECK_FALSE(r.reason.empty());
    }
    CHECK(routed < 3);
    CHECK(usage_within_capacity(out.state.segments, problem.config.profile));
}

TEST_CASE("coincident pins route with zero wirelength") {
    const Floorplan fp = testutil::make_floorplan({{"a", 0, 0, 1, 1}, {"b", 1, 0, 1, 1}}, {{"a", "a"}});
    const RoutingProblem problem = prepare_problem(fp, preset("FCN"));
    const RouteOutcome out = route_all(problem);
    REQUIRE(out.results.size() == 1);
    CHECK(out.results[0].status == NetStatus::Routed);
    CHECK(out.results[0].smst.wirelength == 0.0);
    CHECK(out.results[0].smst.paths.at(0).segments.empty());
}

TEST_CASE("zero nets") {
    const Floorplan fp = testutil::make_floorplan({{"a", 0, 0, 1, 1}, {"b", 1, 0, 1, 1}});
    const RoutingProblem problem = prepare_problem(fp, preset("BCL"));
    const RouteOutcome out = route_all(problem);
    CHECK(out.results.empty());
    CHECK(out.state == initial_state(problem));
}

TEST_CASE("on an empty uniform state path weight equals path length") {
    RunConfig c = preset("FCN");
    c.capacity_scale = 100.0;
    const RoutingProblem problem = prepare_problem(generate_random_floorplan(30, 60, 2, 12), c);
    for (const Net& net : problem.fp.nets) {
        RouteState fresh = initial_state(problem);
        const NetResult r = route_net(problem, fresh, net);
        REQUIRE(r.status == NetStatus::Routed);
        CHECK(r.smst.paths.at(0).weight == doctest::Approx(r.smst.paths.at(0).length));
    }
}

TEST_CASE("more layers never route fewer nets") {
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
        const Floorplan fp = generate_random_floorplan(60, 330, 6, seed + 10);
        for (const char* name : {"FCH", "BCN"}) {
            int prev = -1;
            for (int layers : {1, 2, 4, 6, 8}) {
                const RoutingProblem problem = prepare_problem(fp, preset(name, layers));
                const RouteOutcome out = route_all(problem);
                int routed = 0;
                for (const auto& r : out.results) routed += r.status == NetStatus::Routed;
                CHECK(routed >= prev);
                prev = routed;
            }
        }
    }
}

TEST_CASE("more capacity never routes fewer nets on generated instances") {
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
        const Floorplan fp = generate_random_floorplan(60, 330, 6, seed);
        int prev = -1;
        for (double scale : {0.25, 1.0, 100.0}) {
            RunConfig c = preset("FCH");
            c.capacity_scale = scale;
            const RoutingProblem problem = prepare_problem(fp, c);
            const RouteOutcome out = route_all(problem);
            audit_paths(problem, out);
            int routed = 0;
            for (const auto& r : out.results) routed += r.status == NetStatus::Routed;
            if (scale == 100.0) CHECK(routed == 330);
            CHECK(routed >= prev);
            prev = routed;
        }
    }
}

}
