#include <doctest.h>

#include <algorithm>

#include "helpers.hpp"
#include "msroute/error.hpp"
#include "msroute/generator.hpp"
#include "msroute/router.hpp"
#include "msroute/routegraph.hpp"

using namespace msroute;

namespace {

Segment make_segment(Axis axis, double length, int r, const CapacityProfile& profile) {
    Segment s;
    s.span = {axis, 0.0, 0.0, length};
    s.r = r;
    init_layers(s, profile);
    return s;
}

CapacityProfile profile(ProfileKind k, LayerModel m = LayerModel::ReservedHV, int layers = 8) { return {k, layers, m}; }

} // namespace

TEST_SUITE("routegraph") {

TEST_CASE("capacity profiles") {
    const auto U = profile(ProfileKind::Uniform), H = profile(ProfileKind::Hyperbolic), L = profile(ProfileKind::Ladder);
    CHECK(capacity_at(U, 10, 1) == 10);
    CHECK(capacity_at(U, 10, 8) == 10);
    CHECK(capacity_at(H, 10, 1) == 10);
    CHECK(capacity_at(H, 10, 3) == 4);
    CHECK(capacity_at(H, 10, 8) == 2);
    CHECK(capacity_at(L, 10, 2) == 10);
    CHECK(capacity_at(L, 10, 3) == 5);
    CHECK(capacity_at(L, 10, 4) == 5);
    CHECK(capacity_at(L, 10, 5) == 3);
    CHECK(capacity_at(L, 1, 8) == 1);
    CHECK(capacity_at(U, 0, 1) == 0);
    CHECK_THROWS_AS(capacity_at(U, 5, 0), PreconditionError);
    CHECK_THROWS_AS(capacity_at(U, 5, 9), PreconditionError);

    for (int r = 1; r <= 64; ++r) {
        for (int l = 1; l <= 8; ++l) {
            const int h = capacity_at(H, r, l), lad = capacity_at(L, r, l), u = capacity_at(U, r, l);
            CHECK(h <= lad);
            CHECK(lad <= u);
            CHECK(h >= 1);
        }
    }
}

TEST_CASE("reserved layer model") {
    const auto P = profile(ProfileKind::Uniform);
    CHECK(layer_allowed(P, Axis::H, 1));
    CHECK_FALSE(layer_allowed(P, Axis::H, 2));
    CHECK(layer_allowed(P, Axis::V, 2));
    CHECK(*first_layer(P, Axis::V) == 2);
    CHECK_FALSE(first_layer(profile(ProfileKind::Uniform, LayerModel::ReservedHV, 1), Axis::V).has_value());
    CHECK(*first_layer(profile(ProfileKind::Uniform, LayerModel::Unreserved), Axis::V) == 1);

    const Segment v = make_segment(Axis::V, 5, 3, profile(ProfileKind::Uniform, LayerModel::ReservedHV, 1));
    CHECK(v.curr_layer == 0);
    CHECK_FALSE(is_routable_resource(v, profile(ProfileKind::Uniform, LayerModel::ReservedHV, 1)));
}

TEST_CASE("edge weights") {
    const auto P = profile(ProfileKind::Uniform);
    Segment s = make_segment(Axis::H, 10, 4, P);
    CHECK(*edge_weight(s, P) == 10.0);
    CHECK(charge(s, P) == 1);
    CHECK(*edge_weight(s, P) == doctest::Approx(10.0 / 0.75));
    charge(s, P);
    CHECK(*edge_weight(s, P) == doctest::Approx(20.0));
    charge(s, P);
    CHECK(*edge_weight(s, P) == doctest::Approx(40.0));
    // fourth net fills layer 1 and moves the segment to layer 3
    CHECK(charge(s, P) == 1);
    CHECK(s.curr_layer == 3);
    CHECK(*edge_weight(s, P) == 10.0);

    Segment dead = make_segment(Axis::H, 10, 0, P);
    CHECK_FALSE(edge_weight(dead, P).has_value());
    CHECK(is_saturated(dead, P));
}

TEST_CASE("weight is non-decreasing in usage until the layer flips") {
    for (auto kind : {ProfileKind::Uniform, ProfileKind::Hyperbolic, ProfileKind::Ladder}) {
        const auto P = profile(kind);
        Segment s = make_segment(Axis::V, 7, 9, P);
        int layer = s.curr_layer;
        double prev = *edge_weight(s, P);
        while (!is_saturated(s, P)) {
            charge(s, P);
            if (is_saturated(s, P)) break;
            const double w = *edge_weight(s, P);
            if (s.curr_layer == layer) {
                CHECK(w >= prev);
            } else {
                CHECK(w == doctest::Approx(7.0));
                layer = s.curr_layer;
            }
            prev = w;
        }
        CHECK(usage_within_capacity(std::span(&s, 1), P));
        CHECK_THROWS_AS(charge(s, P), PreconditionError);
        // V uses even layers only
        for (int l = 1; l <= 8; l += 2) CHECK(s.usage[static_cast<std::size_t>(l - 1)] == 0);
    }
}

TEST_CASE("advance_layer") {
    const auto P = profile(ProfileKind::Uniform);
    Segment s = make_segment(Axis::H, 1, 1, P);
    CHECK_THROWS_AS(advance_layer(s, P), PreconditionError);
    s.usage[0] = 1;
    CHECK(*advance_layer(s, P) == 3);
    CHECK(s.curr_layer == 3);
    s.usage[2] = s.usage[4] = s.usage[6] = 1;
    CHECK(*advance_layer(s, P) == 5);
    CHECK(*advance_layer(s, P) == 7);
    CHECK_FALSE(advance_layer(s, P).has_value());
    CHECK(s.curr_layer == 7);

    const auto Q = profile(ProfileKind::Uniform, LayerModel::Unreserved, 3);
    Segment t = make_segment(Axis::V, 1, 1, Q);
    t.usage[0] = 1;
    CHECK(*next_layer(t, Q) == 2);
}

TEST_CASE("uncharge and the capacity audit") {
    const auto P = profile(ProfileKind::Hyperbolic);
    Segment s = make_segment(Axis::H, 1, 2, P);
    const int l = charge(s, P);
    uncharge(s, l);
    CHECK_THROWS_AS(uncharge(s, l), PreconditionError);
    s.usage[1] = 1;  // H wire on an even layer
    CHECK_FALSE(usage_within_capacity(std::span(&s, 1), P));
    s.usage[1] = 0;
    s.usage[0] = 3;
    CHECK_FALSE(usage_within_capacity(std::span(&s, 1), P));
}

TEST_CASE("junction graph and GSRG on the fixture") {
    const RoutingProblem problem = prepare_problem(testutil::apte_like(), preset("FCN"));
    const JunctionGraph& jg = problem.graph;
    CHECK(jg.node_count() == problem.junctions.size());
    for (int e : jg.edges()) {
        const Segment& s = problem.segments[static_cast<std::size_t>(e)];
        CHECK(is_routable_resource(s, problem.config.profile));
        for (int j : s.junctions) {
            const auto& inc = jg.incident(j);
            CHECK(std::find(inc.begin(), inc.end(), e) != inc.end());
        }
    }
    for (const auto& s : problem.segments) {
        CHECK(jg.has_edge(s.id) == is_routable_resource(s, problem.config.profile));
    }

    for (const Net& net : problem.fp.nets) {
        const Gsrg g = build_gsrg(jg, problem.segments, problem.config.profile, net);
        REQUIRE(g.complete());
        CHECK(g.pins.size() == static_cast<std::size_t>(net.degree()));
        CHECK(g.pin_edge_count() == 2 * static_cast<std::size_t>(net.degree()));
        CHECK(strip_pins(g) == jg.edges());
        CHECK(g.pin_node(0) == static_cast<int>(jg.node_count()));
        for (const PinNode& p : g.pins) {
            const Segment& host = problem.segments[static_cast<std::size_t>(p.host)];
            CHECK(jg.has_edge(p.host));
            CHECK(p.junctions == host.junctions);
            for (int k = 0; k < 2; ++k) {
                CHECK(p.distance[static_cast<std::size_t>(k)] ==
                      doctest::Approx(manhattan(p.position, problem.junctions[static_cast<std::size_t>(host.junctions[static_cast<std::size_t>(k)])].position)));
            }
            // no routable segment is strictly closer
            const double d = host.span.distance_to(p.position);
            for (int e : jg.edges()) {
                CHECK(problem.segments[static_cast<std::size_t>(e)].span.distance_to(p.position) >= d - 1e-9);
            }
        }
    }
}

TEST_CASE("GSRG hosts avoid saturated segments unless the net owns them") {
    RoutingProblem problem = prepare_problem(testutil::apte_like(), preset("FCN"));
    const auto& P = problem.config.profile;
    const Net& net = problem.fp.nets.front();
    const Gsrg before = build_gsrg(problem.graph, problem.segments, P, net);
    const int host = before.pins[0].host;
    Segment& seg = problem.segments[static_cast<std::size_t>(host)];
    while (!is_saturated(seg, P)) charge(seg, P);
    const Gsrg after = build_gsrg(problem.graph, problem.segments, P, net);
    CHECK(after.pins[0].host != host);
    const std::vector<int> owned{host};
    const Gsrg owning = build_gsrg(problem.graph, problem.segments, P, net, owned);
    CHECK(owning.pins[0].host == host);
}

TEST_CASE("junction graph csv") {
    const RoutingProblem problem = prepare_problem(testutil::apte_like(), preset("FCN"));
    const std::string csv = junction_graph_csv(problem.graph, problem.segments, problem.config.profile);
    CHECK(csv.rfind("edge,segment,j0,j1,length,r,u1,u2,u3,u4,u5,u6,u7,u8\n", 0) == 0);
    CHECK(static_cast<std::size_t>(std::count(csv.begin(), csv.end(), '\n')) == problem.graph.edge_count() + 1);
}

}
