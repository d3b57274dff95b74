#include <doctest.h>

#include <set>

#include "helpers.hpp"
#include "msroute/adjacency.hpp"
#include "msroute/error.hpp"
#include "msroute/generator.hpp"
#include "oracles.hpp"

using namespace msroute;

namespace {

bool has_edge(const Bag& bag, int from, int to, Relation rel) {
    for (const auto& e : bag.edges()) {
        if (e.from == from && e.to == to && e.relation == rel) return true;
    }
    return false;
}

// a | b on the bottom row, c spanning the top.
Floorplan three_blocks() {
    return testutil::make_floorplan({{"a", 0, 0, 1, 1}, {"b", 1, 0, 1, 1}, {"c", 0, 1, 2, 1}});
}

} // namespace

TEST_SUITE("adjacency") {

TEST_CASE("two side-by-side blocks") {
    const Floorplan fp = testutil::make_floorplan({{"a", 0, 0, 1, 1}, {"b", 1, 0, 1, 1}});
    for (auto o : {Orientation::MIS, Orientation::MDS}) {
        const Bag bag = build_bag(fp, o);
        REQUIRE(bag.edges().size() == 1);
        CHECK(has_edge(bag, 0, 1, Relation::LeftOf));
        CHECK(bag.edges()[0].shared_span.axis == Axis::V);
        CHECK(bag.edges()[0].shared_span.fixed == 1.0);
    }
}

TEST_CASE("stacked blocks point down for MIS and up for MDS") {
    const Floorplan fp = testutil::make_floorplan({{"top", 0, 1, 1, 1}, {"bot", 0, 0, 1, 1}});
    CHECK(has_edge(build_bag(fp, Orientation::MIS), 0, 1, Relation::Above));
    CHECK(has_edge(build_bag(fp, Orientation::MDS), 1, 0, Relation::Below));
}

TEST_CASE("three-block example") {
    const Floorplan fp = three_blocks();
    const Bag mis = build_bag(fp, Orientation::MIS);
    CHECK(mis.edges().size() == 3);
    CHECK(has_edge(mis, 0, 1, Relation::LeftOf));
    CHECK(has_edge(mis, 2, 0, Relation::Above));
    CHECK(has_edge(mis, 2, 1, Relation::Above));
    CHECK(*mis.topological_order() == std::vector<int>{2, 0, 1});

    const Bag mds = build_bag(fp, Orientation::MDS);
    CHECK(has_edge(mds, 0, 2, Relation::Below));
    CHECK(has_edge(mds, 1, 2, Relation::Below));
    CHECK(*mds.topological_order() == std::vector<int>{0, 1, 2});

    const Bag sub = mis.induced(std::vector<int>{0, 2});
    CHECK(sub.size() == 2);
    CHECK(sub.edges().size() == 1);
    CHECK(sub.contains(2));
    CHECK_FALSE(sub.contains(1));
    CHECK(sub.out_edges(2).size() == 1);
    CHECK(sub.in_edges(0).size() == 1);
}

TEST_CASE("single block") {
    const Floorplan fp = testutil::make_floorplan({{"only", 0, 0, 4, 3}});
    CHECK(build_bag(fp, Orientation::MIS).edges().empty());
    const auto js = enumerate_tjunctions(fp);
    CHECK(js.size() == 4);
    CHECK(interior_junction_count(js) == 0);
}

TEST_CASE("invalid floorplans are rejected") {
    const Floorplan cross =
        testutil::make_floorplan({{"a", 0, 0, 1, 1}, {"b", 1, 0, 1, 1}, {"c", 0, 1, 1, 1}, {"d", 1, 1, 1, 1}});
    CHECK_THROWS_AS(build_bag(cross, Orientation::MIS), PreconditionError);
    CHECK_THROWS_AS(enumerate_tjunctions(cross), GeometryError);
}

TEST_CASE("junctions of the three-block example") {
    const auto js = enumerate_tjunctions(three_blocks());
    // corners plus (1,0), (0,1), (2,1) and (1,1)
    CHECK(js.size() == 8);
    CHECK(interior_junction_count(js) == 4);
    for (std::size_t i = 1; i < js.size(); ++i) {
        const Point a = js[i - 1].position, b = js[i].position;
        CHECK((a.x < b.x || (a.x == b.x && a.y < b.y)));
        CHECK(js[i].id == static_cast<int>(i));
    }
}

TEST_CASE("generated floorplans: junction positions, counts and BAG edges against oracles") {
    for (int n : {2, 3, 4, 7, 12, 25, 40}) {
        for (std::uint64_t seed = 1; seed <= 8; ++seed) {
            const Floorplan fp = generate_random_floorplan(n, 4, 3, seed * 101 + static_cast<std::uint64_t>(n));
            const double eps = fp.outline.diagonal() * 1e-4;
            const auto js = enumerate_tjunctions(fp);
            CHECK(interior_junction_count(js) == 2 * n - 2);

            // every candidate corner is classified the same way by the arm-count oracle
            std::set<std::pair<long long, long long>> lib;
            for (const auto& j : js) lib.insert({std::llround(j.position.x * 1e6), std::llround(j.position.y * 1e6)});
            std::set<std::pair<long long, long long>> ref;
            for (const auto& b : fp.blocks) {
                const Rect r = b.rect();
                for (Point p : {Point{r.xlo(), r.ylo()}, Point{r.xhi(), r.ylo()}, Point{r.xlo(), r.yhi()}, Point{r.xhi(), r.yhi()}}) {
                    if (oracle::is_junction_point(fp, p, eps)) ref.insert({std::llround(p.x * 1e6), std::llround(p.y * 1e6)});
                }
            }
            CHECK(lib == ref);

            for (auto o : {Orientation::MIS, Orientation::MDS}) {
                const Bag bag = build_bag(fp, o);
                CHECK(bag.is_acyclic());
                CHECK(bag.edges().size() == oracle::shared_walls(fp, fp.tolerance()).size());
                // Every internal wall end on the outline removes one adjacency from 3(n-1).
                CHECK(static_cast<int>(bag.edges().size()) + oracle::boundary_wall_ends(fp, eps) == 3 * (n - 1));
            }
        }
    }
}

TEST_CASE("dot output names every block and edge") {
    const Floorplan fp = three_blocks();
    const std::string dot = bag_to_dot(build_bag(fp, Orientation::MIS), fp);
    CHECK(dot.rfind("digraph bag_MIS", 0) == 0);
    CHECK(dot.find("label=\"c\"") != std::string::npos);
    CHECK(dot.find("b2 -> b0 [label=\"ABOVE\"]") != std::string::npos);
}

}
