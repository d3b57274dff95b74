#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include "msroute/adjacency.hpp"
#include "msroute/floorplan.hpp"

namespace msroute {

enum class Balance { Number, Area };

inline const char* to_string(Balance b) { return b == Balance::Number ? "number" : "area"; }

// One monotone staircase cut. left_set is the predecessor-closed side of the BAG:
// the upper-left side for MIS, the lower-left side for MDS.
struct MsCut {
    Orientation orientation = Orientation::MIS;
    std::vector<int> left_set;
    std::vector<int> right_set;
    std::vector<BagEdge> cut_edges;  // in staircase order
    std::vector<int> cut_nets;       // nets with terminals on both sides, see propagate_terminals()
};

// Terminal blocks of every net (indexed by net id) as seen from inside the BAG: a pin
// on a member block stays there, any other pin moves to the member block nearest to
// it (Euclidean distance to the rectangle, ties to the smaller id).
std::vector<std::vector<int>> propagate_terminals(const Bag& bag, const Floorplan& fp);

// Greedy number- or area-balanced staircase bipartition of a (sub-)BAG.
//
// Starting from the empty set, the left side repeatedly absorbs a frontier block
// (one whose predecessors inside the BAG are all absorbed) choosing the block
// that adds the fewest cut nets, ties to the smaller id. The left side is
// therefore always predecessor-closed, which is what makes the boundary a
// monotone staircase. Growth stops at floor(m/2) blocks (Number) or when half
// the area is reached (Area). Throws PreconditionError for fewer than 2 nodes.
MsCut bipartition(const Bag& bag, const Floorplan& fp, Balance balance);

// Consecutive cut edges, in staircase order, advance in x and in y (MIS) or in x
// and against y (MDS).
bool is_monotone(const MsCut& cut, double tol);

struct MscNode {
    std::vector<int> blocks;  // sorted
    int cut = -1;             // index into MscTree::cuts, -1 for a leaf
    int left = -1;
    int right = -1;
    int parent = -1;
    int depth = 0;

    bool is_leaf() const { return cut < 0; }
};

struct MscTree {
    std::vector<MscNode> nodes;  // breadth-first, root first
    std::vector<MsCut> cuts;     // cuts[i] belongs to nodes[cut_node[i]]
    std::vector<int> cut_node;

    std::size_t cut_count() const { return cuts.size(); }
    std::size_t leaf_count() const;
    const MscNode& root() const { return nodes.front(); }
};

// Recursive bipartition: MIS at the root, MDS/MIS alternating by depth. n-1 cuts
// for n blocks. Throws PreconditionError for an invalid floorplan and
// InvariantError if a produced cut is not monotone.
MscTree build_msc_tree(const Floorplan& fp, Balance balance);

enum class RegionKind { Cut, Boundary };

enum class Side { Bottom = 0, Right = 1, Top = 2, Left = 3 };

struct RegionRef {
    RegionKind kind = RegionKind::Cut;
    int index = 0;  // cut index, or a Side for boundary regions

    friend bool operator==(const RegionRef&, const RegionRef&) = default;
};

// A routing segment: the piece of a staircase (or outline) wall between two
// adjacent junctions. Usage is tracked per layer; index 0 is layer 1.
struct Segment {
    int id = 0;
    RegionRef region;
    Span span;
    std::array<int, 2> junctions{-1, -1};  // at span.low_end(), span.high_end()
    int r = 0;                             // reference capacity on the base layer
    std::vector<int> usage;
    int curr_layer = 1;

    Axis axis() const { return span.axis; }
    double length() const { return span.length(); }
    int other_end(int junction) const { return junctions[0] == junction ? junctions[1] : junctions[0]; }
    bool is_boundary() const { return region.kind == RegionKind::Boundary; }
};

// Every cut edge's shared span becomes one or more segments (split at junctions
// on it), followed by the outline walls split at their junctions. Throws
// GeometryError when a span end has no junction.
std::vector<Segment> extract_segments(const MscTree& tree, const Floorplan& fp, std::span<const TJunction> junctions);

// Fills TJunction::incident_segments.
void attach_segments(std::span<TJunction> junctions, std::span<const Segment> segments);

// Cut segments: number of the owning cut's cut nets whose pin bounding box meets the
// segment, at least 1. Boundary segments (owner == nullptr): pins lying on the segment.
int estimate_capacity(const Segment& seg, const MsCut* owner, const Floorplan& fp);

// Sets r on every segment.
void assign_capacities(std::span<Segment> segments, const MscTree& tree, const Floorplan& fp);

std::string msc_tree_text(const MscTree& tree, const Floorplan& fp);
std::string segments_csv(std::span<const Segment> segments);

} // namespace msroute
