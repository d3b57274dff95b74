#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "msroute/floorplan.hpp"

namespace msroute {

// MIS: monotone increasing staircase, MDS: monotone decreasing staircase.
enum class Orientation { MIS, MDS };

inline const char* to_string(Orientation o) { return o == Orientation::MIS ? "MIS" : "MDS"; }
inline Orientation flipped(Orientation o) { return o == Orientation::MIS ? Orientation::MDS : Orientation::MIS; }

enum class Relation { LeftOf, Above, Below };

const char* to_string(Relation r);

// Directed adjacency between two blocks that share a wall of positive length.
struct BagEdge {
    int from = 0;
    int to = 0;
    Relation relation = Relation::LeftOf;
    Span shared_span;
};

// Block adjacency graph. Edges run left-to-right, plus top-to-bottom (MIS) or
// bottom-to-top (MDS). Node ids are block ids; an induced sub-graph keeps them.
class Bag {
public:
    Bag() = default;
    Bag(Orientation orientation, std::vector<int> nodes, std::vector<BagEdge> edges);

    Orientation orientation() const { return orientation_; }
    const std::vector<int>& nodes() const { return nodes_; }
    const std::vector<BagEdge>& edges() const { return edges_; }
    std::size_t size() const { return nodes_.size(); }
    bool contains(int block) const;

    // Indices into edges() leaving / entering `block`.
    const std::vector<int>& out_edges(int block) const;
    const std::vector<int>& in_edges(int block) const;

    Bag induced(std::span<const int> blocks) const;

    // Kahn order, ties by smaller block id; empty optional when a cycle exists.
    std::optional<std::vector<int>> topological_order() const;
    bool is_acyclic() const { return topological_order().has_value(); }

private:
    Orientation orientation_ = Orientation::MIS;
    std::vector<int> nodes_;
    std::vector<BagEdge> edges_;
    std::vector<std::vector<int>> out_;
    std::vector<std::vector<int>> in_;
    std::vector<char> member_;
};

// Throws PreconditionError if the floorplan does not validate.
Bag build_bag(const Floorplan& fp, Orientation orientation);

struct TJunction {
    int id = 0;
    Point position;
    std::vector<int> incident_segments;  // filled in by attach_segments()
    // Floorplan corner: two incident boundary walls instead of three.
    bool on_boundary = false;
};

// Every point where three wall directions meet (2n-2 of them in a mosaic, counting
// internal wall ends on the outline) plus the four outline corners. Sorted by (x, y).
// Throws GeometryError on a "+" crossing.
std::vector<TJunction> enumerate_tjunctions(const Floorplan& fp);

int interior_junction_count(std::span<const TJunction> junctions);

std::string bag_to_dot(const Bag& bag, const Floorplan& fp);

} // namespace msroute
