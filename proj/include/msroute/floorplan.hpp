#pragma once

#include <span>
#include <string>
#include <vector>

#include "msroute/geometry.hpp"

namespace msroute {

struct Block {
    int id = 0;
    std::string name;
    double x = 0.0;  // lower-left corner
    double y = 0.0;
    double width = 0.0;
    double height = 0.0;
    bool placed = false;

    Rect rect() const { return {x, y, width, height}; }
    Point center() const { return rect().center(); }
    double area() const { return width * height; }
};

struct Pin {
    int net_id = 0;
    int block_id = 0;
    double dx = 0.0;  // declared offset from the block center
    double dy = 0.0;
    Point absolute;   // center + offset, clamped to the block
};

struct Net {
    int id = 0;
    std::string name;
    std::vector<Pin> pins;
    double hpwl = 0.0;

    int degree() const { return static_cast<int>(pins.size()); }
};

struct Floorplan {
    Rect outline;
    std::vector<Block> blocks;
    std::vector<Net> nets;

    int block_count() const { return static_cast<int>(blocks.size()); }
    // Geometric tolerance: 1e-6 of the outline diagonal.
    double tolerance() const;
    double quantum() const { return snap_quantum(tolerance()); }
};

// Absolute pin position: block center plus offset, clamped onto the block rectangle.
Point pin_position(const Block& block, double dx, double dy);

// Half-perimeter of the pin bounding box. Throws InvalidNetError for degree < 2.
double compute_hpwl(const Net& net);
double compute_hpwl(std::span<const Point> points);

// Outline = bounding box of all placed blocks.
Rect bounding_box(std::span<const Block> blocks);

enum class ViolationKind { NonPositiveSize, Unplaced, OutOfBounds, Overlap, Coverage, Crossing };

const char* to_string(ViolationKind kind);

struct Violation {
    ViolationKind kind;
    Point where;
    std::string detail;
};

struct ValidationReport {
    std::vector<Violation> violations;

    bool passed() const { return violations.empty(); }
    bool has(ViolationKind kind) const;
    std::string summary() const;
};

// Checks the mosaic assumptions: positive sizes, blocks inside the outline,
// no interior overlap, full coverage of the outline and no point where four
// blocks meet.
ValidationReport validate_floorplan(const Floorplan& fp);

// Throws PreconditionError naming the first violation when validation fails.
void require_valid(const Floorplan& fp);

} // namespace msroute
