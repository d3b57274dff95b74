#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <utility>

namespace msroute {

struct Point {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Point&, const Point&) = default;
};

inline double manhattan(const Point& a, const Point& b) {
    return std::abs(a.x - b.x) + std::abs(a.y - b.y);
}

struct Rect {
    double x = 0.0;
    double y = 0.0;
    double width = 0.0;
    double height = 0.0;

    double xlo() const { return x; }
    double ylo() const { return y; }
    double xhi() const { return x + width; }
    double yhi() const { return y + height; }
    double area() const { return width * height; }
    double diagonal() const { return std::hypot(width, height); }
    Point center() const { return {x + width / 2.0, y + height / 2.0}; }

    bool contains(const Point& p, double tol) const {
        return p.x >= xlo() - tol && p.x <= xhi() + tol && p.y >= ylo() - tol && p.y <= yhi() + tol;
    }
};

// Orientation of a wall or routing segment: H runs along x, V runs along y.
enum class Axis { H, V };

inline const char* to_string(Axis a) { return a == Axis::H ? "H" : "V"; }

// Axis-aligned line piece: for H, `fixed` is y and [lo, hi] spans x; for V the reverse.
struct Span {
    Axis axis = Axis::H;
    double fixed = 0.0;
    double lo = 0.0;
    double hi = 0.0;

    double length() const { return hi - lo; }
    Point low_end() const { return axis == Axis::H ? Point{lo, fixed} : Point{fixed, lo}; }
    Point high_end() const { return axis == Axis::H ? Point{hi, fixed} : Point{fixed, hi}; }
    double xlo() const { return axis == Axis::H ? lo : fixed; }
    double xhi() const { return axis == Axis::H ? hi : fixed; }
    double ylo() const { return axis == Axis::H ? fixed : lo; }
    double yhi() const { return axis == Axis::H ? fixed : hi; }
    Point midpoint() const { return {(xlo() + xhi()) / 2.0, (ylo() + yhi()) / 2.0}; }

    // Euclidean distance from p to the closest point of the span.
    double distance_to(const Point& p) const {
        const double along = axis == Axis::H ? p.x : p.y;
        const double across = axis == Axis::H ? p.y : p.x;
        const double d_along = along < lo ? lo - along : (along > hi ? along - hi : 0.0);
        return std::hypot(d_along, across - fixed);
    }
};

// Power-of-ten grid no coarser than `tol`. Coordinates written with a few
// decimals land exactly on it, which keeps rounding away from half-steps.
inline double snap_quantum(double tol) { return std::pow(10.0, std::floor(std::log10(tol))); }

// Quantized key for coordinate lookups on a snap_quantum grid.
struct PointKey {
    std::int64_t x;
    std::int64_t y;

    friend auto operator<=>(const PointKey&, const PointKey&) = default;
};

inline std::int64_t quantize(double v, double quantum) {
    return static_cast<std::int64_t>(std::llround(v / quantum));
}

inline PointKey key_of(const Point& p, double quantum) { return {quantize(p.x, quantum), quantize(p.y, quantum)}; }

} // namespace msroute
