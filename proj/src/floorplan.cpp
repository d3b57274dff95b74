#include "msroute/floorplan.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <sstream>

#include "msroute/error.hpp"

namespace msroute {

double Floorplan::tolerance() const {
    const double diag = outline.diagonal();
    return diag > 0.0 ? 1e-6 * diag : 1e-9;
}

Point pin_position(const Block& block, double dx, double dy) {
    const Point c = block.center();
    return {std::clamp(c.x + dx, block.x, block.x + block.width),
            std::clamp(c.y + dy, block.y, block.y + block.height)};
}

double compute_hpwl(std::span<const Point> points) {
    if (points.empty()) {
        return 0.0;
    }
    double xmin = points.front().x, xmax = xmin;
    double ymin = points.front().y, ymax = ymin;
    for (const Point& p : points) {
        xmin = std::min(xmin, p.x);
        xmax = std::max(xmax, p.x);
        ymin = std::min(ymin, p.y);
        ymax = std::max(ymax, p.y);
    }
    return (xmax - xmin) + (ymax - ymin);
}

double compute_hpwl(const Net& net) {
    if (net.degree() < 2) {
        throw InvalidNetError("net '" + net.name + "' has degree " + std::to_string(net.degree()) +
                              ", hpwl needs at least 2 pins");
    }
    std::vector<Point> pts;
    pts.reserve(net.pins.size());
    for (const Pin& p : net.pins) {
        pts.push_back(p.absolute);
    }
    return compute_hpwl(pts);
}

Rect bounding_box(std::span<const Block> blocks) {
    if (blocks.empty()) {
        return {};
    }
    double xlo = std::numeric_limits<double>::max(), ylo = xlo;
    double xhi = std::numeric_limits<double>::lowest(), yhi = xhi;
    for (const Block& b : blocks) {
        xlo = std::min(xlo, b.x);
        ylo = std::min(ylo, b.y);
        xhi = std::max(xhi, b.x + b.width);
        yhi = std::max(yhi, b.y + b.height);
    }
    return {xlo, ylo, xhi - xlo, yhi - ylo};
}

const char* to_string(ViolationKind kind) {
    switch (kind) {
    case ViolationKind::NonPositiveSize: return "non-positive-size";
    case ViolationKind::Unplaced: return "unplaced";
    case ViolationKind::OutOfBounds: return "out-of-bounds";
    case ViolationKind::Overlap: return "overlap";
    case ViolationKind::Coverage: return "coverage";
    case ViolationKind::Crossing: return "crossing";
    }
    return "?";
}

bool ValidationReport::has(ViolationKind kind) const {
    return std::any_of(violations.begin(), violations.end(), [&](const Violation& v) { return v.kind == kind; });
}

std::string ValidationReport::summary() const {
    if (passed()) {
        return "PASS";
    }
    std::ostringstream os;
    os << "FAIL";
    for (const Violation& v : violations) {
        os << "\n  " << to_string(v.kind) << " at (" << v.where.x << ", " << v.where.y << "): " << v.detail;
    }
    return os.str();
}

ValidationReport validate_floorplan(const Floorplan& fp) {
    ValidationReport report;
    auto add = [&](ViolationKind kind, Point where, std::string detail) {
        report.violations.push_back({kind, where, std::move(detail)});
    };

    const double tol = fp.tolerance();
    const Rect& box = fp.outline;

    for (const Block& b : fp.blocks) {
        if (!b.placed) {
            add(ViolationKind::Unplaced, {b.x, b.y}, "block " + b.name + " has no placement");
        }
        if (!(b.width > 0.0) || !(b.height > 0.0)) {
            add(ViolationKind::NonPositiveSize, {b.x, b.y}, "block " + b.name + " has non-positive size");
            continue;
        }
        if (b.x < box.xlo() - tol || b.y < box.ylo() - tol || b.x + b.width > box.xhi() + tol ||
            b.y + b.height > box.yhi() + tol) {
            add(ViolationKind::OutOfBounds, {b.x, b.y}, "block " + b.name + " leaves the outline");
        }
    }

    double area_sum = 0.0;
    for (std::size_t i = 0; i < fp.blocks.size(); ++i) {
        const Block& a = fp.blocks[i];
        area_sum += a.area();
        for (std::size_t j = i + 1; j < fp.blocks.size(); ++j) {
            const Block& b = fp.blocks[j];
            const double ox = std::min(a.x + a.width, b.x + b.width) - std::max(a.x, b.x);
            const double oy = std::min(a.y + a.height, b.y + b.height) - std::max(a.y, b.y);
            if (ox > tol && oy > tol) {
                add(ViolationKind::Overlap, {std::max(a.x, b.x), std::max(a.y, b.y)},
                    "blocks " + a.name + " and " + b.name + " overlap");
            }
        }
    }

    const double area_tol = tol * 2.0 * (box.width + box.height);
    if (!fp.blocks.empty() && std::abs(area_sum - box.area()) > area_tol) {
        std::ostringstream os;
        os << "block area " << area_sum << " differs from outline area " << box.area();
        add(ViolationKind::Coverage, {box.x, box.y}, os.str());
    }

    // In a dissection without "+" points, every point is a corner of at most two blocks.
    const double q = fp.quantum();
    std::map<PointKey, std::pair<Point, int>> corners;
    for (const Block& b : fp.blocks) {
        const Rect r = b.rect();
        for (Point p : {Point{r.xlo(), r.ylo()}, Point{r.xhi(), r.ylo()}, Point{r.xlo(), r.yhi()}, Point{r.xhi(), r.yhi()}}) {
            auto [it, inserted] = corners.try_emplace(key_of(p, q), p, 0);
            ++it->second.second;
        }
    }
    for (const auto& [key, entry] : corners) {
        if (entry.second >= 4) {
            add(ViolationKind::Crossing, entry.first, "four blocks meet at one point");
        }
    }
    return report;
}

void require_valid(const Floorplan& fp) {
    const ValidationReport report = validate_floorplan(fp);
    if (!report.passed()) {
        const Violation& v = report.violations.front();
        std::ostringstream os;
        os << "floorplan is not a valid mosaic: " << to_string(v.kind) << " at (" << v.where.x << ", " << v.where.y
           << "): " << v.detail;
        throw PreconditionError(os.str());
    }
}

} // namespace msroute
