#include "msroute/adjacency.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <sstream>

#include "msroute/error.hpp"

namespace msroute {

const char* to_string(Relation r) {
    switch (r) {
    case Relation::LeftOf: return "LEFT_OF";
    case Relation::Above: return "ABOVE";
    case Relation::Below: return "BELOW";
    }
    return "?";
}

Bag::Bag(Orientation orientation, std::vector<int> nodes, std::vector<BagEdge> edges)
    : orientation_(orientation), nodes_(std::move(nodes)), edges_(std::move(edges)) {
    std::sort(nodes_.begin(), nodes_.end());
    const int top = nodes_.empty() ? 0 : nodes_.back() + 1;
    out_.assign(static_cast<std::size_t>(top), {});
    in_.assign(static_cast<std::size_t>(top), {});
    member_.assign(static_cast<std::size_t>(top), 0);
    for (int b : nodes_) {
        member_[static_cast<std::size_t>(b)] = 1;
    }
    for (std::size_t i = 0; i < edges_.size(); ++i) {
        const BagEdge& e = edges_[i];
        if (!contains(e.from) || !contains(e.to)) {
            throw InvariantError("BAG edge references a block outside the node set");
        }
        out_[static_cast<std::size_t>(e.from)].push_back(static_cast<int>(i));
        in_[static_cast<std::size_t>(e.to)].push_back(static_cast<int>(i));
    }
}

bool Bag::contains(int block) const {
    return block >= 0 && static_cast<std::size_t>(block) < member_.size() && member_[static_cast<std::size_t>(block)];
}

const std::vector<int>& Bag::out_edges(int block) const { return out_.at(static_cast<std::size_t>(block)); }
const std::vector<int>& Bag::in_edges(int block) const { return in_.at(static_cast<std::size_t>(block)); }

Bag Bag::induced(std::span<const int> blocks) const {
    std::vector<char> keep(member_.size(), 0);
    for (int b : blocks) {
        if (!contains(b)) {
            throw PreconditionError("induced sub-BAG requested for a block outside the BAG");
        }
        keep[static_cast<std::size_t>(b)] = 1;
    }
    std::vector<BagEdge> sub;
    for (const BagEdge& e : edges_) {
        if (keep[static_cast<std::size_t>(e.from)] && keep[static_cast<std::size_t>(e.to)]) {
            sub.push_back(e);
        }
    }
    return Bag(orientation_, std::vector<int>(blocks.begin(), blocks.end()), std::move(sub));
}

std::optional<std::vector<int>> Bag::topological_order() const {
    std::vector<int> indeg(member_.size(), 0);
    for (const BagEdge& e : edges_) {
        ++indeg[static_cast<std::size_t>(e.to)];
    }
    std::priority_queue<int, std::vector<int>, std::greater<>> ready;
    for (int b : nodes_) {
        if (indeg[static_cast<std::size_t>(b)] == 0) {
            ready.push(b);
        }
    }
    std::vector<int> order;
    order.reserve(nodes_.size());
    while (!ready.empty()) {
        const int b = ready.top();
        ready.pop();
        order.push_back(b);
        for (int ei : out_edges(b)) {
            const int to = edges_[static_cast<std::size_t>(ei)].to;
            if (--indeg[static_cast<std::size_t>(to)] == 0) {
                ready.push(to);
            }
        }
    }
    if (order.size() != nodes_.size()) {
        return std::nullopt;
    }
    return order;
}

Bag build_bag(const Floorplan& fp, Orientation orientation) {
    require_valid(fp);
    const double tol = fp.tolerance();
    std::vector<BagEdge> edges;
    std::vector<int> nodes;
    for (const Block& a : fp.blocks) {
        nodes.push_back(a.id);
    }
    for (const Block& a : fp.blocks) {
        const Rect ra = a.rect();
        for (const Block& b : fp.blocks) {
            if (a.id == b.id) {
                continue;
            }
            const Rect rb = b.rect();
            if (std::abs(ra.xhi() - rb.xlo()) <= tol) {
                const double lo = std::max(ra.ylo(), rb.ylo());
                const double hi = std::min(ra.yhi(), rb.yhi());
                if (hi - lo > tol) {
                    edges.push_back({a.id, b.id, Relation::LeftOf, {Axis::V, ra.xhi(), lo, hi}});
                }
            }
            // a sits directly above b
            if (std::abs(ra.ylo() - rb.yhi()) <= tol) {
                const double lo = std::max(ra.xlo(), rb.xlo());
                const double hi = std::min(ra.xhi(), rb.xhi());
                if (hi - lo > tol) {
                    const Span span{Axis::H, ra.ylo(), lo, hi};
                    if (orientation == Orientation::MIS) {
                        edges.push_back({a.id, b.id, Relation::Above, span});
                    } else {
                        edges.push_back({b.id, a.id, Relation::Below, span});
                    }
                }
            }
        }
    }
    std::sort(edges.begin(), edges.end(), [](const BagEdge& x, const BagEdge& y) {
        return x.from != y.from ? x.from < y.from : x.to < y.to;
    });
    return Bag(orientation, std::move(nodes), std::move(edges));
}

std::vector<TJunction> enumerate_tjunctions(const Floorplan& fp) {
    const double q = fp.quantum();
    const double tol = fp.tolerance();
    std::map<PointKey, std::pair<Point, int>> corners;
    for (const Block& b : fp.blocks) {
        const Rect r = b.rect();
        for (Point p : {Point{r.xlo(), r.ylo()}, Point{r.xhi(), r.ylo()}, Point{r.xlo(), r.yhi()}, Point{r.xhi(), r.yhi()}}) {
            auto [it, inserted] = corners.try_emplace(key_of(p, q), p, 0);
            ++it->second.second;
        }
    }

    const Rect& box = fp.outline;
    auto is_outline_corner = [&](const Point& p) {
        const bool on_x = std::abs(p.x - box.xlo()) <= tol || std::abs(p.x - box.xhi()) <= tol;
        const bool on_y = std::abs(p.y - box.ylo()) <= tol || std::abs(p.y - box.yhi()) <= tol;
        return on_x && on_y;
    };

    std::vector<TJunction> out;
    for (const auto& [key, entry] : corners) {
        const auto& [p, count] = entry;
        std::ostringstream where;
        where << "(" << p.x << ", " << p.y << ")";
        if (count >= 4) {
            throw GeometryError("\"+\" crossing: four blocks meet at " + where.str());
        }
        if (count == 3) {
            throw GeometryError("three block corners meet at " + where.str() + "; floorplan is not a dissection");
        }
        TJunction j;
        j.position = p;
        if (count == 1) {
            if (!is_outline_corner(p)) {
                throw GeometryError("isolated block corner at " + where.str() + "; floorplan is not a dissection");
            }
            j.on_boundary = true;
        }
        out.push_back(std::move(j));
    }
    std::sort(out.begin(), out.end(), [](const TJunction& a, const TJunction& b) {
        return a.position.x != b.position.x ? a.position.x < b.position.x : a.position.y < b.position.y;
    });
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i].id = static_cast<int>(i);
    }
    return out;
}

int interior_junction_count(std::span<const TJunction> junctions) {
    return static_cast<int>(std::count_if(junctions.begin(), junctions.end(),
                                          [](const TJunction& j) { return !j.on_boundary; }));
}

std::string bag_to_dot(const Bag& bag, const Floorplan& fp) {
    std::ostringstream os;
    os << "digraph bag_" << to_string(bag.orientation()) << " {\n";
    for (int b : bag.nodes()) {
        const Block& blk = fp.blocks.at(static_cast<std::size_t>(b));
        os << "  b" << b << " [label=\"" << blk.name << "\"];\n";
    }
    for (const BagEdge& e : bag.edges()) {
        os << "  b" << e.from << " -> b" << e.to << " [label=\"" << to_string(e.relation) << "\"];\n";
    }
    os << "}\n";
    return os.str();
}

} // namespace msroute
