#include "msroute/staircase.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <numeric>
#include <sstream>

#include "msroute/error.hpp"
#include "msroute/floorplan_io.hpp"

namespace msroute {

namespace {

// Sort key along the staircase: MIS runs bottom-left to top-right, MDS top-left to bottom-right.
double staircase_key(const Span& s, Orientation o) {
    const Point m = s.midpoint();
    return o == Orientation::MIS ? m.x + m.y : m.x - m.y;
}

// Connected pieces of the BAG (ignoring direction) and the pairs (earlier, later) whose
// order a staircase of the BAG's orientation imposes: upper-left before lower-right
// for MIS, lower-left before upper-right for MDS.
std::vector<std::pair<std::vector<int>, std::vector<int>>> ordered_components(const Bag& bag, const Floorplan& fp) {
    std::map<int, int> comp;
    std::vector<std::vector<int>> pieces;
    for (int start : bag.nodes()) {
        if (comp.contains(start)) {
            continue;
        }
        const int id = static_cast<int>(pieces.size());
        pieces.emplace_back();
        std::deque<int> queue{start};
        comp[start] = id;
        while (!queue.empty()) {
            const int b = queue.front();
            queue.pop_front();
            pieces.back().push_back(b);
            auto visit = [&](int other) {
                if (comp.emplace(other, id).second) {
                    queue.push_back(other);
                }
            };
            for (int ei : bag.out_edges(b)) {
                visit(bag.edges()[static_cast<std::size_t>(ei)].to);
            }
            for (int ei : bag.in_edges(b)) {
                visit(bag.edges()[static_cast<std::size_t>(ei)].from);
            }
        }
    }
    std::vector<std::pair<std::vector<int>, std::vector<int>>> out;
    if (pieces.size() < 2) {
        return out;
    }
    const double tol = fp.tolerance();
    std::vector<Rect> box;
    for (const auto& piece : pieces) {
        std::vector<Block> blocks;
        for (int b : piece) {
            blocks.push_back(fp.blocks[static_cast<std::size_t>(b)]);
        }
        box.push_back(bounding_box(blocks));
    }
    for (std::size_t i = 0; i < pieces.size(); ++i) {
        for (std::size_t j = 0; j < pieces.size(); ++j) {
            if (i == j || box[i].xhi() > box[j].xlo() + tol) {
                continue;  // i must lie left of j
            }
            const bool i_below = box[i].yhi() <= box[j].ylo() + tol;
            const bool i_above = box[i].ylo() >= box[j].yhi() - tol;
            if ((bag.orientation() == Orientation::MIS && i_above) || (bag.orientation() == Orientation::MDS && i_below)) {
                out.emplace_back(pieces[i], pieces[j]);
            }
        }
    }
    return out;
}

} // namespace

std::vector<std::vector<int>> propagate_terminals(const Bag& bag, const Floorplan& fp) {
    std::vector<std::vector<int>> out(fp.nets.size());
    for (const Net& net : fp.nets) {
        auto& terms = out.at(static_cast<std::size_t>(net.id));
        for (const Pin& p : net.pins) {
            if (bag.contains(p.block_id)) {
                terms.push_back(p.block_id);
                continue;
            }
            int best = -1;
            double best_d = 0.0;
            for (int b : bag.nodes()) {
                const Rect r = fp.blocks[static_cast<std::size_t>(b)].rect();
                const double dx = std::max({r.xlo() - p.absolute.x, 0.0, p.absolute.x - r.xhi()});
                const double dy = std::max({r.ylo() - p.absolute.y, 0.0, p.absolute.y - r.yhi()});
                const double d = dx * dx + dy * dy;
                if (best < 0 || d < best_d) {
                    best = b;
                    best_d = d;
                }
            }
            if (best >= 0) {
                terms.push_back(best);
            }
        }
    }
    return out;
}

MsCut bipartition(const Bag& bag, const Floorplan& fp, Balance balance) {
    const std::vector<int>& nodes = bag.nodes();
    const std::size_t m = nodes.size();
    if (m < 2) {
        throw PreconditionError("bipartition needs at least 2 blocks");
    }
    const std::size_t nb = fp.blocks.size();

    // Terminals of each net per block. Pins outside the BAG are propagated to the
    // nearest block inside it, so nets passing through the region count as well.
    const std::vector<std::vector<int>> terminals = propagate_terminals(bag, fp);
    std::vector<std::vector<std::pair<int, int>>> block_nets(nb);
    std::vector<int> total(fp.nets.size(), 0);
    for (const Net& net : fp.nets) {
        std::map<int, int> per_block;
        for (int b : terminals[static_cast<std::size_t>(net.id)]) {
            ++per_block[b];
        }
        if (per_block.size() < 2) {
            continue;  // cannot be cut inside this BAG
        }
        for (const auto& [b, c] : per_block) {
            block_nets[static_cast<std::size_t>(b)].emplace_back(net.id, c);
            total[static_cast<std::size_t>(net.id)] += c;
        }
    }

    std::vector<int> in_left(fp.nets.size(), 0);
    auto delta_of = [&](int b) {
        int delta = 0;
        for (const auto& [net, c] : block_nets[static_cast<std::size_t>(b)]) {
            const int s = in_left[static_cast<std::size_t>(net)];
            const int t = total[static_cast<std::size_t>(net)];
            const bool before = s > 0 && s < t;
            const bool after = s + c > 0 && s + c < t;
            delta += static_cast<int>(after) - static_cast<int>(before);
        }
        return delta;
    };

    std::vector<int> indeg(nb, 0);
    for (int b : nodes) {
        indeg[static_cast<std::size_t>(b)] = static_cast<int>(bag.in_edges(b).size());
    }
    // A node can consist of several pieces that only meet diagonally. Growing two of
    // them at once would leave two staircases, so pieces are ordered along the
    // staircase direction and a later piece only opens once the earlier is absorbed.
    std::vector<std::vector<int>> extra_out(nb);
    for (const auto& [before, after] : ordered_components(bag, fp)) {
        for (int s : before) {
            if (!bag.out_edges(s).empty()) {
                continue;  // only sinks of the earlier piece
            }
            for (int t : after) {
                if (bag.in_edges(t).empty()) {
                    extra_out[static_cast<std::size_t>(s)].push_back(t);
                    ++indeg[static_cast<std::size_t>(t)];
                }
            }
        }
    }
    std::vector<char> absorbed(nb, 0);
    std::vector<int> frontier;
    for (int b : nodes) {
        if (indeg[static_cast<std::size_t>(b)] == 0) {
            frontier.push_back(b);
        }
    }

    double area_total = 0.0;
    for (int b : nodes) {
        area_total += fp.blocks[static_cast<std::size_t>(b)].area();
    }
    double area_left = 0.0;
    std::size_t count = 0;
    const std::size_t target = m / 2;

    auto absorb = [&](int b) {
        absorbed[static_cast<std::size_t>(b)] = 1;
        frontier.erase(std::find(frontier.begin(), frontier.end(), b));
        for (const auto& [net, c] : block_nets[static_cast<std::size_t>(b)]) {
            in_left[static_cast<std::size_t>(net)] += c;
        }
        auto release = [&](int to) {
            if (--indeg[static_cast<std::size_t>(to)] == 0) {
                frontier.push_back(to);
            }
        };
        for (int ei : bag.out_edges(b)) {
            release(bag.edges()[static_cast<std::size_t>(ei)].to);
        }
        for (int to : extra_out[static_cast<std::size_t>(b)]) {
            release(to);
        }
        area_left += fp.blocks[static_cast<std::size_t>(b)].area();
        ++count;
    };

    while (true) {
        if (frontier.empty()) {
            throw InvariantError("staircase growth stalled: the BAG has a cycle");
        }
        int best = -1, best_delta = 0;
        for (int b : frontier) {
            const int d = delta_of(b);
            if (best < 0 || d < best_delta || (d == best_delta && b < best)) {
                best = b;
                best_delta = d;
            }
        }
        if (balance == Balance::Number) {
            absorb(best);
            if (count == target) {
                break;
            }
            continue;
        }
        const double a = fp.blocks[static_cast<std::size_t>(best)].area();
        if (count >= 1 && area_left + a >= area_total / 2.0) {
            const double without = area_total - 2.0 * area_left;
            const double with = std::abs(2.0 * (area_left + a) - area_total);
            if (with < without && count + 1 <= m - 1) {
                absorb(best);
            }
            break;
        }
        absorb(best);
        if (count == m - 1) {
            break;
        }
    }

    MsCut cut;
    cut.orientation = bag.orientation();
    for (int b : nodes) {
        (absorbed[static_cast<std::size_t>(b)] ? cut.left_set : cut.right_set).push_back(b);
    }
    for (const BagEdge& e : bag.edges()) {
        const bool from_left = absorbed[static_cast<std::size_t>(e.from)];
        const bool to_left = absorbed[static_cast<std::size_t>(e.to)];
        if (from_left && !to_left) {
            cut.cut_edges.push_back(e);
        } else if (!from_left && to_left) {
            throw InvariantError("left side of a staircase cut is not predecessor-closed");
        }
    }
    std::stable_sort(cut.cut_edges.begin(), cut.cut_edges.end(), [&](const BagEdge& x, const BagEdge& y) {
        return staircase_key(x.shared_span, cut.orientation) < staircase_key(y.shared_span, cut.orientation);
    });
    for (const Net& net : fp.nets) {
        bool l = false, r = false;
        for (int b : terminals[static_cast<std::size_t>(net.id)]) {
            (absorbed[static_cast<std::size_t>(b)] ? l : r) = true;
        }
        if (l && r) {
            cut.cut_nets.push_back(net.id);
        }
    }
    return cut;
}

bool is_monotone(const MsCut& cut, double tol) {
    for (std::size_t i = 1; i < cut.cut_edges.size(); ++i) {
        const Span& prev = cut.cut_edges[i - 1].shared_span;
        const Span& next = cut.cut_edges[i].shared_span;
        if (next.xlo() < prev.xhi() - tol) {
            return false;
        }
        if (cut.orientation == Orientation::MIS ? next.ylo() < prev.yhi() - tol : next.yhi() > prev.ylo() + tol) {
            return false;
        }
    }
    return true;
}

std::size_t MscTree::leaf_count() const {
    return static_cast<std::size_t>(std::count_if(nodes.begin(), nodes.end(), [](const MscNode& n) { return n.is_leaf(); }));
}

MscTree build_msc_tree(const Floorplan& fp, Balance balance) {
    const Bag mis = build_bag(fp, Orientation::MIS);
    const Bag mds = build_bag(fp, Orientation::MDS);
    const double tol = fp.tolerance();

    MscTree tree;
    MscNode root;
    root.blocks.resize(fp.blocks.size());
    std::iota(root.blocks.begin(), root.blocks.end(), 0);
    tree.nodes.push_back(std::move(root));

    for (std::size_t i = 0; i < tree.nodes.size(); ++i) {
        if (tree.nodes[i].blocks.size() < 2) {
            continue;
        }
        const Orientation o = tree.nodes[i].depth % 2 == 0 ? Orientation::MIS : Orientation::MDS;
        const Bag sub = (o == Orientation::MIS ? mis : mds).induced(tree.nodes[i].blocks);
        MsCut cut = bipartition(sub, fp, balance);
        if (!is_monotone(cut, tol)) {
            throw InvariantError(std::string("bipartition produced a non-monotone ") + to_string(o) + " cut");
        }
        const int depth = tree.nodes[i].depth;
        MscNode left, right;
        left.blocks = cut.left_set;
        right.blocks = cut.right_set;
        left.parent = right.parent = static_cast<int>(i);
        left.depth = right.depth = depth + 1;
        tree.nodes[i].cut = static_cast<int>(tree.cuts.size());
        tree.cut_node.push_back(static_cast<int>(i));
        tree.cuts.push_back(std::move(cut));
        tree.nodes[i].left = static_cast<int>(tree.nodes.size());
        tree.nodes.push_back(std::move(left));
        tree.nodes[i].right = static_cast<int>(tree.nodes.size());
        tree.nodes.push_back(std::move(right));
    }
    return tree;
}

std::vector<Segment> extract_segments(const MscTree& tree, const Floorplan& fp, std::span<const TJunction> junctions) {
    const double tol = fp.tolerance();
    const double q = fp.quantum();

    std::map<PointKey, int> at;
    // Junction positions along each vertical (x fixed) and horizontal (y fixed) line.
    std::map<std::int64_t, std::vector<std::pair<double, int>>> on_vline, on_hline;
    for (const TJunction& j : junctions) {
        at.emplace(key_of(j.position, q), j.id);
        on_vline[quantize(j.position.x, q)].emplace_back(j.position.y, j.id);
        on_hline[quantize(j.position.y, q)].emplace_back(j.position.x, j.id);
    }
    for (auto* lines : {&on_vline, &on_hline}) {
        for (auto& [k, v] : *lines) {
            std::sort(v.begin(), v.end());
        }
    }

    auto junction_at = [&](const Point& p) {
        auto it = at.find(key_of(p, q));
        if (it == at.end()) {
            std::ostringstream os;
            os << "no junction bounds the wall end at (" << p.x << ", " << p.y << ")";
            throw GeometryError(os.str());
        }
        return it->second;
    };

    std::vector<Segment> out;
    auto emit = [&](const Span& span, RegionRef region) {
        const auto& line = (span.axis == Axis::V ? on_vline : on_hline)[quantize(span.fixed, q)];
        const int first = junction_at(span.low_end());
        const int last = junction_at(span.high_end());
        int prev = first;
        double prev_pos = span.lo;
        auto close = [&](double pos, int j) {
            Segment s;
            s.id = static_cast<int>(out.size());
            s.region = region;
            s.span = {span.axis, span.fixed, prev_pos, pos};
            s.junctions = {prev, j};
            out.push_back(std::move(s));
            prev = j;
            prev_pos = pos;
        };
        for (const auto& [pos, j] : line) {
            if (pos > span.lo + tol && pos < span.hi - tol) {
                close(pos, j);
            }
        }
        close(span.hi, last);
    };

    for (std::size_t c = 0; c < tree.cuts.size(); ++c) {
        for (const BagEdge& e : tree.cuts[c].cut_edges) {
            emit(e.shared_span, {RegionKind::Cut, static_cast<int>(c)});
        }
    }

    const Rect& box = fp.outline;
    const Span sides[4] = {
        {Axis::H, box.ylo(), box.xlo(), box.xhi()},
        {Axis::V, box.xhi(), box.ylo(), box.yhi()},
        {Axis::H, box.yhi(), box.xlo(), box.xhi()},
        {Axis::V, box.xlo(), box.ylo(), box.yhi()},
    };
    for (int s = 0; s < 4; ++s) {
        emit(sides[s], {RegionKind::Boundary, s});
    }

    for (const Segment& s : out) {
        if (!(s.length() > tol)) {
            throw GeometryError("zero-length segment extracted");
        }
    }
    return out;
}

void attach_segments(std::span<TJunction> junctions, std::span<const Segment> segments) {
    for (TJunction& j : junctions) {
        j.incident_segments.clear();
    }
    for (const Segment& s : segments) {
        for (int j : s.junctions) {
            junctions[static_cast<std::size_t>(j)].incident_segments.push_back(s.id);
        }
    }
}

int estimate_capacity(const Segment& seg, const MsCut* owner, const Floorplan& fp) {
    const double tol = fp.tolerance();
    if (owner == nullptr) {
        int pins = 0;
        for (const Net& net : fp.nets) {
            for (const Pin& p : net.pins) {
                if (seg.span.distance_to(p.absolute) <= tol) {
                    ++pins;
                }
            }
        }
        return pins;
    }
    int hits = 0;
    for (int id : owner->cut_nets) {
        const Net& net = fp.nets.at(static_cast<std::size_t>(id));
        double xlo = net.pins.front().absolute.x, xhi = xlo;
        double ylo = net.pins.front().absolute.y, yhi = ylo;
        for (const Pin& p : net.pins) {
            xlo = std::min(xlo, p.absolute.x);
            xhi = std::max(xhi, p.absolute.x);
            ylo = std::min(ylo, p.absolute.y);
            yhi = std::max(yhi, p.absolute.y);
        }
        const Span& s = seg.span;
        if (s.xhi() >= xlo - tol && s.xlo() <= xhi + tol && s.yhi() >= ylo - tol && s.ylo() <= yhi + tol) {
            ++hits;
        }
    }
    return std::max(1, hits);
}

void assign_capacities(std::span<Segment> segments, const MscTree& tree, const Floorplan& fp) {
    for (Segment& s : segments) {
        const MsCut* owner = s.region.kind == RegionKind::Cut ? &tree.cuts.at(static_cast<std::size_t>(s.region.index)) : nullptr;
        s.r = estimate_capacity(s, owner, fp);
    }
}

std::string msc_tree_text(const MscTree& tree, const Floorplan& fp) {
    std::ostringstream os;
    auto walk = [&](auto&& self, int idx) -> void {
        const MscNode& node = tree.nodes[static_cast<std::size_t>(idx)];
        os << std::string(static_cast<std::size_t>(node.depth) * 2, ' ');
        if (node.is_leaf()) {
            os << fp.blocks.at(static_cast<std::size_t>(node.blocks.front())).name << "\n";
            return;
        }
        const MsCut& cut = tree.cuts[static_cast<std::size_t>(node.cut)];
        os << "cut " << node.cut << " " << to_string(cut.orientation) << " blocks=" << node.blocks.size()
           << " left=" << cut.left_set.size() << " right=" << cut.right_set.size() << " edges=" << cut.cut_edges.size()
           << " cut_nets=" << cut.cut_nets.size() << "\n";
        self(self, node.left);
        self(self, node.right);
    };
    if (!tree.nodes.empty()) {
        walk(walk, 0);
    }
    return os.str();
}

std::string segments_csv(std::span<const Segment> segments) {
    std::string out = "id,axis,fixed,lo,hi,r\n";
    for (const Segment& s : segments) {
        out += std::to_string(s.id) + "," + to_string(s.axis()) + "," + format_fixed(s.span.fixed) + "," +
               format_fixed(s.span.lo) + "," + format_fixed(s.span.hi) + "," + std::to_string(s.r) + "\n";
    }
    return out;
}

} // namespace msroute
