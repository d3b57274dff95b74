#include "msroute/generator.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <random>
#include <set>

#include "msroute/error.hpp"

namespace msroute {

namespace {

// Distribution helpers written out so results do not depend on the standard
// library's distribution implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    std::size_t below(std::size_t n) { return static_cast<std::size_t>(engine_() % n); }

private:
    std::mt19937_64 engine_;
};

constexpr double kMinSide = 4.0;

// Integer cut coordinate inside (lo, hi), away from every coordinate already used on that axis.
std::optional<double> pick_cut(Rng& rng, double lo, double hi, std::set<double>& used) {
    if (hi - lo < kMinSide) {
        return std::nullopt;
    }
    for (int attempt = 0; attempt < 64; ++attempt) {
        const double c = std::round(lo + (hi - lo) * (0.25 + 0.5 * rng.uniform01()));
        if (c - lo < kMinSide / 2 || hi - c < kMinSide / 2 || used.contains(c)) {
            continue;
        }
        used.insert(c);
        return c;
    }
    return std::nullopt;
}

int draw_degree(Rng& rng, const GeneratorOptions& o, int n) {
    const int top = std::max(2, std::min(o.max_degree, n));
    double total = 0.0;
    std::vector<double> weights;
    for (int d = 2; d <= top; ++d) {
        weights.push_back(std::pow(o.degree_decay, d - 2));
        total += weights.back();
    }
    double u = rng.uniform01() * total;
    for (int d = 2; d <= top; ++d) {
        u -= weights[static_cast<std::size_t>(d - 2)];
        if (u < 0.0) {
            return d;
        }
    }
    return top;
}

} // namespace

Floorplan generate_random_floorplan(const GeneratorOptions& o) {
    if (o.blocks < 2 || o.nets < 1 || o.max_degree < 2) {
        throw PreconditionError("generator needs blocks >= 2, nets >= 1 and max_degree >= 2");
    }
    Rng rng(o.seed);
    const double side = 200.0 * std::ceil(std::sqrt(static_cast<double>(o.blocks)));

    std::set<double> used_x{0.0, side}, used_y{0.0, side};
    std::vector<Rect> rects{{0.0, 0.0, side, side}};
    std::vector<bool> splittable{true};

    while (static_cast<int>(rects.size()) < o.blocks) {
        double total = 0.0;
        for (std::size_t i = 0; i < rects.size(); ++i) {
            if (splittable[i]) {
                total += rects[i].area();
            }
        }
        if (total <= 0.0) {
            throw InvariantError("generator ran out of splittable blocks");
        }
        double u = rng.uniform01() * total;
        std::size_t pick = 0;
        for (std::size_t i = 0; i < rects.size(); ++i) {
            if (!splittable[i]) {
                continue;
            }
            pick = i;
            u -= rects[i].area();
            if (u < 0.0) {
                break;
            }
        }

        const Rect r = rects[pick];
        bool vertical_first = r.width > r.height || (r.width == r.height && rng.uniform01() < 0.5);
        bool done = false;
        for (int pass = 0; pass < 2 && !done; ++pass) {
            const bool vertical = (pass == 0) == vertical_first;
            if (vertical) {
                if (auto c = pick_cut(rng, r.xlo(), r.xhi(), used_x)) {
                    rects[pick] = {r.x, r.y, *c - r.x, r.height};
                    rects.push_back({*c, r.y, r.xhi() - *c, r.height});
                    done = true;
                }
            } else if (auto c = pick_cut(rng, r.ylo(), r.yhi(), used_y)) {
                rects[pick] = {r.x, r.y, r.width, *c - r.y};
                rects.push_back({r.x, *c, r.width, r.yhi() - *c});
                done = true;
            }
        }
        if (done) {
            splittable.push_back(true);
        } else {
            splittable[pick] = false;
        }
    }

    std::sort(rects.begin(), rects.end(), [](const Rect& a, const Rect& b) {
        return a.x != b.x ? a.x < b.x : a.y < b.y;
    });

    std::vector<Block> blocks;
    blocks.reserve(rects.size());
    for (const Rect& r : rects) {
        Block b;
        b.id = static_cast<int>(blocks.size());
        b.name = "bk" + std::to_string(b.id + 1);
        b.x = r.x;
        b.y = r.y;
        b.width = r.width;
        b.height = r.height;
        b.placed = true;
        blocks.push_back(std::move(b));
    }

    std::vector<Net> nets;
    nets.reserve(static_cast<std::size_t>(o.nets));
    for (int k = 0; k < o.nets; ++k) {
        Net net;
        net.id = k;
        net.name = "n" + std::to_string(k);
        const int degree = draw_degree(rng, o, o.blocks);
        std::vector<int> chosen;
        while (static_cast<int>(chosen.size()) < degree) {
            const int b = static_cast<int>(rng.below(blocks.size()));
            if (std::find(chosen.begin(), chosen.end(), b) == chosen.end()) {
                chosen.push_back(b);
            }
        }
        for (int b : chosen) {
            Pin p;
            p.net_id = k;
            p.block_id = b;
            net.pins.push_back(p);
        }
        nets.push_back(std::move(net));
    }

    Floorplan fp;
    fp.outline = {0.0, 0.0, side, side};
    fp.blocks = std::move(blocks);
    fp.nets = std::move(nets);
    for (Net& n : fp.nets) {
        for (Pin& p : n.pins) {
            p.absolute = pin_position(fp.blocks[static_cast<std::size_t>(p.block_id)], p.dx, p.dy);
        }
        n.hpwl = compute_hpwl(n);
    }
    return fp;
}

} // namespace msroute
