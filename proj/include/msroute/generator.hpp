#pragma once

#include <cstdint>

#include "msroute/floorplan.hpp"

namespace msroute {

struct GeneratorOptions {
    int blocks = 10;
    int nets = 20;
    int max_degree = 4;
    std::uint64_t seed = 1;
    // Net degree d in [2, max_degree] is drawn with weight degree_decay^(d-2).
    // 0.14 gives a mean close to 2.16 for max_degree 6, the GSRC-like regime.
    double degree_decay = 0.14;
};

// Random guillotine-sliced mosaic. Every cut coordinate is an integer distinct from
// all earlier cuts of the same axis, so no four blocks ever meet at one point. Net
// pins sit on distinct, uniformly chosen blocks at their centers. Deterministic in
// the seed.
Floorplan generate_random_floorplan(const GeneratorOptions& options);

inline Floorplan generate_random_floorplan(int n, int k, int max_degree, std::uint64_t seed) {
    return generate_random_floorplan(GeneratorOptions{n, k, max_degree, seed});
}

} // namespace msroute
