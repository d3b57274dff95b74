#pragma once

#include <string>
#include <tuple>
#include <vector>

#include "msroute/floorplan_io.hpp"

namespace testutil {

// Floorplan from (name, x, y, w, h) rectangles; nets as lists of block names (pins at centers).
inline msroute::Floorplan make_floorplan(const std::vector<std::tuple<std::string, double, double, double, double>>& rects,
                                         const std::vector<std::vector<std::string>>& nets = {}) {
    std::string blocks, pl, net_text;
    for (const auto& [name, x, y, w, h] : rects) {
        blocks += name + " hardrectilinear 4 (0,0) (0," + std::to_string(h) + ") (" + std::to_string(w) + "," +
                  std::to_string(h) + ") (" + std::to_string(w) + ",0)\n";
        pl += name + " " + std::to_string(x) + " " + std::to_string(y) + "\n";
    }
    for (const auto& n : nets) {
        net_text += "NetDegree : " + std::to_string(n.size()) + "\n";
        for (const auto& b : n) {
            net_text += b + " B\n";
        }
    }
    return msroute::parse_floorplan(blocks, pl, net_text);
}

inline std::string data_path(const std::string& file) { return std::string(MSROUTE_TEST_DATA) + "/" + file; }

inline msroute::Floorplan apte_like() {
    return msroute::load_floorplan(data_path("apte_like.blocks"), data_path("apte_like.pl"), data_path("apte_like.nets"));
}

} // namespace testutil
