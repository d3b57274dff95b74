#include "msroute/shortest_path.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <queue>

#include "msroute/error.hpp"

namespace msroute {

int WeightedGraph::add_edge(int u, int v, double weight, int tag) {
    const int n = static_cast<int>(adjacency_.size());
    if (u < 0 || v < 0 || u >= n || v >= n) {
        throw PreconditionError("edge endpoint outside the graph");
    }
    if (!(weight >= 0.0)) {
        throw PreconditionError("negative or NaN edge weight");
    }
    const int id = static_cast<int>(edges_.size());
    edges_.push_back({u, v, weight, tag});
    adjacency_[static_cast<std::size_t>(u)].push_back(id);
    if (v != u) {
        adjacency_[static_cast<std::size_t>(v)].push_back(id);
    }
    return id;
}

std::optional<ShortestPath> dijkstra_ssp(const WeightedGraph& g, int source, int sink) {
    const std::size_t n = g.node_count();
    if (source < 0 || sink < 0 || static_cast<std::size_t>(source) >= n || static_cast<std::size_t>(sink) >= n) {
        throw PreconditionError("dijkstra endpoints outside the graph");
    }
    constexpr double inf = std::numeric_limits<double>::infinity();
    std::vector<double> dist(n, inf);
    std::vector<int> via(n, -1);
    std::vector<char> done(n, 0);

    using Item = std::pair<double, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    dist[static_cast<std::size_t>(source)] = 0.0;
    heap.emplace(0.0, source);
    while (!heap.empty()) {
        const auto [d, u] = heap.top();
        heap.pop();
        if (done[static_cast<std::size_t>(u)]) {
            continue;
        }
        done[static_cast<std::size_t>(u)] = 1;
        if (u == sink) {
            break;
        }
        for (int e : g.incident(u)) {
            const auto& edge = g.edge(e);
            const int v = edge.other(u);
            const double nd = d + edge.weight;
            if (nd < dist[static_cast<std::size_t>(v)]) {
                dist[static_cast<std::size_t>(v)] = nd;
                via[static_cast<std::size_t>(v)] = e;
                heap.emplace(nd, v);
            }
        }
    }
    if (!done[static_cast<std::size_t>(sink)]) {
        return std::nullopt;
    }

    ShortestPath path;
    path.weight = dist[static_cast<std::size_t>(sink)];
    int at = sink;
    path.nodes.push_back(at);
    while (at != source) {
        const int e = via[static_cast<std::size_t>(at)];
        path.edges.push_back(e);
        at = g.edge(e).other(at);
        path.nodes.push_back(at);
    }
    std::reverse(path.nodes.begin(), path.nodes.end());
    std::reverse(path.edges.begin(), path.edges.end());
    return path;
}

} // namespace msroute
