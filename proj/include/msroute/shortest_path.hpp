#pragma once

#include <optional>
#include <vector>

namespace msroute {

// Plain undirected weighted graph; `tag` carries caller data (a segment id, a pin edge).
class WeightedGraph {
public:
    struct Edge {
        int u = 0;
        int v = 0;
        double weight = 0.0;
        int tag = 0;

        int other(int node) const { return node == u ? v : u; }
    };

    explicit WeightedGraph(std::size_t nodes = 0) : adjacency_(nodes) {}

    int add_edge(int u, int v, double weight, int tag = 0);

    std::size_t node_count() const { return adjacency_.size(); }
    std::size_t edge_count() const { return edges_.size(); }
    const Edge& edge(int e) const { return edges_.at(static_cast<std::size_t>(e)); }
    const std::vector<Edge>& edges() const { return edges_; }
    const std::vector<int>& incident(int node) const { return adjacency_.at(static_cast<std::size_t>(node)); }

private:
    std::vector<Edge> edges_;
    std::vector<std::vector<int>> adjacency_;
};

struct ShortestPath {
    double weight = 0.0;
    std::vector<int> nodes;  // source ... sink
    std::vector<int> edges;  // edge indices, nodes.size() - 1 of them
};

// Binary-heap Dijkstra over non-negative weights. Nodes leave the heap in
// (distance, id) order and a predecessor is only replaced by a strictly shorter
// distance, so equal-weight ties resolve the same way on every run.
// nullopt when the sink is unreachable.
std::optional<ShortestPath> dijkstra_ssp(const WeightedGraph& g, int source, int sink);

} // namespace msroute
