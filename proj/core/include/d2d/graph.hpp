#pragma once

#include <span>
#include <vector>

namespace d2d {

struct Edge {
    int u = 0;
    int v = 0;
    double w = 0.0;
};

struct AdjEntry {
    int nbr;
    int edge;
};

// Undirected weighted graph with CSR adjacency. Edges are normalized to
// u < v on construction and keep their insertion order; that order is the
// canonical one used when weights are assigned from a seed, so a graph's
// weighting is reproducible independent of how the topology was produced.
class WeightedGraph {
public:
    WeightedGraph() = default;
    WeightedGraph(int n, std::vector<Edge> edges);

    int vertex_count() const { return n_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    const std::vector<Edge>& edges() const { return edges_; }
    const Edge& edge(int e) const { return edges_[e]; }

    std::span<const AdjEntry> neighbors(int v) const {
        return {adj_.data() + offsets_[v], adj_.data() + offsets_[v + 1]};
    }
    int degree(int v) const { return offsets_[v + 1] - offsets_[v]; }

    void set_weight(int e, double w) { edges_[e].w = w; }

    // Two-colors the graph if possible; side (when requested) receives 0/1
    // per vertex, meaningful only on success.
    bool is_bipartite(std::vector<char>* side = nullptr) const;

    // Set by the branching-process generator when growth hit the node cap.
    bool truncated = false;

    // Physical edge lengths from the proximity generator; empty otherwise.
    std::vector<double> edge_dist;

private:
    int n_ = 0;
    std::vector<Edge> edges_;
    std::vector<int> offsets_;
    std::vector<AdjEntry> adj_;
};

// Path on weights.size()+1 vertices, edge i = (i, i+1) carrying weights[i].
WeightedGraph line_from_weights(const std::vector<double>& weights);

}  // namespace d2d
