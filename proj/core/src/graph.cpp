#include "d2d/graph.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "d2d/errors.hpp"

namespace d2d {

WeightedGraph::WeightedGraph(int n, std::vector<Edge> edges)
    : n_(n), edges_(std::move(edges)) {
    if (n_ < 0) throw InvalidParameter("graph: negative vertex count");
    for (auto& e : edges_) {
        if (e.u > e.v) std::swap(e.u, e.v);
        if (e.u < 0 || e.v >= n_)
            throw InvalidParameter("graph: edge endpoint out of range");
        if (e.u == e.v)
            throw InvalidParameter("graph: self-loop at vertex " + std::to_string(e.u));
        if (!std::isfinite(e.w))
            throw InvalidParameter("graph: non-finite edge weight");
    }

    offsets_.assign(n_ + 1, 0);
    for (const auto& e : edges_) {
        ++offsets_[e.u + 1];
        ++offsets_[e.v + 1];
    }
    for (int v = 0; v < n_; ++v) offsets_[v + 1] += offsets_[v];
    adj_.resize(edges_.size() * 2);
    std::vector<int> cursor(offsets_.begin(), offsets_.end() - 1);
    for (int e = 0; e < edge_count(); ++e) {
        adj_[cursor[edges_[e].u]++] = {edges_[e].v, e};
        adj_[cursor[edges_[e].v]++] = {edges_[e].u, e};
    }
    for (int v = 0; v < n_; ++v) {
        auto first = adj_.begin() + offsets_[v];
        auto last = adj_.begin() + offsets_[v + 1];
        std::sort(first, last, [](const AdjEntry& a, const AdjEntry& b) { return a.nbr < b.nbr; });
        for (auto it = first; it + 1 < last; ++it)
            if (it->nbr == (it + 1)->nbr)
                throw InvalidParameter("graph: duplicate edge " + std::to_string(v) + "-" +
                                       std::to_string(it->nbr));
    }
}

bool WeightedGraph::is_bipartite(std::vector<char>* side) const {
    std::vector<char> color(n_, -1);
    std::vector<int> queue;
    queue.reserve(n_);
    for (int s = 0; s < n_; ++s) {
        if (color[s] != -1) continue;
        color[s] = 0;
        queue.clear();
        queue.push_back(s);
        for (std::size_t head = 0; head < queue.size(); ++head) {
            const int v = queue[head];
            for (const auto& a : neighbors(v)) {
                if (color[a.nbr] == -1) {
                    color[a.nbr] = static_cast<char>(1 - color[v]);
                    queue.push_back(a.nbr);
                } else if (color[a.nbr] == color[v]) {
                    return false;
                }
            }
        }
    }
    if (side) *side = std::move(color);
    return true;
}

WeightedGraph line_from_weights(const std::vector<double>& weights) {
    std::vector<Edge> edges;
    edges.reserve(weights.size());
    for (int i = 0; i < static_cast<int>(weights.size()); ++i)
        edges.push_back({i, i + 1, weights[i]});
    return WeightedGraph(static_cast<int>(weights.size()) + 1, std::move(edges));
}

}  // namespace d2d
