#pragma once

#include <string>
#include <vector>

#include "d2d/distribution.hpp"
#include "d2d/graph.hpp"

namespace d2d {

struct ExactResult {
    std::vector<int> mate;           // partner per vertex, -1 if unmatched
    std::vector<int> matched_edges;  // ascending edge ids
    double welfare = 0.0;
    std::string method;              // "bruteforce", "bipartite" or "blossom"
};

// Exhaustive search over matchings. Oracle for everything else; refuses
// graphs with more than 24 edges.
ExactResult exact_match_bruteforce(const WeightedGraph& g);

// Maximum-weight matching, any graph. Bipartite graphs route to successive
// shortest augmenting paths and scale to ~1e4 vertices; general graphs use a
// dense primal-dual blossom solver bounded by blossom_cap vertices (memory
// grows quadratically).
ExactResult exact_match(const WeightedGraph& g, int blossom_cap = 1200);

// The two solvers behind exact_match, callable directly.
ExactResult exact_match_bipartite(const WeightedGraph& g);
ExactResult exact_match_blossom(const WeightedGraph& g);

struct BoundReport {
    double value = 0.0;
    std::vector<double> per_vertex;  // value is their sum
};

// Expected-welfare ceiling from degrees alone: half the expected maximum of
// deg(v) independent weight draws, summed over vertices. Degree-0 vertices
// contribute nothing.
BoundReport welfare_upper_bound(const std::vector<int>& degrees,
                                const WeightDistribution& dist);
BoundReport welfare_upper_bound(const WeightedGraph& g, const WeightDistribution& dist);

}  // namespace d2d
