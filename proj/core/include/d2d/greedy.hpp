#pragma once

#include <vector>

#include "d2d/graph.hpp"

namespace d2d {

// How a vertex breaks ties between equally heavy available neighbors.
// LowestIndexNeighbor is the default and, on row-major lines, prefers the
// left neighbor.
enum class TiePolicy {
    LowestIndexNeighbor,
    HighestIndexNeighbor,
};

struct MatchingResult {
    std::vector<int> mate;           // partner per vertex, -1 if unmatched
    std::vector<int> matched_edges;  // ascending edge ids
    double welfare = 0.0;
    int rounds = 0;
};

// Synchronous distributed greedy: each round every live vertex points at its
// heaviest available neighbor (computed from the state at the round start),
// mutual proposals match, and a vertex whose neighborhood has emptied drops
// out in the round it discovers that. rounds counts rounds in which some
// vertex changed state; isolated vertices drop out at round zero.
MatchingResult greedy_match(const WeightedGraph& g,
                            TiePolicy tie = TiePolicy::LowestIndexNeighbor);

struct ChainStat {
    int length = 0;    // longest admissible chain found, in edges
    bool capped = false;
    int depth_cap = 0; // 0 when the search was exact
};

// Longest simple path along which edge weights never decrease, where a step
// between equal weights is admissible only toward the tie-preferred
// continuation. Exact on unions of paths; elsewhere a depth-capped search
// (cap ~ c log n) with the cap reported. Greedy resolves a chain from its
// heavy end inward, so round counts track half the chain length.
ChainStat longest_chain_stat(const WeightedGraph& g,
                             TiePolicy tie = TiePolicy::LowestIndexNeighbor,
                             double cap_factor = 8.0);

}  // namespace d2d
