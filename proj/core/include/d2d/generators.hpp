#pragma once

#include <cstdint>
#include <vector>

#include "d2d/distribution.hpp"
#include "d2d/graph.hpp"
#include "d2d/locations.hpp"
#include "d2d/rng.hpp"

namespace d2d {

// rows x cols lattice, vertices row-major, 4-neighbor edges. Edge order is a
// row-major sweep emitting the right edge then the down edge of each cell, so
// a 1 x n grid is a left-to-right path.
WeightedGraph gen_grid(int rows, int cols);

// G(n, p) sampled in O(edges) by geometric skipping over the ordered pair
// sequence. Expected edge count is capped to keep memory bounded.
WeightedGraph gen_gnp(int n, double p, Rng& rng);

// Branching-process tree: each node gets Poisson(d) children, breadth-first
// vertex layout (parent index < child index). If growth would pass node_cap,
// generation stops and the graph is flagged truncated.
WeightedGraph gen_poisson_tree(double d, int node_cap, Rng& rng);

// Proximity graph over device locations: an edge joins two devices on the
// same floor strictly closer than range_m (meters). Vertices are ordered by
// id rank; edge_dist records each edge's length.
WeightedGraph gen_geometric(const std::vector<LocationRecord>& locs, double range_m);

// n devices uniform on a disk of the given radius, single floor, ids 0..n-1.
std::vector<LocationRecord> disk_points(int n, double radius_m, Rng& rng);

// Independent weight per edge, one substream per edge index, so the result
// does not depend on evaluation order.
void assign_weights(WeightedGraph& g, const WeightDistribution& dist, std::uint64_t seed);

}  // namespace d2d
