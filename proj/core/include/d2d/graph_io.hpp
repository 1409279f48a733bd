#pragma once

#include <iosfwd>
#include <string>

#include "d2d/graph.hpp"

namespace d2d {

// Text format: first line "n m", then m lines "u v w" with 0-based endpoints.
// Weights use shortest round-trip decimals, so save/load preserves bits.
void write_graph(std::ostream& os, const WeightedGraph& g);
WeightedGraph read_graph(std::istream& is);

void save_graph(const std::string& path, const WeightedGraph& g);
WeightedGraph load_graph(const std::string& path);

std::string graph_to_string(const WeightedGraph& g);
WeightedGraph graph_from_string(const std::string& text);

}  // namespace d2d
