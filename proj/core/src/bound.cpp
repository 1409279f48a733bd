#include <cmath>

#include "d2d/exact.hpp"
#include "d2d/errors.hpp"

namespace d2d {

// A vertex of degree d cannot gain more than half the expected maximum of d
// independent weight draws, whatever the topology: P(max <= v_k) = F_k^d.
BoundReport welfare_upper_bound(const std::vector<int>& degrees,
                                const WeightDistribution& dist) {
    BoundReport rep;
    rep.per_vertex.reserve(degrees.size());
    for (const int deg : degrees) {
        if (deg < 0) throw InvalidParameter("degree bound: negative degree");
        double term = 0.0;
        if (deg > 0) {
            double prev = 0.0;
            for (std::size_t k = 0; k < dist.size(); ++k) {
                const double cur = std::pow(dist.cdf(k), static_cast<double>(deg));
                term += dist.value(k) * (cur - prev);
                prev = cur;
            }
            term *= 0.5;
        }
        rep.per_vertex.push_back(term);
        rep.value += term;
    }
    return rep;
}

BoundReport welfare_upper_bound(const WeightedGraph& g, const WeightDistribution& dist) {
    std::vector<int> degrees(g.vertex_count());
    for (int v = 0; v < g.vertex_count(); ++v) degrees[v] = g.degree(v);
    return welfare_upper_bound(degrees, dist);
}

}  // namespace d2d
