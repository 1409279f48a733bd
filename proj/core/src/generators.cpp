#include "d2d/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <unordered_map>

#include "d2d/errors.hpp"

namespace d2d {

WeightedGraph gen_grid(int rows, int cols) {
    if (rows < 1 || cols < 1)
        throw InvalidParameter("grid: rows and cols must be at least 1");
    if (static_cast<std::int64_t>(rows) * cols > 100'000'000)
        throw InvalidParameter("grid: too many vertices");
    const int n = rows * cols;
    std::vector<Edge> edges;
    edges.reserve(static_cast<std::size_t>(rows) * (cols - 1) +
                  static_cast<std::size_t>(cols) * (rows - 1));
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) {
            const int v = r * cols + c;
            if (c + 1 < cols) edges.push_back({v, v + 1, 0.0});
            if (r + 1 < rows) edges.push_back({v, v + cols, 0.0});
        }
    }
    return WeightedGraph(n, std::move(edges));
}

namespace {

// Pairs (i, j), i < j, ordered lexicographically. pairs_before(i) counts
// pairs whose first endpoint precedes i.
std::int64_t pairs_before(std::int64_t i, std::int64_t n) {
    return i * (2 * n - i - 1) / 2;
}

}  // namespace

WeightedGraph gen_gnp(int n, double p, Rng& rng) {
    if (n < 0) throw InvalidParameter("gnp: negative n");
    if (!(p >= 0.0 && p <= 1.0))
        throw InvalidParameter("gnp: p must lie in [0, 1]");
    const std::int64_t total = pairs_before(n, n);  // == n(n-1)/2
    if (p * static_cast<double>(total) > 2e8)
        throw InvalidParameter("gnp: expected edge count exceeds 2e8");

    std::vector<Edge> edges;
    if (p > 0.0 && total > 0) {
        std::int64_t t = -1;
        while (true) {
            const std::uint64_t skip = rng.skip_geometric(p);
            if (skip > static_cast<std::uint64_t>(total)) break;
            t += static_cast<std::int64_t>(skip) + 1;
            if (t >= total) break;
            // Invert pairs_before around t; the sqrt gives a guess the loops
            // correct by at most one step.
            const double nn = static_cast<double>(n) - 0.5;
            double disc = nn * nn - 2.0 * static_cast<double>(t);
            if (disc < 0) disc = 0;
            auto i = static_cast<std::int64_t>(nn - std::sqrt(disc));
            if (i < 0) i = 0;
            while (i + 1 < n && pairs_before(i + 1, n) <= t) ++i;
            while (i > 0 && pairs_before(i, n) > t) --i;
            const std::int64_t j = i + 1 + (t - pairs_before(i, n));
            edges.push_back({static_cast<int>(i), static_cast<int>(j), 0.0});
        }
    }
    return WeightedGraph(n, std::move(edges));
}

WeightedGraph gen_poisson_tree(double d, int node_cap, Rng& rng) {
    if (!(d >= 0.0) || !std::isfinite(d))
        throw InvalidParameter("poisson tree: mean degree must be finite and nonnegative");
    if (node_cap < 1) throw InvalidParameter("poisson tree: node cap must be at least 1");

    std::vector<Edge> edges;
    int size = 1;
    bool truncated = false;
    for (int node = 0; node < size; ++node) {
        const int children = rng.poisson(d);
        if (size > node_cap - children) {
            truncated = true;
            break;
        }
        for (int c = 0; c < children; ++c) {
            edges.push_back({node, size, 0.0});
            ++size;
        }
    }
    WeightedGraph g(size, std::move(edges));
    g.truncated = truncated;
    return g;
}

namespace {

struct CellKey {
    int floor;
    std::int64_t cx;
    std::int64_t cy;
    bool operator==(const CellKey&) const = default;
};

struct CellKeyHash {
    std::size_t operator()(const CellKey& k) const {
        std::uint64_t h = static_cast<std::uint64_t>(k.floor) * 0x9E3779B97F4A7C15ull;
        h ^= static_cast<std::uint64_t>(k.cx) * 0xBF58476D1CE4E5B9ull;
        h ^= static_cast<std::uint64_t>(k.cy) * 0x94D049BB133111EBull;
        h ^= h >> 29;
        return static_cast<std::size_t>(h);
    }
};

}  // namespace

WeightedGraph gen_geometric(const std::vector<LocationRecord>& locs, double range_m) {
    if (!(range_m > 0.0) || !std::isfinite(range_m))
        throw InvalidParameter("geometric: range must be positive");

    // Vertex index = rank of the device id.
    const int n = static_cast<int>(locs.size());
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return locs[a].id < locs[b].id; });
    std::vector<const LocationRecord*> byrank(n);
    for (int r = 0; r < n; ++r) byrank[r] = &locs[order[r]];

    std::unordered_map<CellKey, std::vector<int>, CellKeyHash> cells;
    auto cell_of = [&](const LocationRecord& rec) {
        return CellKey{rec.floor,
                       static_cast<std::int64_t>(std::floor(rec.x / range_m)),
                       static_cast<std::int64_t>(std::floor(rec.y / range_m))};
    };
    for (int r = 0; r < n; ++r) cells[cell_of(*byrank[r])].push_back(r);

    std::vector<Edge> edges;
    std::vector<double> dists;
    std::vector<std::pair<int, double>> found;
    for (int r = 0; r < n; ++r) {
        const auto& a = *byrank[r];
        const CellKey base = cell_of(a);
        found.clear();
        for (std::int64_t dx = -1; dx <= 1; ++dx) {
            for (std::int64_t dy = -1; dy <= 1; ++dy) {
                auto it = cells.find({base.floor, base.cx + dx, base.cy + dy});
                if (it == cells.end()) continue;
                for (int s : it->second) {
                    if (s <= r) continue;
                    const auto& b = *byrank[s];
                    const double dist = std::hypot(a.x - b.x, a.y - b.y);
                    if (dist < range_m) found.emplace_back(s, dist);
                }
            }
        }
        std::sort(found.begin(), found.end());
        for (auto [s, dist] : found) {
            edges.push_back({r, s, 0.0});
            dists.push_back(dist);
        }
    }
    WeightedGraph g(n, std::move(edges));
    g.edge_dist = std::move(dists);
    return g;
}

std::vector<LocationRecord> disk_points(int n, double radius_m, Rng& rng) {
    if (n < 0) throw InvalidParameter("disk: negative n");
    if (!(radius_m > 0.0)) throw InvalidParameter("disk: radius must be positive");
    std::vector<LocationRecord> out;
    out.reserve(n);
    for (int i = 0; i < n; ++i) {
        const double r = radius_m * std::sqrt(rng.next_double());
        const double theta = 2.0 * std::numbers::pi * rng.next_double();
        out.push_back({i, r * std::cos(theta), r * std::sin(theta), 0});
    }
    return out;
}

void assign_weights(WeightedGraph& g, const WeightDistribution& dist, std::uint64_t seed) {
    for (int e = 0; e < g.edge_count(); ++e) {
        Rng stream = Rng::stream(seed, static_cast<std::uint64_t>(e));
        g.set_weight(e, dist.sample(stream.next_double()));
    }
}

}  // namespace d2d
