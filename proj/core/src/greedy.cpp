#include "d2d/greedy.hpp"

#include <algorithm>
#include <cmath>

namespace d2d {

MatchingResult greedy_match(const WeightedGraph& g, TiePolicy tie) {
    const int n = g.vertex_count();
    MatchingResult res;
    res.mate.assign(n, -1);

    // Preference order per vertex: weight descending, then the policy's index
    // direction. A cursor per vertex advances past neighbors matched in
    // earlier rounds; total advancement is O(m) across the whole run.
    std::vector<int> offs(n + 1, 0);
    for (int v = 0; v < n; ++v) offs[v + 1] = offs[v] + g.degree(v);
    std::vector<AdjEntry> pref(offs[n]);
    for (int v = 0; v < n; ++v) {
        auto nbrs = g.neighbors(v);
        std::copy(nbrs.begin(), nbrs.end(), pref.begin() + offs[v]);
        auto cmp = [&](const AdjEntry& a, const AdjEntry& b) {
            const double wa = g.edge(a.edge).w, wb = g.edge(b.edge).w;
            if (wa != wb) return wa > wb;
            return tie == TiePolicy::LowestIndexNeighbor ? a.nbr < b.nbr : a.nbr > b.nbr;
        };
        std::sort(pref.begin() + offs[v], pref.begin() + offs[v + 1], cmp);
    }
    std::vector<int> ptr(offs.begin(), offs.end() - 1);

    std::vector<int> active;
    active.reserve(n);
    for (int v = 0; v < n; ++v)
        if (g.degree(v) > 0) active.push_back(v);

    std::vector<int> target(n, -1);
    std::vector<int> next_active;
    next_active.reserve(active.size());

    int round = 0;
    while (!active.empty()) {
        ++round;
        bool changed = false;

        // Proposal phase. No vertex is matched in the current round yet, so
        // advancing past matched neighbors sees exactly the round-start state.
        for (int v : active) {
            int& p = ptr[v];
            while (p < offs[v + 1] && res.mate[pref[p].nbr] != -1) ++p;
            target[v] = p < offs[v + 1] ? pref[p].nbr : -1;
        }

        // Matching phase: mutual proposals pair up.
        for (int v : active) {
            const int t = target[v];
            if (t != -1 && v < t && target[t] == v) {
                res.mate[v] = t;
                res.mate[t] = v;
                const int e = pref[ptr[v]].edge;
                res.matched_edges.push_back(e);
                res.welfare += g.edge(e).w;
                changed = true;
            }
        }

        next_active.clear();
        for (int v : active) {
            if (res.mate[v] != -1) continue;
            if (target[v] == -1) {
                changed = true;  // discovered an empty neighborhood, drops out
                continue;
            }
            next_active.push_back(v);
        }
        active.swap(next_active);

        if (!changed) {  // unreachable: a live round always matches or drops
            --round;
            break;
        }
    }

    res.rounds = round;
    std::sort(res.matched_edges.begin(), res.matched_edges.end());
    return res;
}

namespace {

// Longest run, counted in edges, over which the weight sequence never
// decreases, scanning in one direction; equal weights extend a run.
int longest_monotone_run(const std::vector<double>& w) {
    int best = 0, cur = 0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i == 0 || w[i] >= w[i - 1])
            ++cur;
        else
            cur = 1;
        best = std::max(best, cur);
    }
    return best;
}

struct ChainSearch {
    const WeightedGraph& g;
    TiePolicy tie;
    int depth_cap;
    long long budget;
    std::vector<char> on_path;
    int best = 0;
    bool capped = false;

    void dfs(int v, double last_w, int depth) {
        best = std::max(best, depth);
        if (depth >= depth_cap) {
            capped = true;
            return;
        }
        if (--budget < 0) {
            capped = true;
            return;
        }
        // Strictly heavier continuations all branch; among equally heavy ones
        // only the tie-preferred neighbor is admissible.
        int eq_pick = -1, eq_edge = -1;
        for (const auto& a : g.neighbors(v)) {
            if (on_path[a.nbr]) continue;
            const double w = g.edge(a.edge).w;
            if (w < last_w) continue;
            if (w == last_w) {
                const bool better =
                    eq_pick == -1 || (tie == TiePolicy::LowestIndexNeighbor ? a.nbr < eq_pick
                                                                            : a.nbr > eq_pick);
                if (better) {
                    eq_pick = a.nbr;
                    eq_edge = a.edge;
                }
                continue;
            }
            on_path[a.nbr] = 1;
            dfs(a.nbr, w, depth + 1);
            on_path[a.nbr] = 0;
        }
        if (eq_pick != -1) {
            on_path[eq_pick] = 1;
            dfs(eq_pick, g.edge(eq_edge).w, depth + 1);
            on_path[eq_pick] = 0;
        }
    }
};

}  // namespace

ChainStat longest_chain_stat(const WeightedGraph& g, TiePolicy tie, double cap_factor) {
    const int n = g.vertex_count();
    ChainStat stat;
    if (g.edge_count() == 0) return stat;

    bool path_union = true;
    for (int v = 0; v < n && path_union; ++v)
        if (g.degree(v) > 2) path_union = false;

    if (path_union) {
        // Walk each component from an endpoint; a component with no endpoint
        // is a cycle and kicks us to the capped search.
        std::vector<char> visited(n, 0);
        std::vector<double> walk;
        int covered = 0;
        for (int s = 0; s < n && path_union; ++s) {
            if (visited[s] || g.degree(s) != 1) continue;
            walk.clear();
            int prev = -1, cur = s;
            visited[cur] = 1;
            ++covered;
            while (true) {
                int nxt = -1, edge = -1;
                for (const auto& a : g.neighbors(cur))
                    if (a.nbr != prev) {
                        nxt = a.nbr;
                        edge = a.edge;
                    }
                if (nxt == -1) break;
                walk.push_back(g.edge(edge).w);
                prev = cur;
                cur = nxt;
                visited[cur] = 1;
                ++covered;
            }
            std::vector<double> rev(walk.rbegin(), walk.rend());
            stat.length = std::max({stat.length, longest_monotone_run(walk),
                                    longest_monotone_run(rev)});
        }
        for (int v = 0; v < n; ++v)
            if (!visited[v] && g.degree(v) > 0) path_union = false;  // cycle component
        if (path_union) return stat;
        stat.length = 0;
    }

    ChainSearch search{g, tie,
                       std::max(3, static_cast<int>(std::ceil(
                                       cap_factor * std::log(std::max(n, 2))))),
                       10'000'000, std::vector<char>(n, 0)};
    for (int s = 0; s < n; ++s) {
        if (g.degree(s) == 0) continue;
        search.on_path[s] = 1;
        search.dfs(s, -1.0, 0);
        search.on_path[s] = 0;
    }
    stat.length = search.best;
    stat.capped = search.capped;
    stat.depth_cap = search.depth_cap;
    return stat;
}

}  // namespace d2d
