#include "d2d/exact.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <queue>
#include <unordered_map>

#include "d2d/errors.hpp"

namespace d2d {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::unordered_map<std::int64_t, int> edge_index(const WeightedGraph& g) {
    std::unordered_map<std::int64_t, int> idx;
    idx.reserve(g.edge_count() * 2);
    for (int e = 0; e < g.edge_count(); ++e) {
        const auto& ed = g.edge(e);
        idx[static_cast<std::int64_t>(ed.u) * g.vertex_count() + ed.v] = e;
    }
    return idx;
}

void finish_result(const WeightedGraph& g, ExactResult& res) {
    const auto idx = edge_index(g);
    res.welfare = 0.0;
    res.matched_edges.clear();
    for (int u = 0; u < g.vertex_count(); ++u) {
        const int v = res.mate[u];
        if (v <= u) continue;
        const auto it = idx.find(static_cast<std::int64_t>(u) * g.vertex_count() + v);
        res.matched_edges.push_back(it->second);
        res.welfare += g.edge(it->second).w;
    }
    std::sort(res.matched_edges.begin(), res.matched_edges.end());
}

}  // namespace

ExactResult exact_match_bruteforce(const WeightedGraph& g) {
    if (g.edge_count() > 24)
        throw InvalidParameter("bruteforce matcher: more than 24 edges");
    const int n = g.vertex_count();
    ExactResult res;
    res.mate.assign(n, -1);
    res.method = "bruteforce";

    std::vector<int> mate(n, -1), best_mate(n, -1);
    double best = 0.0, cur = 0.0;

    // Enumerate by deciding, vertex by vertex, whether the lowest undecided
    // vertex stays single or pairs with a free higher neighbor.
    auto rec = [&](auto&& self, int v) -> void {
        while (v < n && (mate[v] != -1 || g.degree(v) == 0)) ++v;
        if (v == n) {
            if (cur > best) {
                best = cur;
                best_mate = mate;
            }
            return;
        }
        self(self, v + 1);
        for (const auto& a : g.neighbors(v)) {
            if (a.nbr < v || mate[a.nbr] != -1) continue;
            mate[v] = a.nbr;
            mate[a.nbr] = v;
            cur += g.edge(a.edge).w;
            self(self, v + 1);
            cur -= g.edge(a.edge).w;
            mate[v] = -1;
            mate[a.nbr] = -1;
        }
    };
    rec(rec, 0);

    res.mate = std::move(best_mate);
    finish_result(g, res);
    return res;
}

// --- bipartite maximum-weight matching -------------------------------------
//
// Successive shortest augmenting paths on the flow network with Johnson
// potentials; edge costs are negated weights, augmentation stops once the
// cheapest source-sink path stops being profitable. Free left vertices keep
// potential 0, so multi-source Dijkstra needs no virtual source; a virtual
// sink gathers the free right side.

ExactResult exact_match_bipartite(const WeightedGraph& g) {
    std::vector<char> side;
    if (!g.is_bipartite(&side))
        throw InvalidParameter("bipartite matcher: graph has an odd cycle");
    const int n = g.vertex_count();
    const int t = n;

    double wmax = 0.0;
    for (const auto& e : g.edges()) wmax = std::max(wmax, e.w);
    ExactResult res;
    res.mate.assign(n, -1);
    res.method = "bipartite";
    if (wmax <= 0.0) return res;  // nothing profitable to match
    const double gain_eps = 1e-9 * wmax;

    std::vector<double> pi(n + 1);
    for (int v = 0; v < n; ++v) pi[v] = side[v] == 0 ? 0.0 : -wmax;
    pi[t] = -wmax;

    std::vector<int> mate(n, -1), mate_edge(n, -1), par_from(n, -1), par_edge(n, -1);
    std::vector<double> dist(n + 1);
    std::vector<char> done(n + 1);
    using QItem = std::pair<double, int>;

    while (true) {
        std::fill(dist.begin(), dist.end(), kInf);
        std::fill(done.begin(), done.end(), 0);
        std::priority_queue<QItem, std::vector<QItem>, std::greater<>> heap;
        for (int u = 0; u < n; ++u)
            if (side[u] == 0 && mate[u] == -1 && g.degree(u) > 0) {
                dist[u] = 0.0;
                heap.emplace(0.0, u);
            }
        int pred_t = -1;
        while (!heap.empty()) {
            const auto [dv, v] = heap.top();
            heap.pop();
            if (done[v] || dv > dist[v]) continue;
            done[v] = 1;
            if (v == t) break;
            if (side[v] == 0) {
                for (const auto& a : g.neighbors(v)) {
                    if (a.nbr == mate[v]) continue;
                    const double w = g.edge(a.edge).w;
                    if (w <= 0.0) continue;
                    const double nd = dist[v] + (pi[v] - w) - pi[a.nbr];
                    if (nd < dist[a.nbr]) {
                        dist[a.nbr] = nd;
                        par_from[a.nbr] = v;
                        par_edge[a.nbr] = a.edge;
                        heap.emplace(nd, a.nbr);
                    }
                }
            } else if (mate[v] == -1) {
                const double nd = dist[v] + pi[v] - pi[t];
                if (nd < dist[t]) {
                    dist[t] = nd;
                    pred_t = v;
                    heap.emplace(nd, t);
                }
            } else {
                const int u = mate[v];
                const double nd = dist[v] + (pi[v] + g.edge(mate_edge[v]).w) - pi[u];
                if (nd < dist[u]) {
                    dist[u] = nd;
                    heap.emplace(nd, u);
                }
            }
        }
        if (!done[t]) break;
        if (dist[t] + pi[t] >= -gain_eps) break;

        const double cap = dist[t];
        for (int v = 0; v <= n; ++v) pi[v] += std::min(dist[v], cap);

        int v = pred_t;
        while (true) {
            const int u = par_from[v];
            const int prev = mate[u];
            mate[u] = v;
            mate[v] = u;
            mate_edge[u] = mate_edge[v] = par_edge[v];
            if (prev == -1) break;
            v = prev;
        }
    }

    res.mate = std::move(mate);
    finish_result(g, res);
    return res;
}

// --- general maximum-weight matching ----------------------------------------
//
// Dense primal-dual blossom algorithm, O(n^3). Nodes 1..n are vertices,
// n+1..2n odd-cycle contractions; st maps a node to its surface contraction,
// lab holds duals, and the matrix keeps for every node pair the least-slack
// original edge between them. Weights are scaled to max 1 so fixed epsilons
// classify tightness; with values drawn from small integer sets the duals
// stay dyadic and the epsilons never actually matter.

namespace {

struct BlossomSolver {
    static constexpr double kEps = 1e-12;

    struct Arc {
        int u = 0, v = 0;
        double w = 0.0;
    };

    int n, nx;
    std::vector<Arc> mat;  // (2n+1)^2, row-major
    std::vector<double> lab;
    std::vector<int> match, slack, st, pa, S, vis;
    std::vector<std::vector<int>> flower;
    std::vector<int> flower_from;  // (2n+1) x (n+1)
    std::deque<int> q;
    int stamp = 0;

    explicit BlossomSolver(int n_) : n(n_), nx(n_) {
        const int ids = 2 * n + 1;
        mat.assign(static_cast<std::size_t>(ids) * ids, Arc{});
        for (int u = 0; u < ids; ++u)
            for (int v = 0; v < ids; ++v) arc(u, v) = {u, v, 0.0};
        lab.assign(ids, 0.0);
        match.assign(ids, 0);
        slack.assign(ids, 0);
        st.assign(ids, 0);
        pa.assign(ids, 0);
        S.assign(ids, -1);
        vis.assign(ids, 0);
        flower.assign(ids, {});
        flower_from.assign(static_cast<std::size_t>(ids) * (n + 1), 0);
        for (int u = 1; u <= n; ++u) st[u] = u;
        for (int u = 1; u <= n; ++u) ffrom(u, u) = u;
    }

    Arc& arc(int u, int v) { return mat[static_cast<std::size_t>(u) * (2 * n + 1) + v]; }
    int& ffrom(int b, int x) { return flower_from[static_cast<std::size_t>(b) * (n + 1) + x]; }

    double e_delta(const Arc& e) { return lab[e.u] + lab[e.v] - arc(e.u, e.v).w * 2; }

    void update_slack(int u, int x) {
        if (!slack[x] || e_delta(arc(u, x)) < e_delta(arc(slack[x], x))) slack[x] = u;
    }

    void set_slack(int x) {
        slack[x] = 0;
        for (int u = 1; u <= n; ++u)
            if (arc(u, x).w > 0.0 && st[u] != x && S[st[u]] == 0) update_slack(u, x);
    }

    void q_push(int x) {
        if (x <= n) {
            q.push_back(x);
        } else {
            for (int y : flower[x]) q_push(y);
        }
    }

    void set_st(int x, int b) {
        st[x] = b;
        if (x > n)
            for (int y : flower[x]) set_st(y, b);
    }

    int get_pr(int b, int xr) {
        const int pr = static_cast<int>(std::find(flower[b].begin(), flower[b].end(), xr) -
                                        flower[b].begin());
        if (pr % 2 == 1) {
            std::reverse(flower[b].begin() + 1, flower[b].end());
            return static_cast<int>(flower[b].size()) - pr;
        }
        return pr;
    }

    void set_match(int u, int v) {
        match[u] = arc(u, v).v;
        if (u <= n) return;
        const Arc e = arc(u, v);
        const int xr = ffrom(u, e.u);
        const int pr = get_pr(u, xr);
        for (int i = 0; i < pr; ++i) set_match(flower[u][i], flower[u][i ^ 1]);
        set_match(xr, v);
        std::rotate(flower[u].begin(), flower[u].begin() + pr, flower[u].end());
    }

    void augment(int u, int v) {
        while (true) {
            const int xnv = st[match[u]];
            set_match(u, v);
            if (!xnv) return;
            set_match(xnv, st[pa[xnv]]);
            u = st[pa[xnv]];
            v = xnv;
        }
    }

    int get_lca(int u, int v) {
        for (++stamp; u || v; std::swap(u, v)) {
            if (u == 0) continue;
            if (vis[u] == stamp) return u;
            vis[u] = stamp;
            u = st[match[u]];
            if (u) u = st[pa[u]];
        }
        return 0;
    }

    void add_blossom(int u, int lca, int v) {
        int b = n + 1;
        while (b <= nx && st[b]) ++b;
        if (b > nx) ++nx;
        lab[b] = 0.0;
        S[b] = 0;
        match[b] = match[lca];
        flower[b].clear();
        flower[b].push_back(lca);
        for (int x = u, y; x != lca; x = st[pa[y]]) {
            flower[b].push_back(x);
            flower[b].push_back(y = st[match[x]]);
            q_push(y);
        }
        std::reverse(flower[b].begin() + 1, flower[b].end());
        for (int x = v, y; x != lca; x = st[pa[y]]) {
            flower[b].push_back(x);
            flower[b].push_back(y = st[match[x]]);
            q_push(y);
        }
        set_st(b, b);
        for (int x = 1; x <= nx; ++x) arc(b, x).w = arc(x, b).w = 0.0;
        for (int x = 1; x <= n; ++x) ffrom(b, x) = 0;
        for (int xs : flower[b]) {
            for (int x = 1; x <= nx; ++x)
                if (arc(xs, x).w > 0.0 &&
                    (arc(b, x).w == 0.0 || e_delta(arc(xs, x)) < e_delta(arc(b, x)))) {
                    arc(b, x) = arc(xs, x);
                    arc(x, b) = arc(x, xs);
                }
            for (int x = 1; x <= n; ++x)
                if (ffrom(xs, x)) ffrom(b, x) = xs;
        }
        set_slack(b);
    }

    void expand_blossom(int b) {
        for (int x : flower[b]) set_st(x, x);
        const int xr = ffrom(b, arc(b, pa[b]).u);
        const int pr = get_pr(b, xr);
        for (int i = 0; i < pr; i += 2) {
            const int xs = flower[b][i];
            const int xns = flower[b][i + 1];
            pa[xs] = arc(xns, xs).u;
            S[xs] = 1;
            S[xns] = 0;
            slack[xs] = 0;
            set_slack(xns);
            q_push(xns);
        }
        S[xr] = 1;
        pa[xr] = pa[b];
        for (std::size_t i = pr + 1; i < flower[b].size(); ++i) {
            S[flower[b][i]] = -1;
            set_slack(flower[b][i]);
        }
        st[b] = 0;
    }

    bool on_found_edge(const Arc& e) {
        const int u = st[e.u], v = st[e.v];
        if (S[v] == -1) {
            pa[v] = e.u;
            S[v] = 1;
            const int nu = st[match[v]];
            slack[v] = slack[nu] = 0;
            S[nu] = 0;
            q_push(nu);
        } else if (S[v] == 0) {
            const int lca = get_lca(u, v);
            if (!lca) {
                augment(u, v);
                augment(v, u);
                return true;
            }
            add_blossom(u, lca, v);
        }
        return false;
    }

    bool matching_round() {
        std::fill(S.begin(), S.begin() + nx + 1, -1);
        std::fill(slack.begin(), slack.begin() + nx + 1, 0);
        q.clear();
        for (int x = 1; x <= nx; ++x)
            if (st[x] == x && !match[x]) {
                pa[x] = 0;
                S[x] = 0;
                q_push(x);
            }
        if (q.empty()) return false;
        while (true) {
            while (!q.empty()) {
                const int u = q.front();
                q.pop_front();
                if (S[st[u]] == 1) continue;
                for (int v = 1; v <= n; ++v)
                    if (arc(u, v).w > 0.0 && st[u] != st[v]) {
                        if (e_delta(arc(u, v)) < kEps) {
                            if (on_found_edge(arc(u, v))) return true;
                        } else {
                            update_slack(u, st[v]);
                        }
                    }
            }
            double d = kInf;
            for (int b = n + 1; b <= nx; ++b)
                if (st[b] == b && S[b] == 1) d = std::min(d, lab[b] / 2);
            for (int x = 1; x <= nx; ++x)
                if (st[x] == x && slack[x]) {
                    if (S[x] == -1)
                        d = std::min(d, e_delta(arc(slack[x], x)));
                    else if (S[x] == 0)
                        d = std::min(d, e_delta(arc(slack[x], x)) / 2);
                }
            for (int u = 1; u <= n; ++u) {
                if (S[st[u]] == 0) {
                    if (lab[u] <= d + kEps) return false;
                    lab[u] -= d;
                } else if (S[st[u]] == 1) {
                    lab[u] += d;
                }
            }
            for (int b = n + 1; b <= nx; ++b)
                if (st[b] == b) {
                    if (S[b] == 0)
                        lab[b] += d * 2;
                    else if (S[b] == 1)
                        lab[b] -= d * 2;
                }
            q.clear();
            for (int x = 1; x <= nx; ++x)
                if (st[x] == x && slack[x] && st[slack[x]] != x &&
                    e_delta(arc(slack[x], x)) < kEps)
                    if (on_found_edge(arc(slack[x], x))) return true;
            for (int b = n + 1; b <= nx; ++b)
                if (st[b] == b && S[b] == 1 && lab[b] < kEps) expand_blossom(b);
        }
    }
};

}  // namespace

ExactResult exact_match_blossom(const WeightedGraph& g) {
    const int n = g.vertex_count();
    ExactResult res;
    res.mate.assign(n, -1);
    res.method = "blossom";

    double wmax = 0.0;
    for (const auto& e : g.edges()) wmax = std::max(wmax, e.w);
    if (n == 0 || wmax <= 0.0) return res;

    BlossomSolver solver(n);
    for (const auto& e : g.edges()) {
        if (e.w <= 0.0) continue;  // never part of a maximum
        const double w = e.w / wmax;
        solver.arc(e.u + 1, e.v + 1).w = w;
        solver.arc(e.v + 1, e.u + 1).w = w;
    }
    for (int u = 1; u <= n; ++u) solver.lab[u] = 1.0;

    while (solver.matching_round()) {
    }

    for (int u = 1; u <= n; ++u)
        if (solver.match[u]) res.mate[u - 1] = solver.match[u] - 1;
    finish_result(g, res);
    return res;
}

ExactResult exact_match(const WeightedGraph& g, int blossom_cap) {
    if (g.is_bipartite()) return exact_match_bipartite(g);
    if (g.vertex_count() > blossom_cap)
        throw InvalidParameter("exact matcher: non-bipartite graph exceeds " +
                               std::to_string(blossom_cap) + " vertices");
    return exact_match_blossom(g);
}

}  // namespace d2d
