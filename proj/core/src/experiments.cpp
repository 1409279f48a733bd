#include "d2d/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>
#include <unordered_map>
#include <utility>

#include "d2d/errors.hpp"
#include "d2d/exact.hpp"
#include "d2d/generators.hpp"
#include "d2d/rng.hpp"
#include "d2d/text.hpp"
#include "d2d/tree_analytics.hpp"

namespace d2d {

namespace {

// Substream channels under (seed, trial, .). Everything a trial consumes is
// derived from these, so trial t is identical no matter which worker runs it
// or what ran before it.
constexpr std::uint64_t kChanTopology = 0;
constexpr std::uint64_t kChanWeights = 1;
constexpr std::uint64_t kChanFailure = 2;
constexpr std::uint64_t kChanRelabel = 3;
constexpr std::uint64_t kChanBootstrap = 11;

// Results land in preallocated per-trial slots; the atomic cursor only hands
// out indices. Output is therefore independent of the worker count.
template <typename Fn>
void run_trials(std::size_t trials, int jobs, Fn&& fn) {
    std::size_t workers = jobs <= 0 ? std::thread::hardware_concurrency()
                                    : static_cast<std::size_t>(jobs);
    workers = std::min(std::max<std::size_t>(workers, 1), trials);
    if (workers <= 1) {
        for (std::size_t t = 0; t < trials; ++t) fn(t);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::mutex err_mu;
    std::exception_ptr err;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                std::size_t t = next.fetch_add(1);
                if (t >= trials) return;
                try {
                    fn(t);
                } catch (...) {
                    std::lock_guard<std::mutex> lk(err_mu);
                    if (!err) err = std::current_exception();
                    next.store(trials);
                    return;
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    if (err) std::rethrow_exception(err);
}

std::vector<std::string> split_fields(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::size_t pos = 0;
    while (true) {
        std::size_t next = s.find(sep, pos);
        if (next == std::string::npos) {
            out.push_back(s.substr(pos));
            return out;
        }
        out.push_back(s.substr(pos, next - pos));
        pos = next + 1;
    }
}

int to_count(std::string_view tok, const std::string& ctx) {
    std::int64_t v = parse_int(tok, ctx);
    if (v < 1 || v > std::numeric_limits<int>::max())
        throw InvalidParameter(ctx + " out of range: " + std::string(tok));
    return static_cast<int>(v);
}

void check_spec(const GenSpec& s) {
    switch (s.family) {
        case GenSpec::Family::Grid:
            if (s.rows < 1 || s.cols < 1)
                throw InvalidParameter("grid dimensions must be positive");
            break;
        case GenSpec::Family::Gnp:
            if (s.n < 1) throw InvalidParameter("gnp size must be positive");
            if (!(s.p >= 0.0 && s.p <= 1.0))
                throw InvalidParameter("gnp edge probability must lie in [0, 1]");
            break;
        case GenSpec::Family::GnpMeanDegree:
            if (s.n < 1) throw InvalidParameter("gnpd size must be positive");
            if (!(s.mean_degree >= 0.0) || !std::isfinite(s.mean_degree))
                throw InvalidParameter("gnpd mean degree must be nonnegative");
            break;
        case GenSpec::Family::Tree:
            if (!(s.mean_degree >= 0.0) || !std::isfinite(s.mean_degree))
                throw InvalidParameter("tree mean degree must be nonnegative");
            if (s.node_cap < 1) throw InvalidParameter("tree node cap must be positive");
            break;
        case GenSpec::Family::Disk:
            if (s.n < 1) throw InvalidParameter("disk size must be positive");
            if (!(s.disk_radius > 0.0) || !std::isfinite(s.disk_radius))
                throw InvalidParameter("disk radius must be positive");
            if (!(s.range > 0.0) || !std::isfinite(s.range))
                throw InvalidParameter("disk link range must be positive");
            break;
    }
}

double mean_of(const std::vector<double>& xs) {
    if (xs.empty()) return 0.0;
    double s = 0.0;
    for (double x : xs) s += x;
    return s / static_cast<double>(xs.size());
}

}  // namespace

GenSpec GenSpec::parse(const std::string& text) {
    std::size_t colon = text.find(':');
    if (colon == std::string::npos)
        throw InvalidParameter("instance spec needs a family prefix: " + text);
    std::string fam = text.substr(0, colon);
    std::vector<std::string> f = split_fields(text.substr(colon + 1), ',');
    GenSpec s;
    if (fam == "grid") {
        if (f.size() != 1)
            throw InvalidParameter("grid spec takes one RxC field: " + text);
        std::size_t x = f[0].find('x');
        if (x == std::string::npos)
            throw InvalidParameter("grid spec needs RxC: " + text);
        s.family = Family::Grid;
        s.rows = to_count(std::string_view(f[0]).substr(0, x), "grid rows");
        s.cols = to_count(std::string_view(f[0]).substr(x + 1), "grid cols");
    } else if (fam == "line") {
        if (f.size() != 1) throw InvalidParameter("line spec takes one field: " + text);
        s.family = Family::Grid;
        s.rows = 1;
        s.cols = to_count(f[0], "line length");
    } else if (fam == "gnp") {
        if (f.size() != 2) throw InvalidParameter("gnp spec takes N,P: " + text);
        s.family = Family::Gnp;
        s.n = to_count(f[0], "gnp size");
        s.p = parse_double(f[1], "gnp edge probability");
    } else if (fam == "gnpd") {
        if (f.size() != 2) throw InvalidParameter("gnpd spec takes N,D: " + text);
        s.family = Family::GnpMeanDegree;
        s.n = to_count(f[0], "gnpd size");
        s.mean_degree = parse_double(f[1], "gnpd mean degree");
    } else if (fam == "tree") {
        if (f.size() != 1 && f.size() != 2)
            throw InvalidParameter("tree spec takes D[,CAP]: " + text);
        s.family = Family::Tree;
        s.mean_degree = parse_double(f[0], "tree mean degree");
        if (f.size() == 2) s.node_cap = to_count(f[1], "tree node cap");
    } else if (fam == "disk") {
        if (f.size() != 3) throw InvalidParameter("disk spec takes N,R,L: " + text);
        s.family = Family::Disk;
        s.n = to_count(f[0], "disk size");
        s.disk_radius = parse_double(f[1], "disk radius");
        s.range = parse_double(f[2], "disk link range");
    } else {
        throw InvalidParameter("unknown instance family: " + fam);
    }
    check_spec(s);
    return s;
}

std::string GenSpec::describe() const {
    switch (family) {
        case Family::Grid:
            if (rows == 1) return "line:" + std::to_string(cols);
            return "grid:" + std::to_string(rows) + "x" + std::to_string(cols);
        case Family::Gnp:
            return "gnp:" + std::to_string(n) + "," + format_double(p);
        case Family::GnpMeanDegree:
            return "gnpd:" + std::to_string(n) + "," + format_double(mean_degree);
        case Family::Tree:
            return "tree:" + format_double(mean_degree) + "," + std::to_string(node_cap);
        case Family::Disk:
            return "disk:" + std::to_string(n) + "," + format_double(disk_radius) + "," +
                   format_double(range);
    }
    return "";
}

std::int64_t GenSpec::vertex_count_hint() const {
    switch (family) {
        case Family::Grid:
            return static_cast<std::int64_t>(rows) * cols;
        case Family::Gnp:
        case Family::GnpMeanDegree:
        case Family::Disk:
            return n;
        case Family::Tree:
            return node_cap;
    }
    return 0;
}

WeightedGraph GenSpec::build(std::uint64_t seed, std::uint64_t trial) const {
    check_spec(*this);
    Rng topo = Rng::stream(seed, trial, kChanTopology);
    switch (family) {
        case Family::Grid:
            return gen_grid(rows, cols);
        case Family::Gnp:
            return gen_gnp(n, p, topo);
        case Family::GnpMeanDegree: {
            double p_eff = n > 0 ? std::min(1.0, mean_degree / n) : 0.0;
            return gen_gnp(n, p_eff, topo);
        }
        case Family::Tree:
            return gen_poisson_tree(mean_degree, node_cap, topo);
        case Family::Disk: {
            std::vector<LocationRecord> pts = disk_points(n, disk_radius, topo);
            return gen_geometric(pts, range);
        }
    }
    throw InvalidParameter("unknown instance family");
}

GenSpec GenSpec::with_size(int size) const {
    GenSpec s = *this;
    switch (family) {
        case Family::Grid:
            s.rows = 1;
            s.cols = size;
            break;
        case Family::Gnp:
        case Family::GnpMeanDegree:
        case Family::Disk:
            s.n = size;
            break;
        case Family::Tree:
            throw InvalidParameter("tree instances have no size parameter to sweep");
    }
    check_spec(s);
    return s;
}

std::uint64_t weight_seed(std::uint64_t seed, std::uint64_t trial) {
    return Rng::stream(seed, trial, kChanWeights).next_u64();
}

AggregateResult aggregate(const std::vector<double>& samples) {
    AggregateResult r;
    r.trials = samples.size();
    if (samples.empty()) return r;
    r.mean = mean_of(samples);
    if (samples.size() >= 2) {
        double ss = 0.0;
        for (double x : samples) ss += (x - r.mean) * (x - r.mean);
        double var = ss / static_cast<double>(samples.size() - 1);
        r.std_error = std::sqrt(var / static_cast<double>(samples.size()));
    }
    return r;
}

RatioReport mc_ratio(const GenSpec& spec, const WeightDistribution& dist,
                     std::size_t trials, std::uint64_t seed, int jobs, TiePolicy tie) {
    if (trials == 0) throw InvalidParameter("trials must be positive");
    if (!(dist.max_value() > 0.0))
        throw InvalidParameter("weight distribution must have a positive top value");
    constexpr int kExactVertexLimit = 10'000;
    constexpr int kDenseExactLimit = 1'200;  // matches the general-solver cap

    std::vector<TrialRecord> recs(trials);
    run_trials(trials, jobs, [&](std::size_t t) {
        WeightedGraph g = spec.build(seed, t);
        assign_weights(g, dist, weight_seed(seed, t));
        MatchingResult mr = greedy_match(g, tie);
        TrialRecord& r = recs[t];
        r.trial = t;
        r.n = g.vertex_count();
        r.edges = g.edge_count();
        r.greedy_welfare = mr.welfare;
        r.rounds = mr.rounds;
        r.matched = static_cast<int>(mr.matched_edges.size());
        double top = dist.max_value();
        for (int e : mr.matched_edges)
            if (g.edge(e).w == top) ++r.matched_top;
        bool exact_ok = r.n <= kExactVertexLimit &&
                        (r.n <= kDenseExactLimit || g.is_bipartite());
        if (exact_ok) {
            r.reference_welfare = exact_match(g).welfare;
        } else {
            r.reference_welfare = welfare_upper_bound(g, dist).value;
            r.reference_is_bound = true;
        }
    });

    RatioReport rep;
    double sum_greedy = 0.0, sum_ref = 0.0;
    std::vector<double> per_ratio(trials);
    for (std::size_t t = 0; t < trials; ++t) {
        sum_greedy += recs[t].greedy_welfare;
        sum_ref += recs[t].reference_welfare;
        rep.reference_is_bound = rep.reference_is_bound || recs[t].reference_is_bound;
        per_ratio[t] = recs[t].reference_welfare > 0.0
                           ? recs[t].greedy_welfare / recs[t].reference_welfare
                           : 1.0;
    }
    rep.ratio_of_means = sum_ref > 0.0 ? sum_greedy / sum_ref : 1.0;
    rep.mean_of_ratios = mean_of(per_ratio);

    if (trials >= 2) {
        constexpr int kResamples = 1000;
        Rng boot = Rng::stream(seed, 0x626F6F74ULL, kChanBootstrap);
        std::vector<double> reps(kResamples);
        for (int b = 0; b < kResamples; ++b) {
            double bg = 0.0, br = 0.0;
            for (std::size_t i = 0; i < trials; ++i) {
                const TrialRecord& r = recs[boot.next_below(trials)];
                bg += r.greedy_welfare;
                br += r.reference_welfare;
            }
            reps[b] = br > 0.0 ? bg / br : 1.0;
        }
        double bm = mean_of(reps);
        double ss = 0.0;
        for (double x : reps) ss += (x - bm) * (x - bm);
        rep.std_error = std::sqrt(ss / static_cast<double>(kResamples - 1));
    }
    rep.records = std::move(recs);
    return rep;
}

std::vector<RoundsRow> mc_rounds(const GenSpec& base, const std::vector<int>& sizes,
                                 const WeightDistribution& dist, std::size_t trials,
                                 std::uint64_t seed, int jobs, TiePolicy tie) {
    if (trials == 0) throw InvalidParameter("trials must be positive");
    if (sizes.empty()) throw InvalidParameter("size list must not be empty");
    for (int n : sizes)
        if (n < 2) throw InvalidParameter("sweep sizes must be at least 2");

    std::vector<RoundsRow> rows(sizes.size());
    for (std::size_t si = 0; si < sizes.size(); ++si) {
        GenSpec spec = base.with_size(sizes[si]);
        std::vector<double> rounds(trials);
        run_trials(trials, jobs, [&](std::size_t t) {
            std::uint64_t id = si * trials + t;
            WeightedGraph g = spec.build(seed, id);
            assign_weights(g, dist, weight_seed(seed, id));
            rounds[t] = greedy_match(g, tie).rounds;
        });
        RoundsRow& row = rows[si];
        row.n = sizes[si];
        row.mean_rounds = mean_of(rounds);
        std::vector<double> sorted = rounds;
        std::sort(sorted.begin(), sorted.end());
        std::size_t h = trials / 2;
        row.median_rounds =
            trials % 2 ? sorted[h] : 0.5 * (sorted[h - 1] + sorted[h]);
        row.max_rounds = static_cast<int>(sorted.back());
        row.max_over_log = row.max_rounds / std::log(static_cast<double>(sizes[si]));
    }
    return rows;
}

TreeApproxReport tree_approx_error(int n, double d, const WeightDistribution& dist,
                                   std::size_t trials, std::uint64_t seed, int jobs,
                                   TiePolicy tie) {
    if (n < 1) throw InvalidParameter("instance size must be positive");
    if (trials == 0) throw InvalidParameter("trials must be positive");
    GenSpec spec;
    spec.family = GenSpec::Family::GnpMeanDegree;
    spec.n = n;
    spec.mean_degree = d;
    check_spec(spec);

    TreeApproxReport rep;
    rep.analytic = root_expected_weight(dist, d);
    std::vector<double> per_user(trials);
    run_trials(trials, jobs, [&](std::size_t t) {
        WeightedGraph g = spec.build(seed, t);
        assign_weights(g, dist, weight_seed(seed, t));
        per_user[t] = greedy_match(g, tie).welfare / n;
    });
    rep.per_user = aggregate(per_user);
    rep.rel_error =
        rep.analytic != 0.0 ? std::abs(rep.per_user.mean / rep.analytic - 1.0) : 0.0;
    return rep;
}

namespace {

// One branching-process sample, optionally with a pendant observer vertex
// wired to the root by a fixed-value edge, then relabeled by a uniform random
// permutation. Relabeling makes index tie-breaking an exchangeable random
// priority, which is the tie model the fixed-point equations assume.
struct TreeSample {
    WeightedGraph g;
    bool truncated = false;
    int root = 0;    // relabeled root
    int parent = -1; // relabeled observer, -1 if none
};

TreeSample sample_tree(const WeightDistribution& dist, double d, int node_cap,
                       std::uint64_t seed, std::uint64_t trial, int parent_level) {
    TreeSample out;
    Rng topo = Rng::stream(seed, trial, kChanTopology);
    WeightedGraph sub = gen_poisson_tree(d, node_cap, topo);
    if (sub.truncated) {
        out.truncated = true;
        return out;
    }
    assign_weights(sub, dist, weight_seed(seed, trial));
    int n_all = sub.vertex_count() + (parent_level >= 0 ? 1 : 0);

    std::vector<int> perm(n_all);
    for (int i = 0; i < n_all; ++i) perm[i] = i;
    Rng rl = Rng::stream(seed, trial, kChanRelabel);
    for (int i = n_all - 1; i > 0; --i)
        std::swap(perm[i], perm[rl.next_below(static_cast<std::uint64_t>(i) + 1)]);

    std::vector<Edge> edges;
    edges.reserve(sub.edge_count() + 1);
    for (const Edge& e : sub.edges()) edges.push_back({perm[e.u], perm[e.v], e.w});
    if (parent_level >= 0)
        edges.push_back({perm[0], perm[sub.vertex_count()],
                         dist.value(static_cast<std::size_t>(parent_level))});
    out.g = WeightedGraph(n_all, std::move(edges));
    out.root = perm[0];
    if (parent_level >= 0) out.parent = perm[sub.vertex_count()];
    return out;
}

TreeEstimate summarize_tree_runs(const std::vector<double>& slots) {
    std::vector<double> kept;
    kept.reserve(slots.size());
    for (double x : slots)
        if (!std::isnan(x)) kept.push_back(x);
    if (kept.empty())
        throw SolverFailure("every sampled tree hit the node cap; raise the cap");
    TreeEstimate est;
    est.value = aggregate(kept);
    est.discard_rate =
        1.0 - static_cast<double>(kept.size()) / static_cast<double>(slots.size());
    return est;
}

}  // namespace

TreeEstimate mc_proposal_prob(const WeightDistribution& dist, double d, std::size_t level,
                              std::size_t trials, std::uint64_t seed, int node_cap,
                              int jobs) {
    if (trials == 0) throw InvalidParameter("trials must be positive");
    if (level >= dist.size())
        throw InvalidParameter("weight level out of range");
    if (!(d >= 0.0) || !std::isfinite(d))
        throw InvalidParameter("mean degree must be nonnegative");
    if (node_cap < 1) throw InvalidParameter("node cap must be positive");

    // The observer is a leaf whose only neighbor is the root, so it always
    // points at the root and ends up matched exactly when the root at some
    // round points back, i.e. when the child of the analytic model would
    // propose along its parent edge.
    std::vector<double> slots(trials, std::numeric_limits<double>::quiet_NaN());
    run_trials(trials, jobs, [&](std::size_t t) {
        TreeSample s =
            sample_tree(dist, d, node_cap, seed, t, static_cast<int>(level));
        if (s.truncated) return;
        MatchingResult mr = greedy_match(s.g, TiePolicy::LowestIndexNeighbor);
        slots[t] = mr.mate[s.parent] != -1 ? 1.0 : 0.0;
    });
    return summarize_tree_runs(slots);
}

TreeEstimate mc_root_weight(const WeightDistribution& dist, double d, std::size_t trials,
                            std::uint64_t seed, int node_cap, int jobs) {
    if (trials == 0) throw InvalidParameter("trials must be positive");
    if (!(d >= 0.0) || !std::isfinite(d))
        throw InvalidParameter("mean degree must be nonnegative");
    if (node_cap < 1) throw InvalidParameter("node cap must be positive");

    std::vector<double> slots(trials, std::numeric_limits<double>::quiet_NaN());
    run_trials(trials, jobs, [&](std::size_t t) {
        TreeSample s = sample_tree(dist, d, node_cap, seed, t, -1);
        if (s.truncated) return;
        MatchingResult mr = greedy_match(s.g, TiePolicy::LowestIndexNeighbor);
        double x = 0.0;
        int m = mr.mate[s.root];
        if (m != -1) {
            for (const AdjEntry& a : s.g.neighbors(s.root))
                if (a.nbr == m) {
                    x = 0.5 * s.g.edge(a.edge).w;
                    break;
                }
        }
        slots[t] = x;
    });
    return summarize_tree_runs(slots);
}

double FailureModel::default_alpha() {
    return -std::log(0.9) / std::pow(50.0, 3.5);
}

double FailureModel::p_fail(double dist_m, int interferers) const {
    if (!enabled) return 0.0;
    double load = alpha * std::pow(dist_m, gamma) + beta * interferers;
    return -std::expm1(-load);
}

namespace {

void check_failure_model(const FailureModel& fm) {
    if (!(fm.alpha >= 0.0) || !std::isfinite(fm.alpha))
        throw InvalidParameter("failure alpha must be nonnegative");
    if (!(fm.gamma > 0.0) || !std::isfinite(fm.gamma))
        throw InvalidParameter("failure gamma must be positive");
    if (!(fm.beta >= 0.0) || !std::isfinite(fm.beta))
        throw InvalidParameter("failure beta must be nonnegative");
}

// Interferers of a matched pair: other matched pairs with an endpoint on the
// same floor strictly within the radius of either endpoint. Counted with a
// cell grid so a sweep over dense fields stays near-linear.
std::vector<int> count_interference(const std::vector<LocationRecord>& pts,
                                    const WeightedGraph& g,
                                    const std::vector<int>& matched, double radius) {
    const int pairs = static_cast<int>(matched.size());
    std::vector<int> count(pairs, 0);
    if (pairs <= 1 || !(radius > 0.0)) return count;

    struct Endpoint {
        double x, y;
        int fl, pair;
    };
    std::vector<Endpoint> eps;
    eps.reserve(2 * static_cast<std::size_t>(pairs));
    for (int q = 0; q < pairs; ++q) {
        const Edge& ed = g.edge(matched[q]);
        eps.push_back({pts[ed.u].x, pts[ed.u].y, pts[ed.u].floor, q});
        eps.push_back({pts[ed.v].x, pts[ed.v].y, pts[ed.v].floor, q});
    }

    auto cell = [radius](double c) {
        return static_cast<std::int64_t>(std::floor(c / radius));
    };
    struct Key {
        int fl;
        std::int64_t cx, cy;
        bool operator==(const Key&) const = default;
    };
    struct KeyHash {
        std::size_t operator()(const Key& k) const {
            std::uint64_t h = static_cast<std::uint64_t>(k.fl) * 0x9E3779B97F4A7C15ULL;
            h = (h ^ static_cast<std::uint64_t>(k.cx)) * 0xBF58476D1CE4E5B9ULL;
            h = (h ^ static_cast<std::uint64_t>(k.cy)) * 0x94D049BB133111EBULL;
            return static_cast<std::size_t>(h ^ (h >> 31));
        }
    };
    std::unordered_map<Key, std::vector<int>, KeyHash> grid;
    for (int i = 0; i < static_cast<int>(eps.size()); ++i)
        grid[Key{eps[i].fl, cell(eps[i].x), cell(eps[i].y)}].push_back(i);

    const double r2 = radius * radius;
    std::vector<int> stamp(pairs, -1);
    for (int q = 0; q < pairs; ++q) {
        for (int side = 0; side < 2; ++side) {
            const Endpoint& a = eps[2 * q + side];
            for (std::int64_t dx = -1; dx <= 1; ++dx) {
                for (std::int64_t dy = -1; dy <= 1; ++dy) {
                    auto it = grid.find(Key{a.fl, cell(a.x) + dx, cell(a.y) + dy});
                    if (it == grid.end()) continue;
                    for (int j : it->second) {
                        const Endpoint& b = eps[j];
                        if (b.pair == q || stamp[b.pair] == q || b.fl != a.fl) continue;
                        double ddx = a.x - b.x, ddy = a.y - b.y;
                        if (ddx * ddx + ddy * ddy < r2) {
                            stamp[b.pair] = q;
                            ++count[q];
                        }
                    }
                }
            }
        }
    }
    return count;
}

template <typename PointsFn>
std::vector<SweepPoint> sweep_impl(PointsFn&& points_for, int n_devices,
                                   const std::vector<double>& ranges,
                                   const WeightDistribution& dist, const FailureModel& fm,
                                   std::size_t trials, std::uint64_t seed, int jobs,
                                   TiePolicy tie) {
    if (trials == 0) throw InvalidParameter("trials must be positive");
    if (ranges.empty()) throw InvalidParameter("range list must not be empty");
    for (double L : ranges)
        if (!(L > 0.0) || !std::isfinite(L))
            throw InvalidParameter("link ranges must be positive");
    if (n_devices < 1) throw InvalidParameter("device field must not be empty");
    check_failure_model(fm);

    const std::size_t nr = ranges.size();
    std::vector<std::vector<double>> pu(nr, std::vector<double>(trials, 0.0));
    std::vector<std::vector<double>> mrate = pu, mint = pu;

    run_trials(trials, jobs, [&](std::size_t t) {
        // One device field per trial, shared by every range, so the sweep
        // isolates the effect of the range itself.
        std::vector<LocationRecord> pts = points_for(t);
        std::uint64_t wseed = weight_seed(seed, t);
        std::uint64_t fseed = Rng::stream(seed, t, kChanFailure).next_u64();
        for (std::size_t ri = 0; ri < nr; ++ri) {
            WeightedGraph g = gen_geometric(pts, ranges[ri]);
            assign_weights(g, dist, wseed);
            MatchingResult m = greedy_match(g, tie);
            double radius = fm.interference_radius > 0.0 ? fm.interference_radius
                                                         : ranges[ri];
            std::vector<int> icount =
                count_interference(pts, g, m.matched_edges, radius);
            Rng fr = Rng::stream(fseed, ri);
            double realized = 0.0;
            for (std::size_t qi = 0; qi < m.matched_edges.size(); ++qi) {
                int e = m.matched_edges[qi];
                double p = fm.p_fail(g.edge_dist[e], icount[qi]);
                if (fr.next_double() >= p) realized += g.edge(e).w;
            }
            pu[ri][t] = realized / n_devices;
            mrate[ri][t] =
                2.0 * static_cast<double>(m.matched_edges.size()) / n_devices;
            double isum = 0.0;
            for (int c : icount) isum += c;
            mint[ri][t] = icount.empty() ? 0.0 : isum / static_cast<double>(icount.size());
        }
    });

    std::vector<SweepPoint> out(nr);
    for (std::size_t ri = 0; ri < nr; ++ri) {
        out[ri].range = ranges[ri];
        out[ri].per_user = aggregate(pu[ri]);
        out[ri].match_rate = mean_of(mrate[ri]);
        out[ri].mean_interference = mean_of(mint[ri]);
    }
    return out;
}

}  // namespace

std::vector<SweepPoint> range_sweep(int n, double disk_radius,
                                    const std::vector<double>& ranges,
                                    const WeightDistribution& dist, const FailureModel& fm,
                                    std::size_t trials, std::uint64_t seed, int jobs,
                                    TiePolicy tie) {
    if (n < 1) throw InvalidParameter("device count must be positive");
    if (!(disk_radius > 0.0) || !std::isfinite(disk_radius))
        throw InvalidParameter("disk radius must be positive");
    auto points_for = [&](std::size_t t) {
        Rng topo = Rng::stream(seed, t, kChanTopology);
        return disk_points(n, disk_radius, topo);
    };
    return sweep_impl(points_for, n, ranges, dist, fm, trials, seed, jobs, tie);
}

std::vector<SweepPoint> range_sweep(const std::vector<LocationRecord>& locs,
                                    const std::vector<double>& ranges,
                                    const WeightDistribution& dist, const FailureModel& fm,
                                    std::size_t trials, std::uint64_t seed, int jobs,
                                    TiePolicy tie) {
    auto points_for = [&](std::size_t) { return locs; };
    return sweep_impl(points_for, static_cast<int>(locs.size()), ranges, dist, fm,
                      trials, seed, jobs, tie);
}

WorstCaseDemo worst_case_demo(double eps) {
    if (!(eps > 0.0) || !std::isfinite(eps))
        throw InvalidParameter("eps must be positive");
    WeightedGraph g = line_from_weights({1.0, 1.0 + eps, 1.0});
    WorstCaseDemo demo;
    demo.greedy = greedy_match(g, TiePolicy::LowestIndexNeighbor).welfare;
    demo.exact = exact_match(g).welfare;
    demo.ratio = demo.greedy / demo.exact;
    return demo;
}

}  // namespace d2d
