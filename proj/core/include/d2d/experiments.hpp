#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "d2d/distribution.hpp"
#include "d2d/graph.hpp"
#include "d2d/greedy.hpp"
#include "d2d/locations.hpp"

namespace d2d {

// Instance family for the Monte Carlo harnesses. Literal forms:
//   grid:RxC        lattice, row-major
//   line:N          path on N vertices (grid:1xN)
//   gnp:N,P         G(n, p)
//   gnpd:N,D        G(n, d/n), mean degree d
//   tree:D[,CAP]    branching-process tree, node cap optional
//   disk:N,R,L      N devices uniform on a disk of radius R, link range L
struct GenSpec {
    enum class Family { Grid, Gnp, GnpMeanDegree, Tree, Disk };

    Family family = Family::Grid;
    int rows = 1, cols = 1;
    int n = 0;
    double p = 0.0;
    double mean_degree = 0.0;
    int node_cap = 1'000'000;
    double disk_radius = 0.0;
    double range = 0.0;

    static GenSpec parse(const std::string& text);
    std::string describe() const;
    std::int64_t vertex_count_hint() const;

    // Topology for one trial; weights are assigned separately. Distinct
    // trials use disjoint substreams of the seed.
    WeightedGraph build(std::uint64_t seed, std::uint64_t trial) const;

    GenSpec with_size(int n) const;  // line length or G(n, .) size for sweeps
};

// Seed for the weight assignment of one trial; build() plus this is the full
// deterministic recipe for an instance.
std::uint64_t weight_seed(std::uint64_t seed, std::uint64_t trial);

struct TrialRecord {
    std::uint64_t trial = 0;
    int n = 0;
    int edges = 0;
    double greedy_welfare = 0.0;
    double reference_welfare = 0.0;  // exact optimum, or the degree bound
    bool reference_is_bound = false;
    int rounds = 0;
    int matched = 0;
    int matched_top = 0;  // matched edges carrying the top weight value
};

struct AggregateResult {
    std::size_t trials = 0;
    double mean = 0.0;
    double std_error = 0.0;
};

AggregateResult aggregate(const std::vector<double>& samples);

// Greedy-vs-reference welfare ratio over independent instances. The headline
// number is the ratio of summed welfares; its spread comes from a bootstrap
// over trials. Instances too large (or too tangled) for an exact solve fall
// back to the degree bound, which turns the estimate into a lower bound and
// sets reference_is_bound.
struct RatioReport {
    double ratio_of_means = 0.0;
    double std_error = 0.0;
    double mean_of_ratios = 0.0;
    bool reference_is_bound = false;
    std::vector<TrialRecord> records;
};

RatioReport mc_ratio(const GenSpec& spec, const WeightDistribution& dist,
                     std::size_t trials, std::uint64_t seed, int jobs = 1,
                     TiePolicy tie = TiePolicy::LowestIndexNeighbor);

// Round-count scaling over instance sizes.
struct RoundsRow {
    int n = 0;
    double mean_rounds = 0.0;
    double median_rounds = 0.0;
    int max_rounds = 0;
    double max_over_log = 0.0;  // max_rounds / ln n
};

std::vector<RoundsRow> mc_rounds(const GenSpec& base, const std::vector<int>& sizes,
                                 const WeightDistribution& dist, std::size_t trials,
                                 std::uint64_t seed, int jobs = 1,
                                 TiePolicy tie = TiePolicy::LowestIndexNeighbor);

// Mean per-user welfare of greedy on G(n, d/n) against the tree-analytic
// prediction for the same mean degree.
struct TreeApproxReport {
    double analytic = 0.0;
    AggregateResult per_user;
    double rel_error = 0.0;
};

TreeApproxReport tree_approx_error(int n, double d, const WeightDistribution& dist,
                                   std::size_t trials, std::uint64_t seed, int jobs = 1,
                                   TiePolicy tie = TiePolicy::LowestIndexNeighbor);

// Direct tree-model estimators. Both relabel each sampled tree by a uniform
// random permutation so index tie-breaking becomes an exchangeable random
// priority, matching the analytic tie model; truncated samples are dropped
// and reported.
struct TreeEstimate {
    AggregateResult value;
    double discard_rate = 0.0;
};

// Frequency with which a child whose parent edge carries value(level) ever
// proposes to a leaf parent attached for the purpose.
TreeEstimate mc_proposal_prob(const WeightDistribution& dist, double d, std::size_t level,
                              std::size_t trials, std::uint64_t seed,
                              int node_cap = 1'000'000, int jobs = 1);

// Mean half-weight the tree root collects.
TreeEstimate mc_root_weight(const WeightDistribution& dist, double d, std::size_t trials,
                            std::uint64_t seed, int node_cap = 1'000'000, int jobs = 1);

// Link failure: p = 1 - exp(-alpha * dist^gamma - beta * interferers), with
// interferers counted as other matched pairs having an endpoint within the
// interference radius of either endpoint.
struct FailureModel {
    static double default_alpha();  // calibrated to 10% loss at 50 m alone

    bool enabled = true;
    double alpha = default_alpha();
    double gamma = 3.5;
    double beta = 0.05;
    double interference_radius = 0.0;  // <= 0 means: use the current link range

    double p_fail(double dist_m, int interferers) const;
};

struct SweepPoint {
    double range = 0.0;
    AggregateResult per_user;      // realized welfare / n
    double match_rate = 0.0;
    double mean_interference = 0.0;
};

// Sweeps the link range over a fixed device field: within a trial all ranges
// see the same point set, isolating the effect of the range itself.
std::vector<SweepPoint> range_sweep(int n, double disk_radius,
                                    const std::vector<double>& ranges,
                                    const WeightDistribution& dist, const FailureModel& fm,
                                    std::size_t trials, std::uint64_t seed, int jobs = 1,
                                    TiePolicy tie = TiePolicy::LowestIndexNeighbor);

std::vector<SweepPoint> range_sweep(const std::vector<LocationRecord>& locs,
                                    const std::vector<double>& ranges,
                                    const WeightDistribution& dist, const FailureModel& fm,
                                    std::size_t trials, std::uint64_t seed, int jobs = 1,
                                    TiePolicy tie = TiePolicy::LowestIndexNeighbor);

// Three-edge path with weights (1, 1+eps, 1): greedy takes the middle edge,
// the optimum takes the flanks. ratio -> 1/2 as eps -> 0.
struct WorstCaseDemo {
    double greedy = 0.0;
    double exact = 0.0;
    double ratio = 0.0;
};

WorstCaseDemo worst_case_demo(double eps);

}  // namespace d2d
