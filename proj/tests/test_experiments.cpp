#include "d2d/experiments.hpp"

#include <cmath>
#include <thread>
#include <vector>

#include "d2d/errors.hpp"
#include "d2d/generators.hpp"
#include "d2d/tree_analytics.hpp"
#include "support.hpp"

namespace {

int hw_jobs() {
    const unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 2 : static_cast<int>(hc);
}

bool same_records(const std::vector<d2d::TrialRecord>& a,
                  const std::vector<d2d::TrialRecord>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].trial != b[i].trial || a[i].n != b[i].n || a[i].edges != b[i].edges ||
            a[i].greedy_welfare != b[i].greedy_welfare ||
            a[i].reference_welfare != b[i].reference_welfare ||
            a[i].reference_is_bound != b[i].reference_is_bound || a[i].rounds != b[i].rounds ||
            a[i].matched != b[i].matched || a[i].matched_top != b[i].matched_top)
            return false;
    }
    return true;
}

}  // namespace

int main() {
    const auto half_half = d2d::WeightDistribution::parse("1:0.5,2:0.5");

    // instance literals parse, describe, and round-trip
    {
        const auto grid = d2d::GenSpec::parse("grid:10x20");
        CHECK(grid.family == d2d::GenSpec::Family::Grid);
        CHECK(grid.rows == 10 && grid.cols == 20);
        CHECK(grid.vertex_count_hint() == 200);
        CHECK(grid.describe() == "grid:10x20");

        const auto line = d2d::GenSpec::parse("line:500");
        CHECK(line.family == d2d::GenSpec::Family::Grid);
        CHECK(line.rows == 1 && line.cols == 500);
        CHECK(line.describe() == "line:500");

        const auto gnp = d2d::GenSpec::parse("gnp:100,0.25");
        CHECK(gnp.family == d2d::GenSpec::Family::Gnp);
        CHECK(gnp.n == 100 && gnp.p == 0.25);

        const auto gnpd = d2d::GenSpec::parse("gnpd:1000,0.9");
        CHECK(gnpd.family == d2d::GenSpec::Family::GnpMeanDegree);
        CHECK(gnpd.n == 1000 && gnpd.mean_degree == 0.9);

        const auto tree = d2d::GenSpec::parse("tree:0.5");
        CHECK(tree.family == d2d::GenSpec::Family::Tree);
        CHECK(tree.mean_degree == 0.5 && tree.node_cap == 1000000);
        CHECK(d2d::GenSpec::parse("tree:0.5,5000").node_cap == 5000);

        const auto disk = d2d::GenSpec::parse("disk:200,60,12");
        CHECK(disk.family == d2d::GenSpec::Family::Disk);
        CHECK(disk.n == 200 && disk.disk_radius == 60.0 && disk.range == 12.0);

        for (const char* bad : {"", "grid:", "grid:0x5", "line:-3", "gnp:10", "gnp:10,2",
                                "gnpd:10", "tree:", "disk:10,5", "hexagon:4", "grid:3x3x3"}) {
            bool threw = false;
            try {
                d2d::GenSpec::parse(bad);
            } catch (const d2d::InvalidParameter&) {
                threw = true;
            }
            if (!threw)
                testkit::report(false, __FILE__, __LINE__,
                                std::string("parse accepted \"") + bad + "\"");
        }
        testkit::report(true, __FILE__, __LINE__, "bad instance literals rejected");

        const auto sized = line.with_size(77);
        CHECK(sized.cols == 77 && sized.describe() == "line:77");
        CHECK(gnpd.with_size(500).n == 500);
        CHECK_THROWS(d2d::InvalidParameter, tree.with_size(10));
    }

    // build(): per-trial determinism and stream separation
    {
        const auto spec = d2d::GenSpec::parse("gnpd:400,2");
        const auto a = spec.build(5, 0);
        const auto b = spec.build(5, 0);
        const auto c = spec.build(5, 1);
        CHECK(a.vertex_count() == 400);
        CHECK(a.edge_count() == b.edge_count());
        bool same = a.edge_count() == c.edge_count();
        for (int e = 0; same && e < a.edge_count(); ++e)
            same = a.edge(e).u == c.edge(e).u && a.edge(e).v == c.edge(e).v;
        CHECK(!same);
        CHECK(d2d::weight_seed(5, 0) != d2d::weight_seed(5, 1));
        CHECK(d2d::weight_seed(5, 0) == d2d::weight_seed(5, 0));
    }

    // aggregate: textbook mean and standard error
    {
        const auto r = d2d::aggregate({1.0, 2.0, 3.0, 4.0});
        CHECK(r.trials == 4);
        CHECK_NEAR(r.mean, 2.5, 1e-15);
        // sample sd = sqrt(5/3), se = sd/2
        CHECK_NEAR(r.std_error, std::sqrt(5.0 / 3.0) / 2.0, 1e-12);
        const auto one = d2d::aggregate({7.0});
        CHECK(one.mean == 7.0 && one.std_error == 0.0);
    }

    // mc_ratio on small grids: exact reference, sane ratio, reproducible,
    // and invariant to the worker count
    {
        const auto spec = d2d::GenSpec::parse("grid:6x6");
        const auto r1 = d2d::mc_ratio(spec, half_half, 60, 99, 1);
        REQUIRE(r1.records.size() == 60);
        CHECK(!r1.reference_is_bound);
        CHECK(r1.ratio_of_means > 0.5 && r1.ratio_of_means <= 1.0);
        CHECK(r1.mean_of_ratios > 0.5 && r1.mean_of_ratios <= 1.0);
        CHECK(r1.std_error > 0.0 && r1.std_error < 0.05);
        for (const auto& rec : r1.records) {
            REQUIRE(rec.n == 36);
            REQUIRE(rec.edges == 60);
            REQUIRE(rec.greedy_welfare <= rec.reference_welfare + 1e-9);
            REQUIRE(2 * rec.greedy_welfare >= rec.reference_welfare - 1e-9);
            REQUIRE(rec.matched_top <= rec.matched);
            REQUIRE(rec.rounds >= 1);
        }
        const auto r2 = d2d::mc_ratio(spec, half_half, 60, 99, 1);
        CHECK(same_records(r1.records, r2.records));
        CHECK(r1.ratio_of_means == r2.ratio_of_means);
        CHECK(r1.std_error == r2.std_error);
        const auto r4 = d2d::mc_ratio(spec, half_half, 60, 99, hw_jobs());
        CHECK(same_records(r1.records, r4.records));
        CHECK(r1.ratio_of_means == r4.ratio_of_means);
        CHECK(r1.std_error == r4.std_error);
        // different seed, different draw
        const auto r5 = d2d::mc_ratio(spec, half_half, 60, 100, 1);
        CHECK(!same_records(r1.records, r5.records));
    }

    // bound fallback: large tangled instances flag reference_is_bound and the
    // per-trial reference dominates the welfare it bounds
    {
        const auto spec = d2d::GenSpec::parse("gnpd:2000,3");
        const auto r = d2d::mc_ratio(spec, half_half, 4, 7, hw_jobs());
        REQUIRE(r.records.size() == 4);
        CHECK(r.reference_is_bound);
        for (const auto& rec : r.records) {
            CHECK(rec.reference_is_bound);
            CHECK(rec.reference_welfare > rec.greedy_welfare);
        }
        // trees are bipartite, so even big ones get the exact reference
        const auto t = d2d::mc_ratio(d2d::GenSpec::parse("tree:0.9"), half_half, 30, 3, 1);
        CHECK(!t.reference_is_bound);
        for (const auto& rec : t.records) CHECK(!rec.reference_is_bound);
    }

    // mc_rounds: rows per size, round counts grow slowly
    {
        const auto rows = d2d::mc_rounds(d2d::GenSpec::parse("line:10"), {100, 1000},
                                         half_half, 30, 11, hw_jobs());
        REQUIRE(rows.size() == 2);
        CHECK(rows[0].n == 100 && rows[1].n == 1000);
        for (const auto& row : rows) {
            CHECK(row.mean_rounds >= 1.0);
            CHECK(row.median_rounds >= 1.0);
            CHECK(row.max_rounds >= row.median_rounds);
            CHECK_NEAR(row.max_over_log, row.max_rounds / std::log(row.n), 1e-12);
            CHECK(row.max_rounds < 60);
        }
        CHECK_THROWS(d2d::InvalidParameter,
                     d2d::mc_rounds(d2d::GenSpec::parse("line:10"), {1}, half_half, 5, 1));
    }

    // tree_approx_error: G(n, d/n) per-user welfare close to the analytic
    // tree value at moderate size
    {
        const auto rep = d2d::tree_approx_error(20000, 0.5, half_half, 40, 21, hw_jobs());
        CHECK_NEAR(rep.analytic, d2d::root_expected_weight(half_half, 0.5), 1e-15);
        CHECK(rep.per_user.trials == 40);
        CHECK(rep.per_user.std_error < 0.01);
        CHECK(rep.rel_error < 0.02);
        CHECK_NEAR(rep.rel_error, std::abs(rep.per_user.mean / rep.analytic - 1.0), 1e-15);
    }

    // proposal-frequency estimator: d=0.7 top level vs the fixed point
    {
        const auto probs = d2d::solve_proposal_probs(half_half, 0.7);
        const auto est = d2d::mc_proposal_prob(half_half, 0.7, 1, 30000, 13, 1000000, hw_jobs());
        CHECK(est.value.trials == 30000);
        CHECK(est.discard_rate == 0.0);
        CHECK_NEAR(est.value.mean, probs.y[1], 4.5 * est.value.std_error);
        CHECK(est.value.std_error < 0.005);
        // determinism across worker counts
        const auto est1 = d2d::mc_proposal_prob(half_half, 0.7, 1, 5000, 13, 1000000, 1);
        const auto est2 = d2d::mc_proposal_prob(half_half, 0.7, 1, 5000, 13, 1000000, 3);
        CHECK(est1.value.mean == est2.value.mean);
        CHECK(est1.value.std_error == est2.value.std_error);
        CHECK_THROWS(d2d::InvalidParameter,
                     d2d::mc_proposal_prob(half_half, 0.7, 2, 100, 13));
    }

    // root-weight estimator vs the pinned analytic values: first the
    // degenerate-distribution gate, then the tight two-point gate
    {
        const auto two = d2d::WeightDistribution::parse("2:1");
        const auto est = d2d::mc_root_weight(two, 1.0, 100000, 31, 1000000, hw_jobs());
        const double analytic = d2d::root_expected_weight(two, 1.0);
        CHECK_NEAR(analytic, 0.5105908269770001, 1e-12);
        CHECK(std::abs(est.value.mean - analytic) / analytic < 0.01);
    }
    {
        const double analytic = d2d::root_expected_weight(half_half, 0.5);
        const auto est = d2d::mc_root_weight(half_half, 0.5, 10000000, 2, 1000000, hw_jobs());
        CHECK(est.discard_rate == 0.0);
        const double rel = std::abs(est.value.mean - analytic) / analytic;
        if (!(rel < 0.0005))
            testkit::report(false, __FILE__, __LINE__,
                            "10^7-tree root weight off by " + std::to_string(rel * 100) + "%");
        else
            testkit::report(true, __FILE__, __LINE__, "root weight within 0.05% on 10^7 trees");
    }

    // supercritical trees get discarded at the cap, and an impossible cap
    // surfaces as a solver failure
    {
        const auto est = d2d::mc_root_weight(half_half, 1.5, 400, 5, 200, 2);
        CHECK(est.discard_rate > 0.0);
        CHECK(est.value.trials < 400);
        CHECK_THROWS(d2d::SolverFailure, d2d::mc_root_weight(half_half, 30.0, 50, 5, 8, 2));
    }

    // failure model calibration and shape
    {
        d2d::FailureModel fm;
        CHECK_NEAR(fm.p_fail(50.0, 0), 0.1, 1e-12);
        CHECK(fm.p_fail(0.0, 0) == 0.0);
        CHECK(fm.p_fail(10.0, 0) < fm.p_fail(20.0, 0));
        CHECK(fm.p_fail(10.0, 0) < fm.p_fail(10.0, 3));
        CHECK_NEAR(fm.p_fail(0.0, 2), -std::expm1(-0.05 * 2), 1e-12);
        fm.enabled = false;
        CHECK(fm.p_fail(50.0, 5) == 0.0);
        for (const double dist : {1.0, 10.0, 80.0}) {
            d2d::FailureModel on;
            const double p = on.p_fail(dist, 1);
            CHECK(p > 0.0 && p < 1.0);
        }
    }

    // range sweep: shared device field, per-point stats, failure cost
    {
        const std::vector<double> ranges = {8.0, 15.0, 30.0};
        d2d::FailureModel off;
        off.enabled = false;
        const auto clean = d2d::range_sweep(300, 60.0, ranges, half_half, off, 4, 77, hw_jobs());
        REQUIRE(clean.size() == 3);
        for (std::size_t i = 0; i < 3; ++i) {
            CHECK(clean[i].range == ranges[i]);
            CHECK(clean[i].per_user.mean >= 0.0);
            CHECK(clean[i].match_rate >= 0.0 && clean[i].match_rate <= 1.0);
            CHECK(clean[i].mean_interference >= 0.0);
        }
        // a longer range can only add edges on a fixed field; with failures
        // off the match rate cannot drop much (same field, denser graph)
        CHECK(clean[2].match_rate >= clean[0].match_rate - 0.05);

        d2d::FailureModel on;
        const auto noisy = d2d::range_sweep(300, 60.0, ranges, half_half, on, 4, 77, hw_jobs());
        for (std::size_t i = 0; i < 3; ++i)
            CHECK(noisy[i].per_user.mean <= clean[i].per_user.mean + 1e-12);

        // determinism, including across worker counts
        const auto again = d2d::range_sweep(300, 60.0, ranges, half_half, on, 4, 77, 1);
        for (std::size_t i = 0; i < 3; ++i) {
            CHECK(noisy[i].per_user.mean == again[i].per_user.mean);
            CHECK(noisy[i].match_rate == again[i].match_rate);
            CHECK(noisy[i].mean_interference == again[i].mean_interference);
        }

        // explicit location list: a fixed field reuses the same topology every
        // trial, so only the weight and failure draws vary
        d2d::Rng fieldrng = d2d::Rng::stream(7777, 0);
        const auto field = d2d::disk_points(150, 40.0, fieldrng);
        const auto fixed = d2d::range_sweep(field, {12.0}, half_half, on, 3, 9, 1);
        REQUIRE(fixed.size() == 1);
        CHECK(fixed[0].range == 12.0);
        const auto fixed2 = d2d::range_sweep(field, {12.0}, half_half, on, 3, 9, 2);
        CHECK(fixed[0].per_user.mean == fixed2[0].per_user.mean);

        CHECK_THROWS(d2d::InvalidParameter,
                     d2d::range_sweep(0, 60.0, ranges, half_half, on, 4, 77));
        CHECK_THROWS(d2d::InvalidParameter,
                     d2d::range_sweep(300, 60.0, {}, half_half, on, 4, 77));
    }

    // worst-case demo
    {
        const auto w = d2d::worst_case_demo(0.01);
        CHECK(w.greedy == 1.01);
        CHECK(w.exact == 2.0);
        CHECK(w.ratio == 0.505);
        const auto tiny = d2d::worst_case_demo(1e-6);
        CHECK(std::abs(tiny.ratio - (1.0 + 1e-6) / 2.0) <= 1e-9);
        CHECK_THROWS(d2d::InvalidParameter, d2d::worst_case_demo(0.0));
        CHECK_THROWS(d2d::InvalidParameter, d2d::worst_case_demo(-0.5));
    }

    return testkit::done("experiments");
}
