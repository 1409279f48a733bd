#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "d2d/distribution.hpp"
#include "d2d/errors.hpp"
#include "d2d/exact.hpp"
#include "d2d/experiments.hpp"
#include "d2d/generators.hpp"
#include "d2d/graph_io.hpp"
#include "d2d/greedy.hpp"
#include "d2d/locations.hpp"
#include "d2d/recurrence.hpp"
#include "d2d/text.hpp"
#include "d2d/tree_analytics.hpp"

using nlohmann::json;

namespace {

// One flat flag store shared by all subcommands; exactly one leaf runs per
// invocation. format and trials carry per-leaf defaults, applied in the leaf
// callback when the flag was not given.
struct State {
    std::string format = "json";
    std::string out;
    std::string dist = "1:0.5,2:0.5";
    std::string tie = "lowest";
    std::optional<std::uint64_t> seed;
    std::size_t trials = 0;
    int jobs = 0;
    bool emit_trials = false;

    std::string graph_path;
    std::string locations_path;
    std::string instance;
    std::string d_range;
    std::string sizes = "100,1000,10000,100000,1000000";
    std::string ranges = "6,10,14,18,24,30,40,55,75,100";
    int rows = 0, cols = 0, n = 0, cap = 1'000'000, tmax = 20;
    double p = 0.0, d = 0.0, radius = 0.0, range = 0.0, eps = 0.0;
    bool no_failures = false;
    double alpha = d2d::FailureModel::default_alpha();
    double gamma = 3.5;
    double beta = 0.05;
    double interference_radius = 0.0;
};

std::uint64_t resolve_seed(State& st) {
    if (!st.seed) {
        std::random_device rd;
        st.seed = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
    }
    return *st.seed;
}

d2d::TiePolicy tie_policy(const State& st) {
    return st.tie == "highest" ? d2d::TiePolicy::HighestIndexNeighbor
                               : d2d::TiePolicy::LowestIndexNeighbor;
}

int effective_jobs(const State& st) {
    if (st.jobs > 0) return st.jobs;
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(hw) : 1;
}

void emit(const State& st, const std::string& text) {
    if (st.out.empty()) {
        std::fputs(text.c_str(), stdout);
        return;
    }
    std::ofstream os(st.out, std::ios::binary);
    if (!os) throw d2d::InvalidParameter("cannot open output file: " + st.out);
    os << text;
    if (!os) throw d2d::InvalidParameter("cannot write output file: " + st.out);
}

std::string config_comment(const json& cfg) {
    return "# config " + cfg.dump() + "\n";
}

std::vector<double> parse_double_list(const std::string& s, const std::string& ctx) {
    std::vector<double> out;
    std::size_t pos = 0;
    while (pos <= s.size()) {
        std::size_t next = s.find(',', pos);
        std::string tok =
            next == std::string::npos ? s.substr(pos) : s.substr(pos, next - pos);
        out.push_back(d2d::parse_double(tok, ctx));
        if (next == std::string::npos) break;
        pos = next + 1;
    }
    return out;
}

std::vector<int> parse_int_list(const std::string& s, const std::string& ctx) {
    std::vector<int> out;
    for (double x : parse_double_list(s, ctx)) {
        if (x < 1 || x != std::floor(x) || x > 2147483647.0)
            throw d2d::InvalidParameter(ctx + " entries must be positive integers");
        out.push_back(static_cast<int>(x));
    }
    return out;
}

// "start:stop:step" sweep literal, endpoints inclusive up to rounding slack.
std::vector<double> parse_sweep(const std::string& s) {
    std::size_t c1 = s.find(':');
    std::size_t c2 = c1 == std::string::npos ? std::string::npos : s.find(':', c1 + 1);
    if (c2 == std::string::npos)
        throw d2d::InvalidParameter("sweep literal must be start:stop:step: " + s);
    double start = d2d::parse_double(s.substr(0, c1), "sweep start");
    double stop = d2d::parse_double(s.substr(c1 + 1, c2 - c1 - 1), "sweep stop");
    double step = d2d::parse_double(s.substr(c2 + 1), "sweep step");
    if (!(step > 0.0) || stop < start)
        throw d2d::InvalidParameter("sweep literal needs stop >= start and step > 0");
    std::vector<double> out;
    for (int i = 0;; ++i) {
        double x = start + i * step;
        if (x > stop + step * 1e-9) break;
        out.push_back(x);
    }
    return out;
}

json edge_array(const d2d::WeightedGraph& g, const std::vector<int>& edges) {
    json arr = json::array();
    for (int e : edges) {
        const d2d::Edge& ed = g.edge(e);
        arr.push_back(json::array({ed.u, ed.v, ed.w}));
    }
    return arr;
}

std::string csv_match_rows(const d2d::WeightedGraph& g, const std::vector<int>& edges) {
    std::string text = "u,v,w\n";
    for (int e : edges) {
        const d2d::Edge& ed = g.edge(e);
        text += std::to_string(ed.u) + "," + std::to_string(ed.v) + "," +
                d2d::format_double(ed.w) + "\n";
    }
    return text;
}

// ---- gen ----

void run_gen(State& st, const std::string& which) {
    d2d::WeightDistribution dist = d2d::WeightDistribution::parse(st.dist);
    std::uint64_t seed = resolve_seed(st);

    d2d::WeightedGraph g;
    std::string described;
    if (which == "geometric" && !st.locations_path.empty()) {
        if (st.n > 0 || st.radius > 0.0)
            throw d2d::InvalidParameter(
                "give either --locations or --n/--radius, not both");
        auto locs = d2d::load_locations(st.locations_path);
        g = d2d::gen_geometric(locs, st.range);
        described = "geometric:" + st.locations_path + "," + d2d::format_double(st.range);
    } else {
        d2d::GenSpec spec;
        if (which == "grid") {
            spec.family = d2d::GenSpec::Family::Grid;
            spec.rows = st.rows;
            spec.cols = st.cols;
        } else if (which == "gnp") {
            spec.family = d2d::GenSpec::Family::Gnp;
            spec.n = st.n;
            spec.p = st.p;
        } else if (which == "tree") {
            spec.family = d2d::GenSpec::Family::Tree;
            spec.mean_degree = st.d;
            spec.node_cap = st.cap;
        } else {
            if (st.n <= 0 || !(st.radius > 0.0))
                throw d2d::InvalidParameter(
                    "geometric needs --locations, or --n plus --radius");
            spec.family = d2d::GenSpec::Family::Disk;
            spec.n = st.n;
            spec.disk_radius = st.radius;
            spec.range = st.range;
        }
        g = spec.build(seed, 0);
        described = spec.describe();
    }
    d2d::assign_weights(g, dist, d2d::weight_seed(seed, 0));
    d2d::save_graph(st.out, g);

    json cfg{{"subcommand", "gen " + which},
             {"instance", described},
             {"dist", dist.to_literal()},
             {"seed", seed},
             {"out", st.out}};
    json j{{"kind", "gen"},
           {"config", cfg},
           {"n", g.vertex_count()},
           {"m", g.edge_count()},
           {"truncated", g.truncated}};
    std::fputs((j.dump(2) + "\n").c_str(), stdout);
}

// ---- match ----

void run_match_greedy(State& st) {
    d2d::WeightedGraph g = d2d::load_graph(st.graph_path);
    d2d::MatchingResult r = d2d::greedy_match(g, tie_policy(st));
    json cfg{{"subcommand", "match greedy"},
             {"graph", st.graph_path},
             {"tie", st.tie}};
    if (st.format == "csv") {
        std::string text = config_comment(cfg);
        text += "# welfare " + d2d::format_double(r.welfare) + " rounds " +
                std::to_string(r.rounds) + "\n";
        text += csv_match_rows(g, r.matched_edges);
        emit(st, text);
        return;
    }
    json j{{"kind", "match_greedy"},
           {"config", cfg},
           {"welfare", r.welfare},
           {"rounds", r.rounds},
           {"matched", r.matched_edges.size()},
           {"matched_edges", edge_array(g, r.matched_edges)}};
    emit(st, j.dump(2) + "\n");
}

void run_match_exact(State& st) {
    d2d::WeightedGraph g = d2d::load_graph(st.graph_path);
    d2d::ExactResult r = d2d::exact_match(g);
    json cfg{{"subcommand", "match exact"}, {"graph", st.graph_path}};
    if (st.format == "csv") {
        std::string text = config_comment(cfg);
        text += "# welfare " + d2d::format_double(r.welfare) + " method " + r.method + "\n";
        text += csv_match_rows(g, r.matched_edges);
        emit(st, text);
        return;
    }
    json j{{"kind", "match_exact"},
           {"config", cfg},
           {"welfare", r.welfare},
           {"method", r.method},
           {"matched", r.matched_edges.size()},
           {"matched_edges", edge_array(g, r.matched_edges)}};
    emit(st, j.dump(2) + "\n");
}

void run_match_bound(State& st) {
    d2d::WeightedGraph g = d2d::load_graph(st.graph_path);
    d2d::WeightDistribution dist = d2d::WeightDistribution::parse(st.dist);
    d2d::BoundReport b = d2d::welfare_upper_bound(g, dist);
    json cfg{{"subcommand", "match bound"},
             {"graph", st.graph_path},
             {"dist", dist.to_literal()}};
    if (st.format == "csv") {
        emit(st, config_comment(cfg) + "value\n" + d2d::format_double(b.value) + "\n");
        return;
    }
    json j{{"kind", "match_bound"}, {"config", cfg}, {"value", b.value}};
    emit(st, j.dump(2) + "\n");
}

// ---- analytic ----

void run_recurrence(State& st) {
    d2d::WeightDistribution dist = d2d::WeightDistribution::parse(st.dist);
    d2d::RecurrenceTable tab = d2d::linear_recurrence(dist, st.tmax);
    json cfg{{"subcommand", "analytic recurrence"},
             {"dist", dist.to_literal()},
             {"tmax", st.tmax}};
    if (st.format == "csv") {
        std::string text = config_comment(cfg) + "t,a\n";
        for (std::size_t t = 0; t < tab.a.size(); ++t)
            text += std::to_string(t) + "," + d2d::format_double(tab.a[t]) + "\n";
        emit(st, text);
        return;
    }
    json j{{"kind", "analytic_recurrence"},
           {"config", cfg},
           {"a", tab.a},
           {"coef", tab.coef},
           {"constant", tab.constant}};
    emit(st, j.dump(2) + "\n");
}

void run_slope(State& st) {
    d2d::WeightDistribution dist = d2d::WeightDistribution::parse(st.dist);
    double s = d2d::linear_slope(dist);
    json cfg{{"subcommand", "analytic slope"}, {"dist", dist.to_literal()}};
    if (st.format == "csv") {
        emit(st, config_comment(cfg) + "slope\n" + d2d::format_double(s) + "\n");
        return;
    }
    json j{{"kind", "analytic_slope"}, {"config", cfg}, {"slope", s}};
    emit(st, j.dump(2) + "\n");
}

void run_grid_bound(State& st) {
    d2d::WeightDistribution dist = d2d::WeightDistribution::parse(st.dist);
    d2d::GridBoundReport r = d2d::grid_bound_report(dist);
    json cfg{{"subcommand", "analytic grid-bound"}, {"dist", dist.to_literal()}};
    if (st.format == "csv") {
        std::string text = config_comment(cfg);
        text += "upper_coeff,segment_sum,lower_coeff,ratio\n";
        text += d2d::format_double(r.upper_coeff) + "," +
                d2d::format_double(r.segment_sum) + "," +
                d2d::format_double(r.lower_coeff) + "," + d2d::format_double(r.ratio) +
                "\n";
        emit(st, text);
        return;
    }
    json j{{"kind", "analytic_grid_bound"},
           {"config", cfg},
           {"upper_coeff", r.upper_coeff},
           {"segment_sum", r.segment_sum},
           {"lower_coeff", r.lower_coeff},
           {"ratio", r.ratio}};
    emit(st, j.dump(2) + "\n");
}

void run_fixed_point(State& st) {
    d2d::WeightDistribution dist = d2d::WeightDistribution::parse(st.dist);
    d2d::ProposalProbs pp = d2d::solve_proposal_probs(dist, st.d);
    double root = d2d::root_expected_weight(dist, st.d, pp);
    double mass = 0.0;
    for (std::size_t k = 0; k < dist.size(); ++k) mass += dist.prob(k) * pp.y[k];
    double match_prob = -std::expm1(-st.d * mass);
    json cfg{{"subcommand", "analytic fixed-point"},
             {"dist", dist.to_literal()},
             {"d", st.d}};
    if (st.format == "csv") {
        std::string text = config_comment(cfg);
        text += "# root_expected_weight " + d2d::format_double(root) + " match_prob " +
                d2d::format_double(match_prob) + "\n";
        text += "k,value,y,residual\n";
        for (std::size_t k = 0; k < pp.y.size(); ++k)
            text += std::to_string(k) + "," + d2d::format_double(dist.value(k)) + "," +
                    d2d::format_double(pp.y[k]) + "," +
                    d2d::format_double(pp.residual[k]) + "\n";
        emit(st, text);
        return;
    }
    json j{{"kind", "analytic_fixed_point"},
           {"config", cfg},
           {"y", pp.y},
           {"residual", pp.residual},
           {"root_expected_weight", root},
           {"match_prob", match_prob}};
    emit(st, j.dump(2) + "\n");
}

void run_pr_curve(State& st) {
    d2d::WeightDistribution dist = d2d::WeightDistribution::parse(st.dist);
    std::vector<double> ds = parse_sweep(st.d_range);
    json cfg{{"subcommand", "analytic pr-curve"},
             {"dist", dist.to_literal()},
             {"d", st.d_range}};
    std::vector<double> ratio(ds.size());
    for (std::size_t i = 0; i < ds.size(); ++i) ratio[i] = d2d::gnp_pr_bound(dist, ds[i]);
    if (st.format == "json") {
        json pts = json::array();
        for (std::size_t i = 0; i < ds.size(); ++i)
            pts.push_back(json{{"d", ds[i]}, {"ratio", ratio[i]}});
        json j{{"kind", "analytic_pr_curve"}, {"config", cfg}, {"points", pts}};
        emit(st, j.dump(2) + "\n");
        return;
    }
    std::string text = config_comment(cfg) + "d,ratio\n";
    for (std::size_t i = 0; i < ds.size(); ++i)
        text += d2d::format_double(ds[i]) + "," + d2d::format_double(ratio[i]) + "\n";
    emit(st, text);
}

// ---- exp ----

json base_exp_config(const State& st, const std::string& sub, std::uint64_t seed,
                     const d2d::WeightDistribution& dist) {
    return json{{"subcommand", sub},   {"dist", dist.to_literal()},
                {"seed", seed},        {"trials", st.trials},
                {"jobs", effective_jobs(st)}, {"tie", st.tie}};
}

void run_exp_ratio(State& st) {
    d2d::WeightDistribution dist = d2d::WeightDistribution::parse(st.dist);
    d2d::GenSpec spec = d2d::GenSpec::parse(st.instance);
    std::uint64_t seed = resolve_seed(st);
    d2d::RatioReport r =
        d2d::mc_ratio(spec, dist, st.trials, seed, effective_jobs(st), tie_policy(st));
    json cfg = base_exp_config(st, "exp ratio", seed, dist);
    cfg["instance"] = spec.describe();
    if (st.format == "csv") {
        std::string text = config_comment(cfg);
        text += "# ratio_of_means " + d2d::format_double(r.ratio_of_means) +
                " std_error " + d2d::format_double(r.std_error) + " mean_of_ratios " +
                d2d::format_double(r.mean_of_ratios) + " reference_is_bound " +
                (r.reference_is_bound ? "1" : "0") + "\n";
        text +=
            "trial,n,edges,greedy,reference,reference_is_bound,rounds,matched,matched_top\n";
        for (const d2d::TrialRecord& t : r.records)
            text += std::to_string(t.trial) + "," + std::to_string(t.n) + "," +
                    std::to_string(t.edges) + "," + d2d::format_double(t.greedy_welfare) +
                    "," + d2d::format_double(t.reference_welfare) + "," +
                    (t.reference_is_bound ? "1" : "0") + "," + std::to_string(t.rounds) +
                    "," + std::to_string(t.matched) + "," + std::to_string(t.matched_top) +
                    "\n";
        emit(st, text);
        return;
    }
    json j{{"kind", "exp_ratio"},
           {"config", cfg},
           {"trials", st.trials},
           {"ratio_of_means", r.ratio_of_means},
           {"std_error", r.std_error},
           {"mean_of_ratios", r.mean_of_ratios},
           {"reference_is_bound", r.reference_is_bound}};
    if (st.emit_trials) {
        json recs = json::array();
        for (const d2d::TrialRecord& t : r.records)
            recs.push_back(json{{"trial", t.trial},
                                {"n", t.n},
                                {"edges", t.edges},
                                {"greedy", t.greedy_welfare},
                                {"reference", t.reference_welfare},
                                {"reference_is_bound", t.reference_is_bound},
                                {"rounds", t.rounds},
                                {"matched", t.matched},
                                {"matched_top", t.matched_top}});
        j["records"] = recs;
    }
    emit(st, j.dump(2) + "\n");
}

void run_exp_rounds(State& st) {
    d2d::WeightDistribution dist = d2d::WeightDistribution::parse(st.dist);
    d2d::GenSpec base = d2d::GenSpec::parse(st.instance);
    std::vector<int> sizes = parse_int_list(st.sizes, "sizes");
    std::uint64_t seed = resolve_seed(st);
    std::vector<d2d::RoundsRow> rows = d2d::mc_rounds(
        base, sizes, dist, st.trials, seed, effective_jobs(st), tie_policy(st));
    json cfg = base_exp_config(st, "exp rounds", seed, dist);
    cfg["instance"] = base.describe();
    cfg["sizes"] = sizes;
    if (st.format == "csv") {
        std::string text = config_comment(cfg);
        text += "n,mean_rounds,median_rounds,max_rounds,max_over_log\n";
        for (const d2d::RoundsRow& r : rows)
            text += std::to_string(r.n) + "," + d2d::format_double(r.mean_rounds) + "," +
                    d2d::format_double(r.median_rounds) + "," +
                    std::to_string(r.max_rounds) + "," +
                    d2d::format_double(r.max_over_log) + "\n";
        emit(st, text);
        return;
    }
    json arr = json::array();
    for (const d2d::RoundsRow& r : rows)
        arr.push_back(json{{"n", r.n},
                           {"mean_rounds", r.mean_rounds},
                           {"median_rounds", r.median_rounds},
                           {"max_rounds", r.max_rounds},
                           {"max_over_log", r.max_over_log}});
    json j{{"kind", "exp_rounds"}, {"config", cfg}, {"rows", arr}};
    emit(st, j.dump(2) + "\n");
}

void run_exp_tree_approx(State& st) {
    d2d::WeightDistribution dist = d2d::WeightDistribution::parse(st.dist);
    std::uint64_t seed = resolve_seed(st);
    d2d::TreeApproxReport r = d2d::tree_approx_error(
        st.n, st.d, dist, st.trials, seed, effective_jobs(st), tie_policy(st));
    json cfg = base_exp_config(st, "exp tree-approx", seed, dist);
    cfg["n"] = st.n;
    cfg["d"] = st.d;
    if (st.format == "csv") {
        std::string text = config_comment(cfg);
        text += "analytic,mean,std_error,rel_error\n";
        text += d2d::format_double(r.analytic) + "," +
                d2d::format_double(r.per_user.mean) + "," +
                d2d::format_double(r.per_user.std_error) + "," +
                d2d::format_double(r.rel_error) + "\n";
        emit(st, text);
        return;
    }
    json j{{"kind", "exp_tree_approx"},
           {"config", cfg},
           {"analytic", r.analytic},
           {"mean", r.per_user.mean},
           {"std_error", r.per_user.std_error},
           {"rel_error", r.rel_error}};
    emit(st, j.dump(2) + "\n");
}

void run_exp_range_sweep(State& st) {
    d2d::WeightDistribution dist = d2d::WeightDistribution::parse(st.dist);
    std::vector<double> ranges = parse_double_list(st.ranges, "ranges");
    std::uint64_t seed = resolve_seed(st);
    d2d::FailureModel fm;
    fm.enabled = !st.no_failures;
    fm.alpha = st.alpha;
    fm.gamma = st.gamma;
    fm.beta = st.beta;
    fm.interference_radius = st.interference_radius;

    json cfg = base_exp_config(st, "exp range-sweep", seed, dist);
    cfg["ranges"] = ranges;
    cfg["failures"] = fm.enabled;
    cfg["alpha"] = fm.alpha;
    cfg["gamma"] = fm.gamma;
    cfg["beta"] = fm.beta;
    cfg["interference_radius"] = fm.interference_radius;

    std::vector<d2d::SweepPoint> pts;
    if (!st.locations_path.empty()) {
        auto locs = d2d::load_locations(st.locations_path);
        pts = d2d::range_sweep(locs, ranges, dist, fm, st.trials, seed,
                               effective_jobs(st), tie_policy(st));
        cfg["locations"] = st.locations_path;
    } else {
        pts = d2d::range_sweep(st.n, st.radius, ranges, dist, fm, st.trials, seed,
                               effective_jobs(st), tie_policy(st));
        cfg["n"] = st.n;
        cfg["radius"] = st.radius;
    }
    if (st.format == "csv") {
        std::string text = config_comment(cfg);
        text += "range,per_user,std_error,match_rate,mean_interference\n";
        for (const d2d::SweepPoint& p : pts)
            text += d2d::format_double(p.range) + "," +
                    d2d::format_double(p.per_user.mean) + "," +
                    d2d::format_double(p.per_user.std_error) + "," +
                    d2d::format_double(p.match_rate) + "," +
                    d2d::format_double(p.mean_interference) + "\n";
        emit(st, text);
        return;
    }
    json arr = json::array();
    for (const d2d::SweepPoint& p : pts)
        arr.push_back(json{{"range", p.range},
                           {"per_user", p.per_user.mean},
                           {"std_error", p.per_user.std_error},
                           {"match_rate", p.match_rate},
                           {"mean_interference", p.mean_interference}});
    json j{{"kind", "exp_range_sweep"}, {"config", cfg}, {"points", arr}};
    emit(st, j.dump(2) + "\n");
}

void run_exp_worst_case(State& st) {
    d2d::WorstCaseDemo r = d2d::worst_case_demo(st.eps);
    json cfg{{"subcommand", "exp worst-case"}, {"eps", st.eps}};
    if (st.format == "csv") {
        std::string text = config_comment(cfg) + "greedy,exact,ratio\n";
        text += d2d::format_double(r.greedy) + "," + d2d::format_double(r.exact) + "," +
                d2d::format_double(r.ratio) + "\n";
        emit(st, text);
        return;
    }
    json j{{"kind", "exp_worst_case"},
           {"config", cfg},
           {"greedy", r.greedy},
           {"exact", r.exact},
           {"ratio", r.ratio}};
    emit(st, j.dump(2) + "\n");
}

}  // namespace

int main(int argc, char** argv) {
    State st;
    CLI::App app{"Greedy matching laboratory for device-to-device resource sharing"};
    app.require_subcommand(1);
    app.set_config("--config", "", "INI config file; command-line flags win");

    auto add_dist = [&st](CLI::App* sub) {
        sub->add_option("--dist", st.dist, "Weight distribution literal v:p,...")
            ->capture_default_str();
    };
    auto add_tie = [&st](CLI::App* sub) {
        sub->add_option("--tie", st.tie, "Tie policy")
            ->check(CLI::IsMember({"lowest", "highest"}))
            ->capture_default_str();
    };
    // format/trials defaults vary per leaf; wire() applies them when the flag
    // is absent, then runs the handler.
    auto wire = [&st](CLI::App* sub, const char* fmt_def, std::size_t trials_def,
                      auto handler) {
        CLI::Option* fmt =
            sub->add_option("--format", st.format, "Output format (json|csv)")
                ->check(CLI::IsMember({"json", "csv"}));
        sub->add_option("--out", st.out, "Write output to this file instead of stdout");
        CLI::Option* tr = sub->get_option_no_throw("--trials");
        sub->callback([&st, fmt, tr, fmt_def, trials_def, handler] {
            if (fmt->count() == 0) st.format = fmt_def;
            if (tr && tr->count() == 0) st.trials = trials_def;
            handler(st);
        });
    };
    auto add_mc = [&st, &add_dist, &add_tie](CLI::App* sub) {
        add_dist(sub);
        sub->add_option("--trials", st.trials, "Trial count");
        sub->add_option("--seed", st.seed, "Seed (generated and echoed if absent)");
        sub->add_option("--jobs", st.jobs, "Worker threads, 0 = all cores")
            ->capture_default_str();
        add_tie(sub);
    };

    // gen
    CLI::App* gen = app.add_subcommand("gen", "Generate a weighted graph file");
    gen->require_subcommand(1);
    for (const std::string which : {"grid", "gnp", "tree", "geometric"}) {
        CLI::App* sub =
            gen->add_subcommand(which, "Generate a " + which + " instance");
        add_dist(sub);
        sub->add_option("--seed", st.seed, "Seed (generated and echoed if absent)");
        sub->add_option("--out", st.out, "Graph file to write")->required();
        if (which == "grid") {
            sub->add_option("--rows", st.rows, "Grid rows")->required();
            sub->add_option("--cols", st.cols, "Grid cols")->required();
        } else if (which == "gnp") {
            sub->add_option("--n", st.n, "Vertex count")->required();
            sub->add_option("--p", st.p, "Edge probability")->required();
        } else if (which == "tree") {
            sub->add_option("--d", st.d, "Mean offspring count")->required();
            sub->add_option("--cap", st.cap, "Node cap")->capture_default_str();
        } else {
            sub->add_option("--locations", st.locations_path, "Device locations CSV");
            sub->add_option("--n", st.n, "Synthesize this many devices on a disk");
            sub->add_option("--radius", st.radius, "Disk radius in meters");
            sub->add_option("--range", st.range, "Link range in meters")->required();
        }
        sub->callback([&st, which] { run_gen(st, which); });
    }

    // match
    CLI::App* match = app.add_subcommand("match", "Run a matcher on a graph file");
    match->require_subcommand(1);
    {
        CLI::App* sub = match->add_subcommand("greedy", "Distributed greedy matching");
        sub->add_option("--graph", st.graph_path, "Graph file")->required();
        add_tie(sub);
        wire(sub, "json", 0, run_match_greedy);
    }
    {
        CLI::App* sub = match->add_subcommand("exact", "Maximum-weight matching");
        sub->add_option("--graph", st.graph_path, "Graph file")->required();
        wire(sub, "json", 0, run_match_exact);
    }
    {
        CLI::App* sub = match->add_subcommand("bound", "Degree-based welfare ceiling");
        sub->add_option("--graph", st.graph_path, "Graph file")->required();
        add_dist(sub);
        wire(sub, "json", 0, run_match_bound);
    }

    // analytic
    CLI::App* ana = app.add_subcommand("analytic", "Closed-form results");
    ana->require_subcommand(1);
    {
        CLI::App* sub = ana->add_subcommand("recurrence", "Expected line welfare a_t");
        add_dist(sub);
        sub->add_option("--tmax", st.tmax, "Largest edge count")->capture_default_str();
        wire(sub, "json", 0, run_recurrence);
    }
    {
        CLI::App* sub =
            ana->add_subcommand("slope", "Per-edge welfare of the infinite line");
        add_dist(sub);
        wire(sub, "json", 0, run_slope);
    }
    {
        CLI::App* sub =
            ana->add_subcommand("grid-bound", "Square-lattice welfare pipeline");
        add_dist(sub);
        wire(sub, "json", 0, run_grid_bound);
    }
    {
        CLI::App* sub = ana->add_subcommand("fixed-point", "Tree proposal probabilities");
        add_dist(sub);
        sub->add_option("--d", st.d, "Mean degree")->required();
        wire(sub, "json", 0, run_fixed_point);
    }
    {
        CLI::App* sub = ana->add_subcommand("pr-curve", "Performance-ratio curve over d");
        add_dist(sub);
        sub->add_option("--d", st.d_range, "Sweep start:stop:step")->required();
        wire(sub, "csv", 0, run_pr_curve);
    }

    // exp
    CLI::App* exp = app.add_subcommand("exp", "Monte Carlo experiments");
    exp->require_subcommand(1);
    {
        CLI::App* sub = exp->add_subcommand("ratio", "Greedy vs optimum welfare ratio");
        sub->add_option("--instance", st.instance, "Instance literal, e.g. grid:100x100")
            ->required();
        add_mc(sub);
        sub->add_flag("--emit-trials", st.emit_trials, "Include per-trial records");
        wire(sub, "json", 100, run_exp_ratio);
    }
    {
        CLI::App* sub = exp->add_subcommand("rounds", "Round-count scaling over sizes");
        sub->add_option("--instance", st.instance, "Base instance literal, e.g. line:2")
            ->required();
        sub->add_option("--sizes", st.sizes, "Comma list of sizes")
            ->capture_default_str();
        add_mc(sub);
        wire(sub, "json", 20, run_exp_rounds);
    }
    {
        CLI::App* sub =
            exp->add_subcommand("tree-approx", "Sparse random graph vs tree analytics");
        sub->add_option("--n", st.n, "Vertex count")->required();
        sub->add_option("--d", st.d, "Mean degree")->required();
        add_mc(sub);
        wire(sub, "json", 100, run_exp_tree_approx);
    }
    {
        CLI::App* sub =
            exp->add_subcommand("range-sweep", "Realized welfare across link ranges");
        sub->add_option("--n", st.n, "Device count (disk synthesis)");
        sub->add_option("--radius", st.radius, "Disk radius in meters");
        sub->add_option("--locations", st.locations_path,
                        "Device locations CSV (overrides --n/--radius)");
        sub->add_option("--ranges", st.ranges, "Comma list of link ranges")
            ->capture_default_str();
        sub->add_flag("--no-failures", st.no_failures, "Disable the link failure model");
        sub->add_option("--alpha", st.alpha, "Distance failure coefficient");
        sub->add_option("--gamma", st.gamma, "Distance failure exponent")
            ->capture_default_str();
        sub->add_option("--beta", st.beta, "Interference failure coefficient")
            ->capture_default_str();
        sub->add_option("--interference-radius", st.interference_radius,
                        "Interference radius, 0 = current link range")
            ->capture_default_str();
        add_mc(sub);
        wire(sub, "json", 5, run_exp_range_sweep);
    }
    {
        CLI::App* sub = exp->add_subcommand("worst-case", "Three-edge adversarial path");
        sub->add_option("--eps", st.eps, "Middle-edge surplus")->required();
        wire(sub, "json", 0, run_exp_worst_case);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        app.exit(e);
        return 1;
    } catch (const d2d::SolverFailure& e) {
        std::fprintf(stderr, "solver failure: %s\n", e.what());
        return 2;
    } catch (const d2d::InvalidParameter& e) {
        std::fprintf(stderr, "invalid parameter: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
