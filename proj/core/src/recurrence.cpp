#include "d2d/recurrence.hpp"

#include <cmath>

#include "d2d/errors.hpp"
#include "d2d/exact.hpp"
#include "d2d/graph.hpp"
#include "d2d/greedy.hpp"

namespace d2d {

namespace {

// Probability-weighted greedy welfare over every weight assignment of a
// t-edge line. K^t cases; used for the base of the recursion and nothing
// bigger.
double exhaustive_line_mean(const WeightDistribution& dist, int t) {
    if (t == 0) return 0.0;
    const auto K = dist.size();
    std::vector<std::size_t> digits(t, 0);
    std::vector<double> weights(t);
    double mean = 0.0;
    while (true) {
        double prob = 1.0;
        for (int i = 0; i < t; ++i) {
            prob *= dist.prob(digits[i]);
            weights[i] = dist.value(digits[i]);
        }
        mean += prob * greedy_match(line_from_weights(weights)).welfare;
        int pos = 0;
        while (pos < t && ++digits[pos] == K) digits[pos++] = 0;
        if (pos == t) break;
    }
    return mean;
}

struct Machine {
    double constant = 0.0;
    std::vector<double> coef;  // index s = edges consumed from the left
};

// Condition the infinite-line run on the first edge whose match is already
// decided by the leading K weights. Scanning left to right, edge i is forced
// as soon as it beats its left neighbor and cannot be beaten by its right
// one; a strictly increasing run must hit the top value within K steps, so
// the scan always resolves inside the window. The event depends only on
// weights up to i+1, leaving the remainder of the line a fresh instance.
Machine build_machine(const WeightDistribution& dist) {
    const int K = static_cast<int>(dist.size());
    Machine m;
    m.coef.assign(K + 2, 0.0);

    std::vector<std::size_t> digits(K, 0);
    std::vector<double> w(K);
    while (true) {
        double prob = 1.0;
        for (int i = 0; i < K; ++i) {
            prob *= dist.prob(digits[i]);
            w[i] = dist.value(digits[i]);
        }
        int forced = -1;  // 0-based edge position
        for (int i = 0; i < K; ++i) {
            const bool beats_left = i == 0 || w[i] > w[i - 1];
            const bool safe_right = w[i] == dist.max_value() || (i + 1 < K && w[i] >= w[i + 1]);
            if (beats_left && safe_right) {
                forced = i;
                break;
            }
        }
        // Left fragment: edges strictly before forced-1 play out on their own.
        double frag = 0.0;
        if (forced >= 2) {
            std::vector<double> fw(w.begin(), w.begin() + (forced - 1));
            frag = greedy_match(line_from_weights(fw)).welfare;
        }
        m.constant += prob * (w[forced] + frag);
        m.coef[forced + 2] += prob;  // edges consumed: forced match plus its flanks

        int pos = 0;
        while (pos < K && ++digits[pos] == dist.size()) digits[pos++] = 0;
        if (pos == K) break;
    }
    return m;
}

}  // namespace

RecurrenceTable linear_recurrence(const WeightDistribution& dist, int t_max) {
    const int K = static_cast<int>(dist.size());
    if (K > 6)
        throw InvalidParameter("line recurrence: more than 6 weight values");
    if (t_max < 0)
        throw InvalidParameter("line recurrence: negative horizon");

    RecurrenceTable table;
    const Machine m = build_machine(dist);
    table.coef = m.coef;
    table.constant = m.constant;

    table.a.resize(t_max + 1, 0.0);
    for (int t = 0; t <= std::min(t_max, K); ++t)
        table.a[t] = exhaustive_line_mean(dist, t);
    for (int t = K + 1; t <= t_max; ++t) {
        double v = m.constant;
        for (int s = 2; s < static_cast<int>(m.coef.size()); ++s)
            v += m.coef[s] * table.a[t - s];
        table.a[t] = v;
    }
    return table;
}

double linear_slope(const WeightDistribution& dist) {
    if (dist.size() > 6)
        throw InvalidParameter("line slope: more than 6 weight values");
    const Machine m = build_machine(dist);
    double mean_consumed = 0.0;
    for (int s = 2; s < static_cast<int>(m.coef.size()); ++s)
        mean_consumed += s * m.coef[s];
    return m.constant / mean_consumed;
}

GridBoundReport grid_bound_report(const WeightDistribution& dist) {
    const bool canonical = dist.size() == 2 && dist.value(0) == 1.0 && dist.value(1) == 2.0 &&
                           std::abs(dist.prob(0) - 0.5) <= 1e-12 &&
                           std::abs(dist.prob(1) - 0.5) <= 1e-12;
    if (!canonical)
        throw InvalidParameter(
            "grid bound: the segment-count argument needs the uniform {1,2} distribution");

    constexpr int kHorizon = 1000;  // tail terms decay past 1e-250 by here
    const RecurrenceTable table = linear_recurrence(dist, kHorizon);

    GridBoundReport rep;
    rep.upper_coeff = welfare_upper_bound(std::vector<int>{4}, dist).value;
    for (int t = 2; t <= kHorizon; ++t)
        rep.segment_sum += table.a[t - 1] * std::ldexp(1.0, -(t + 2));
    rep.lower_coeff = 0.5 * (1.0 + 0.125 + 2.0 * rep.segment_sum);
    rep.ratio = rep.lower_coeff / rep.upper_coeff;
    return rep;
}

}  // namespace d2d
