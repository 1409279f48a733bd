#pragma once

#include <vector>

#include "d2d/distribution.hpp"

namespace d2d {

// Expected greedy welfare a[t] on a t-edge line under left-priority ties.
// Beyond the enumerated base cases the sequence obeys a fixed linear
// recursion: conditioning on the shortest weight prefix that forces a match,
// a[t] = constant + sum_s coef[s] * a[t-s]. coef[s] is the probability that
// the forced match consumes s edges of the line; the coefficients sum to 1.
struct RecurrenceTable {
    std::vector<double> a;     // a[0..t_max]
    std::vector<double> coef;  // index s, nonzero for 2 <= s <= K+1
    double constant = 0.0;
};

// K values up to 6 (prefix enumeration grows as K^K).
RecurrenceTable linear_recurrence(const WeightDistribution& dist, int t_max);

// lim a[t]/t: per-edge welfare of greedy on the infinite line. The linear
// recursion pins the limit to constant / sum_s s*coef[s].
double linear_slope(const WeightDistribution& dist);

// Welfare guarantee pipeline for the square lattice under the two-point
// uniform weight distribution on {1, 2}: per-vertex ceiling coefficient,
// the geometric sum over line-segment lengths weighting a[t], and the
// resulting asymptotic lower/upper coefficients of n^2.
struct GridBoundReport {
    double upper_coeff = 0.0;
    double segment_sum = 0.0;
    double lower_coeff = 0.0;
    double ratio = 0.0;  // lower_coeff / upper_coeff
};

GridBoundReport grid_bound_report(const WeightDistribution& dist);

}  // namespace d2d
