#include "d2d/tree_analytics.hpp"

#include <cmath>

#include "d2d/errors.hpp"

namespace d2d {

namespace {

// Right side of the proposal-probability equation for level k: the parent
// edge must beat every sibling subtree that eventually proposes, with ties
// among equal values split uniformly by arrival rank. The Poisson sum runs
// until terms drop below 1e-14 (never past 200 terms; the factorial decay
// dominates long before that for any mean degree in range).
double proposal_rhs(const WeightDistribution& dist, double d, std::size_t k,
                    double heavier_mass, double y) {
    const double envelope = std::exp(-(dist.prob(dist.size() - 1) + heavier_mass) * d);
    const double lambda = dist.prob(k) * d;

    double sum = 0.0;
    double c = 1.0;  // lambda^i / (i+1)!
    for (int i = 0; i <= 200; ++i) {
        double share;  // (1 - (1-y)^{i+1}) / ((i+1) y) averaged tie survival, times i+1
        if (y >= 1.0)
            share = 1.0;
        else
            share = -std::expm1((i + 1) * std::log1p(-y)) / y;
        sum += c * share;
        c *= lambda / (i + 2);
        if (c * (i + 2) < 1e-14) break;
    }
    return envelope * sum;
}

}  // namespace

ProposalProbs solve_proposal_probs(const WeightDistribution& dist, double d) {
    if (!(d >= 0.0) || !std::isfinite(d))
        throw InvalidParameter("proposal probabilities: mean degree must be finite and nonnegative");

    const std::size_t K = dist.size();
    ProposalProbs out;
    out.y.assign(K, 0.0);
    out.residual.assign(K, 0.0);

    double heavier_mass = 0.0;  // sum over solved heavier levels of y_j p_j
    for (std::size_t k = K; k-- > 0;) {
        auto f = [&](double y) { return proposal_rhs(dist, d, k, heavier_mass, y) - y; };

        const double at_one = f(1.0);
        double y;
        if (at_one > 1e-12) {
            throw SolverFailure(
                "proposal probabilities: equation for level " + std::to_string(k + 1) +
                " has no root in (0,1]");
        } else if (at_one >= -1e-12) {
            y = 1.0;
        } else {
            // f(0+) = envelope * e^lambda > 0, f(1) < 0, and the right side
            // is strictly decreasing in y: plain bisection.
            double lo = 0.0, hi = 1.0;
            for (int it = 0; it < 100 && hi - lo > 1e-15; ++it) {
                const double mid = 0.5 * (lo + hi);
                (f(mid) > 0.0 ? lo : hi) = mid;
            }
            y = 0.5 * (lo + hi);
        }
        out.y[k] = y;
        out.residual[k] = std::abs(f(y));
        if (out.residual[k] > 1e-10)
            throw SolverFailure("proposal probabilities: bisection residual " +
                                std::to_string(out.residual[k]) + " at level " +
                                std::to_string(k + 1));
        heavier_mass += y * dist.prob(k);
    }
    return out;
}

double root_expected_weight(const WeightDistribution& dist, double d,
                            const ProposalProbs& probs) {
    // P(root pairs at value v_k) factors over independent child subtrees:
    // some v_k child proposes, no heavier child does.
    double heavier = 0.0;
    for (std::size_t j = 0; j < dist.size(); ++j) heavier += dist.prob(j) * probs.y[j];

    double expect = 0.0;
    for (std::size_t k = 0; k < dist.size(); ++k) {
        heavier -= dist.prob(k) * probs.y[k];
        const double p_match = -std::expm1(-d * dist.prob(k) * probs.y[k]);
        expect += 0.5 * dist.value(k) * p_match * std::exp(-d * heavier);
    }
    return expect;
}

double root_expected_weight(const WeightDistribution& dist, double d) {
    return root_expected_weight(dist, d, solve_proposal_probs(dist, d));
}

double gnp_pr_bound(const WeightDistribution& dist, double d) {
    if (!(d > 0.0) || !std::isfinite(d))
        throw InvalidParameter("performance ratio: mean degree must be positive");
    const double num = root_expected_weight(dist, d);
    double den = 0.0;
    double prev_cdf = 0.0;
    for (std::size_t k = 0; k < dist.size(); ++k) {
        den += 0.5 * dist.value(k) *
               (std::exp(-d * (1.0 - dist.cdf(k))) - std::exp(-d * (1.0 - prev_cdf)));
        prev_cdf = dist.cdf(k);
    }
    return num / den;
}

}  // namespace d2d
