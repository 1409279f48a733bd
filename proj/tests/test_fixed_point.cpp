#include "d2d/tree_analytics.hpp"

#include <cmath>
#include <vector>

#include "d2d/errors.hpp"
#include "support.hpp"

namespace {

// Series right side of the proposal equation, written independently of the
// library (direct factorial accumulation, no expm1 tricks).
double rhs_reference(const d2d::WeightDistribution& dist, double d, std::size_t k,
                     const std::vector<double>& y_heavier, double y) {
    double hm = 0.0;
    for (std::size_t j = k + 1; j < dist.size(); ++j) hm += dist.prob(j) * y_heavier[j];
    const double envelope = std::exp(-(dist.prob(dist.size() - 1) + hm) * d);
    const double lambda = dist.prob(k) * d;
    double sum = 0.0;
    double pow_l = 1.0;   // lambda^i
    double fact = 1.0;    // (i+1)!
    for (int i = 0; i <= 300; ++i) {
        fact *= i + 1;
        const double tie_share = y > 0.0 ? (1.0 - std::pow(1.0 - y, i + 1)) / ((i + 1) * y)
                                         : std::pow(1.0 - y, i);  // y->0 limit
        sum += pow_l / fact * (i + 1) * tie_share;
        pow_l *= lambda;
        if (pow_l / (fact * (i + 2)) < 1e-16 && i > lambda) break;
    }
    return envelope * sum;
}

}  // namespace

int main() {
    const auto half_half = d2d::WeightDistribution::parse("1:0.5,2:0.5");
    const auto single = d2d::WeightDistribution::parse("1:1");

    // K=1, d=1: the equation collapses to d y^2 = 1 - e^{-d y}
    {
        const auto p = d2d::solve_proposal_probs(single, 1.0);
        REQUIRE(p.y.size() == 1);
        const double y = p.y[0];
        CHECK_NEAR(1.0 * y * y, 1.0 - std::exp(-y), 1e-9);
        CHECK_NEAR(y, 0.7145563847430096, 1e-12);
        CHECK(p.residual[0] < 1e-10);
    }

    // the same collapse holds at other degrees
    for (const double d : {0.25, 2.0, 7.5}) {
        const auto p = d2d::solve_proposal_probs(single, d);
        const double y = p.y[0];
        CHECK_NEAR(d * y * y, 1.0 - std::exp(-d * y), 1e-9);
    }

    // K=2 uniform, d=1: top level obeys the reduced form with rate p2*d
    {
        const auto p = d2d::solve_proposal_probs(half_half, 1.0);
        REQUIRE(p.y.size() == 2);
        const double lambda = 0.5;
        CHECK_NEAR(lambda * p.y[1] * p.y[1], 1.0 - std::exp(-lambda * p.y[1]), 1e-9);
        CHECK_NEAR(p.y[1], 0.8203066422642609, 1e-12);
        CHECK_NEAR(p.y[0], 0.5764803445308793, 1e-12);
        CHECK(p.y[0] < p.y[1]);  // lighter parent edges are proposed to less often
    }

    // solved values are fixed points of the independent series evaluation,
    // and that series is strictly decreasing in y
    {
        const std::vector<d2d::WeightDistribution> dists = {
            single,
            half_half,
            d2d::WeightDistribution::parse("1:0.7,2:0.3"),
            d2d::WeightDistribution::uniform({1.0, 2.0, 3.0}),
            d2d::WeightDistribution::parse("0.5:0.25,1:0.25,2:0.25,5:0.25"),
        };
        for (const auto& dist : dists) {
            for (const double d : {0.1, 0.5, 1.0, 2.0, 5.0}) {
                const auto p = d2d::solve_proposal_probs(dist, d);
                for (std::size_t k = 0; k < dist.size(); ++k) {
                    const double y = p.y[k];
                    REQUIRE(y > 0.0 && y <= 1.0);
                    REQUIRE(p.residual[k] < 1e-10);
                    const double back = rhs_reference(dist, d, k, p.y, y);
                    if (std::abs(back - y) > 1e-9)
                        testkit::report(false, __FILE__, __LINE__,
                                        "fixed point mismatch, dist=" + dist.to_literal());
                    double prev = rhs_reference(dist, d, k, p.y, 1e-6);
                    for (double yy = 0.05; yy <= 1.0; yy += 0.05) {
                        const double cur = rhs_reference(dist, d, k, p.y, yy);
                        if (cur >= prev)
                            testkit::report(false, __FILE__, __LINE__, "series not decreasing");
                        prev = cur;
                    }
                }
            }
        }
        testkit::report(true, __FILE__, __LINE__,
                        "fixed points + monotone series, 5 dists x 5 degrees");
    }

    // vanishing degree: every child is a leaf and proposes with certainty
    {
        const auto p = d2d::solve_proposal_probs(half_half, 1e-8);
        CHECK(p.y[0] > 1.0 - 1e-6);
        CHECK(p.y[1] > 1.0 - 1e-6);
        const auto z = d2d::solve_proposal_probs(half_half, 0.0);
        CHECK(z.y[0] == 1.0 && z.y[1] == 1.0);
    }

    // root weight: matching probabilities telescope to the thinning identity
    {
        for (const double d : {0.3, 1.0, 4.0}) {
            const auto dist = d2d::WeightDistribution::uniform({1.0, 2.0, 3.0});
            const auto p = d2d::solve_proposal_probs(dist, d);
            double rate = 0.0;
            for (std::size_t k = 0; k < dist.size(); ++k) rate += dist.prob(k) * p.y[k];
            double match_total = 0.0;
            double expect = 0.0;
            double heavier = rate;
            for (std::size_t k = 0; k < dist.size(); ++k) {
                heavier -= dist.prob(k) * p.y[k];
                const double pk =
                    (1.0 - std::exp(-d * dist.prob(k) * p.y[k])) * std::exp(-d * heavier);
                match_total += pk;
                expect += 0.5 * dist.value(k) * pk;
            }
            CHECK_NEAR(match_total, 1.0 - std::exp(-d * rate), 1e-12);
            CHECK_NEAR(d2d::root_expected_weight(dist, d), expect, 1e-12);
            CHECK_NEAR(d2d::root_expected_weight(dist, d, p), expect, 1e-12);
        }
    }

    // pinned root-weight values
    {
        CHECK_NEAR(d2d::root_expected_weight(d2d::WeightDistribution::parse("2:1"), 1.0),
                   0.5105908269770001, 1e-12);
        CHECK_NEAR(d2d::root_expected_weight(half_half, 0.5), 0.2673882042525729, 1e-12);
    }

    // performance-ratio curve: denominator is the Poisson-degree ceiling
    {
        const auto dist = half_half;
        for (const double d : {0.5, 1.0, 3.0}) {
            double den = 0.0;
            double pois = std::exp(-d);  // P(D = m)
            for (int m = 1; m <= 400; ++m) {
                pois *= d / m;
                double emax = 0.0;
                double prev = 0.0;
                for (std::size_t k = 0; k < dist.size(); ++k) {
                    emax += dist.value(k) * (std::pow(dist.cdf(k), m) - std::pow(prev, m));
                    prev = dist.cdf(k);
                }
                den += pois * 0.5 * emax;
            }
            const double expect = d2d::root_expected_weight(dist, d) / den;
            CHECK_NEAR(d2d::gnp_pr_bound(dist, d), expect, 1e-10);
        }
        CHECK_NEAR(d2d::gnp_pr_bound(dist, 1.0), 0.8181318691626904, 1e-12);
    }

    // curve shape: stays in (0.5, 1], floors above 0.79 over the sweep,
    // approaches 1 at both sparse extremes of interest
    {
        double min_ratio = 2.0;
        for (double d = 0.1; d <= 10.0 + 1e-9; d += 0.1) {
            const double r = d2d::gnp_pr_bound(half_half, d);
            CHECK(r > 0.5 && r <= 1.0);
            min_ratio = std::min(min_ratio, r);
        }
        CHECK(min_ratio > 0.79);
        CHECK(d2d::gnp_pr_bound(half_half, 0.1) > d2d::gnp_pr_bound(half_half, 3.0));
        CHECK(d2d::gnp_pr_bound(half_half, 1e-6) > 1.0 - 1e-4);
    }

    // contract failures surface as typed errors
    {
        CHECK_THROWS(d2d::InvalidParameter, d2d::solve_proposal_probs(half_half, -1.0));
        CHECK_THROWS(d2d::InvalidParameter, d2d::gnp_pr_bound(half_half, 0.0));
        // heavily skewed mass at large degree pushes the literal equation out
        // of the unit interval; that must surface, not be clamped away
        CHECK_THROWS(d2d::SolverFailure,
                     d2d::solve_proposal_probs(
                         d2d::WeightDistribution::parse("1:0.99,2:0.01"), 50.0));
    }

    return testkit::done("fixed_point");
}
