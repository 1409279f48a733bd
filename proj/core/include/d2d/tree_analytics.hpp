#pragma once

#include <vector>

#include "d2d/distribution.hpp"

namespace d2d {

// y[k]: probability that, on the branching-process tree with mean degree d,
// a child whose parent edge carries value v_k eventually proposes to that
// parent. Solved top value first by bisection; each equation's right side is
// strictly decreasing in y[k], and the residual after bisection is below
// 1e-10. For skewed distributions at large d the equation system (taken
// exactly as specified) can leave the unit interval; that surfaces as a
// solver failure rather than a clamped answer.
struct ProposalProbs {
    std::vector<double> y;
    std::vector<double> residual;
};

ProposalProbs solve_proposal_probs(const WeightDistribution& dist, double d);

// Expected half-weight the root of the branching-process tree collects under
// greedy: the root pairs at value v_k when some v_k child eventually
// proposes and no heavier child does.
double root_expected_weight(const WeightDistribution& dist, double d);
double root_expected_weight(const WeightDistribution& dist, double d,
                            const ProposalProbs& probs);

// Ratio of the tree-analytic per-user welfare to the degree-bound ceiling in
// the Poisson-degree limit of G(n, d/n). A d-sweep of this is the analytic
// performance-ratio curve for sparse random graphs.
double gnp_pr_bound(const WeightDistribution& dist, double d);

}  // namespace d2d
