#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "d2d/rng.hpp"

namespace d2d {

// Discrete weight distribution: value v_k drawn with probability p_k.
// Values are strictly increasing and nonnegative, probabilities are positive
// and sum to 1 (checked to 1e-12 on construction).
class WeightDistribution {
public:
    WeightDistribution(std::vector<double> values, std::vector<double> probs);

    // Parses "v1:p1,v2:p2,..." with values in ascending order.
    static WeightDistribution parse(const std::string& literal);

    // Uniform distribution over the given values.
    static WeightDistribution uniform(std::vector<double> values);

    std::size_t size() const { return values_.size(); }
    double value(std::size_t k) const { return values_[k]; }       // 0-based
    double prob(std::size_t k) const { return probs_[k]; }
    double max_value() const { return values_.back(); }

    // P(w <= v_k), with cdf(size()-1) == 1 exactly.
    double cdf(std::size_t k) const { return cdf_[k]; }

    double mean() const;

    // Inverse-transform draw; u in [0,1).
    double sample(double u) const;
    double sample(Rng& rng) const { return sample(rng.next_double()); }
    std::size_t sample_index(double u) const;

    std::string to_literal() const;

    bool operator==(const WeightDistribution&) const = default;

private:
    std::vector<double> values_;
    std::vector<double> probs_;
    std::vector<double> cdf_;
};

}  // namespace d2d
