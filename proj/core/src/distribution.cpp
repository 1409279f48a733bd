#include "d2d/distribution.hpp"

#include <cmath>

#include "d2d/errors.hpp"
#include "d2d/text.hpp"

namespace d2d {

WeightDistribution::WeightDistribution(std::vector<double> values, std::vector<double> probs)
    : values_(std::move(values)), probs_(std::move(probs)) {
    if (values_.empty() || values_.size() != probs_.size())
        throw InvalidParameter("distribution: need K >= 1 values with matching probabilities");
    double sum = 0.0;
    for (std::size_t k = 0; k < values_.size(); ++k) {
        if (!(values_[k] >= 0.0) || !std::isfinite(values_[k]))
            throw InvalidParameter("distribution: values must be finite and nonnegative");
        if (k > 0 && !(values_[k] > values_[k - 1]))
            throw InvalidParameter("distribution: values must be strictly increasing");
        if (!(probs_[k] > 0.0) || !std::isfinite(probs_[k]))
            throw InvalidParameter("distribution: probabilities must be positive");
        sum += probs_[k];
    }
    if (std::abs(sum - 1.0) > 1e-12)
        throw InvalidParameter("distribution: probabilities sum to " + format_double(sum) +
                               ", expected 1 within 1e-12");
    cdf_.resize(values_.size());
    double acc = 0.0;
    for (std::size_t k = 0; k < probs_.size(); ++k) {
        acc += probs_[k];
        cdf_[k] = acc;
    }
    cdf_.back() = 1.0;
}

WeightDistribution WeightDistribution::parse(const std::string& literal) {
    std::vector<double> values, probs;
    std::size_t pos = 0;
    while (pos <= literal.size()) {
        std::size_t comma = literal.find(',', pos);
        if (comma == std::string::npos) comma = literal.size();
        const std::string item = literal.substr(pos, comma - pos);
        const std::size_t colon = item.find(':');
        if (colon == std::string::npos)
            throw InvalidParameter("distribution literal: expected 'value:prob', got '" + item + "'");
        values.push_back(parse_double(item.substr(0, colon), "distribution literal value"));
        probs.push_back(parse_double(item.substr(colon + 1), "distribution literal probability"));
        pos = comma + 1;
        if (comma == literal.size()) break;
    }
    return WeightDistribution(std::move(values), std::move(probs));
}

WeightDistribution WeightDistribution::uniform(std::vector<double> values) {
    std::vector<double> probs(values.size(), values.empty() ? 1.0 : 1.0 / values.size());
    return WeightDistribution(std::move(values), std::move(probs));
}

double WeightDistribution::mean() const {
    double m = 0.0;
    for (std::size_t k = 0; k < values_.size(); ++k) m += values_[k] * probs_[k];
    return m;
}

std::size_t WeightDistribution::sample_index(double u) const {
    for (std::size_t k = 0; k + 1 < cdf_.size(); ++k)
        if (u < cdf_[k]) return k;
    return cdf_.size() - 1;
}

double WeightDistribution::sample(double u) const {
    return values_[sample_index(u)];
}

std::string WeightDistribution::to_literal() const {
    std::string out;
    for (std::size_t k = 0; k < values_.size(); ++k) {
        if (k) out += ',';
        out += format_double(values_[k]);
        out += ':';
        out += format_double(probs_[k]);
    }
    return out;
}

}  // namespace d2d
