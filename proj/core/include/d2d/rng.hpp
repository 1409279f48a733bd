#pragma once

#include <cstdint>

namespace d2d {

// Deterministic splitmix64 generator. All randomness in the library flows
// through this type so that a (seed, stream) pair reproduces bit-identical
// results on any platform; std:: distributions are implementation-defined
// and must not be used anywhere results are recorded.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    // Independent substream. stream(seed, a) and stream(seed, b) for a != b
    // are decorrelated; nested ids split further (per trial, then per edge).
    static Rng stream(std::uint64_t seed, std::uint64_t id);
    static Rng stream(std::uint64_t seed, std::uint64_t id_a, std::uint64_t id_b);

    std::uint64_t next_u64();

    // Uniform in [0, 1), 53-bit resolution.
    double next_double();

    // Uniform in {0, ..., n-1}, unbiased. n must be positive.
    std::uint64_t next_below(std::uint64_t n);

    // Exact Poisson draw via unit-process arrival counting. Cost is O(mean+1)
    // per call and stays stable for any mean that fits a double.
    int poisson(double mean);

    // Number of Bernoulli(p) failures before the first success. Used to skip
    // over absent edges when sampling sparse random graphs in O(edges).
    std::uint64_t skip_geometric(double p);

private:
    std::uint64_t state_;
};

}  // namespace d2d
