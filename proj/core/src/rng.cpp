#include "d2d/rng.hpp"

#include <cmath>
#include <limits>

namespace d2d {

namespace {

constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ull;

// splitmix64 output permutation (Steele, Lea, Flood 2014).
std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

}  // namespace

Rng Rng::stream(std::uint64_t seed, std::uint64_t id) {
    return Rng(mix(mix(seed + kGamma) ^ (id * kGamma + 0x952A41C3A79C9E37ull)));
}

Rng Rng::stream(std::uint64_t seed, std::uint64_t id_a, std::uint64_t id_b) {
    Rng outer = stream(seed, id_a);
    return Rng(mix(outer.state_ ^ (id_b * kGamma + 0xD1B54A32D192ED03ull)));
}

std::uint64_t Rng::next_u64() {
    state_ += kGamma;
    return mix(state_);
}

double Rng::next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

std::uint64_t Rng::next_below(std::uint64_t n) {
    // Lemire rejection sampling, bias-free for every n.
    unsigned __int128 m = static_cast<unsigned __int128>(next_u64()) * n;
    auto lo = static_cast<std::uint64_t>(m);
    if (lo < n) {
        const std::uint64_t t = (0 - n) % n;
        while (lo < t) {
            m = static_cast<unsigned __int128>(next_u64()) * n;
            lo = static_cast<std::uint64_t>(m);
        }
    }
    return static_cast<std::uint64_t>(m >> 64);
}

int Rng::poisson(double mean) {
    if (mean <= 0.0) return 0;
    // Count arrivals of a rate-1 process before time `mean`. Unlike the
    // product form this never underflows, so one code path covers all means.
    int count = 0;
    double t = -std::log1p(-next_double());
    while (t <= mean) {
        ++count;
        t += -std::log1p(-next_double());
    }
    return count;
}

std::uint64_t Rng::skip_geometric(double p) {
    if (p >= 1.0) return 0;
    if (p <= 0.0) return std::numeric_limits<std::uint64_t>::max();
    const double u = next_double();
    const double k = std::floor(std::log1p(-u) / std::log1p(-p));
    if (k >= static_cast<double>(std::numeric_limits<std::uint64_t>::max()))
        return std::numeric_limits<std::uint64_t>::max();
    return static_cast<std::uint64_t>(k);
}

}  // namespace d2d
