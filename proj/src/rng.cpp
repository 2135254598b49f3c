#include "obcs/rng.hpp"

#include <cmath>

#include "obcs/errors.hpp"

namespace obcs {

namespace {

constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ull;
constexpr double kTwoPi = 6.283185307179586476925286766559;

inline std::uint64_t mix64(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ull;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBull;
    z ^= z >> 31;
    return z;
}

}  // namespace

CounterRng CounterRng::from_seed(std::uint64_t seed) {
    return CounterRng(mix64(seed + kGamma));
}

CounterRng CounterRng::substream(std::uint64_t tag) const {
    // Two independent mixes keep parent/child and sibling keys decorrelated.
    return CounterRng(mix64(mix64(key_ ^ 0xA0761D6478BD642Full) +
                            mix64(tag ^ 0xE7037ED1A0B428DBull)));
}

std::uint64_t CounterRng::next_u64() {
    return mix64(key_ + (++counter_) * kGamma);
}

double CounterRng::next_unit_positive() {
    return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
}

double CounterRng::next_unit() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double CounterRng::next_gaussian() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    const double u1 = next_unit_positive();
    const double u2 = next_unit();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = kTwoPi * u2;
    spare_ = radius * std::sin(angle);
    has_spare_ = true;
    return radius * std::cos(angle);
}

void CounterRng::fill_gaussian(double* out, std::size_t count) {
    for (std::size_t i = 0; i < count; ++i) {
        out[i] = next_gaussian();
    }
}

std::uint64_t CounterRng::next_below(std::uint64_t bound) {
    if (bound == 0) {
        throw InvalidParameter("next_below: bound must be positive");
    }
    // Reject the partial top interval so every residue is equally likely.
    const std::uint64_t threshold = (0ull - bound) % bound;
    for (;;) {
        const std::uint64_t x = next_u64();
        if (x >= threshold) {
            return x % bound;
        }
    }
}

}  // namespace obcs
