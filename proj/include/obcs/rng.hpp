#pragma once

// Counter-based random generator with explicit stream splitting.
//
// Output i of a stream with key k is mix64(k + (i+1)*GAMMA) — the SplitMix64
// finalizer over an additive counter. Because a draw only depends on
// (key, counter), any substream can be regenerated independently of the
// others: matrix rows, shifts, signals and trials each get their own derived
// key, which is what makes parallel generation and streaming quantization
// reproduce the stored-ensemble results bit for bit.
//
// Stream layout used across the library (all derived from one master seed):
//   from_seed(seed)
//     .substream(tag::signal)          sparse signal draws
//     .substream(tag::matrix).substream(i)   row i of the Gaussian matrix
//     .substream(tag::shifts).substream(i)   shift i
//     .substream(tag::norm_batch) / .substream(tag::direction_batch)
//                                      sub-seeds for the split pipeline
//     .substream(tag::sweep).substream(g).substream(t)  per-trial seeds

#include <cstdint>

namespace obcs {

namespace stream_tag {
inline constexpr std::uint64_t signal = 1;
inline constexpr std::uint64_t matrix = 2;
inline constexpr std::uint64_t shifts = 3;
inline constexpr std::uint64_t norm_batch = 4;
inline constexpr std::uint64_t direction_batch = 5;
inline constexpr std::uint64_t sweep = 6;
inline constexpr std::uint64_t ensemble = 7;
}  // namespace stream_tag

class CounterRng {
public:
    /// Root stream for a user-facing seed.
    static CounterRng from_seed(std::uint64_t seed);

    /// Child stream with an unrelated key; siblings with different tags and
    /// the parent never share outputs.
    CounterRng substream(std::uint64_t tag) const;

    std::uint64_t next_u64();

    /// Uniform on (0, 1] (never 0, so it is safe inside log()).
    double next_unit_positive();

    /// Uniform on [0, 1).
    double next_unit();

    /// Standard normal via Box-Muller; one pair is cached.
    double next_gaussian();

    void fill_gaussian(double* out, std::size_t count);

    /// Uniform integer in [0, bound); rejection sampling, no modulo bias.
    std::uint64_t next_below(std::uint64_t bound);

    std::uint64_t key() const { return key_; }

private:
    explicit CounterRng(std::uint64_t key) : key_(key) {}

    std::uint64_t key_ = 0;
    std::uint64_t counter_ = 0;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace obcs
