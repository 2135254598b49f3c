#pragma once

// Data-parallel inner loops shared by the measurement, estimator and LP
// modules. Every kernel has a scalar reference implementation; on x86 an
// AVX2+FMA variant is selected at runtime when the CPU supports it, and on
// aarch64 a NEON variant is compiled in. The variants are equivalence-tested
// against the scalar reference.

#include <cstddef>
#include <cstdint>

namespace obcs::kernels {

enum class IsaLevel {
    Scalar,
    Avx2,
    Neon,
};

/// Instruction set the dispatch table currently points at.
IsaLevel active_level();

const char* level_name(IsaLevel level);

/// Force a specific level (test hook). Throws InvalidParameter if the host
/// cannot run it. Passing the currently active level is always valid.
void force_level(IsaLevel level);

/// Restore the best level the host supports.
void reset_level();

/// Sum of a[i] * b[i].
double dot(const double* a, const double* b, std::size_t len);

/// y[i] += alpha * x[i].
void axpy(double alpha, const double* x, double* y, std::size_t len);

/// Sum of a[i]^2.
double sum_squares(const double* a, std::size_t len);

/// a[i] *= alpha.
void scale(double alpha, double* a, std::size_t len);

/// bits[i] = +1 if t[i] >= 0, else -1 (sign(0) = +1).
void sign_bits(const double* t, std::int8_t* bits, std::size_t len);

/// Number of entries equal to -1 in a {+1,-1} bit vector.
std::size_t count_negative(const std::int8_t* bits, std::size_t len);

}  // namespace obcs::kernels
