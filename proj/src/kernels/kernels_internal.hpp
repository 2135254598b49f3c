#pragma once

#include <cstddef>
#include <cstdint>

// Per-ISA kernel entry points. Only the TUs compiled with the matching
// target flags define them; dispatch.cpp wires the table.

namespace obcs::kernels::detail {

struct KernelTable {
    double (*dot)(const double*, const double*, std::size_t);
    void (*axpy)(double, const double*, double*, std::size_t);
    double (*sum_squares)(const double*, std::size_t);
    void (*scale)(double, double*, std::size_t);
    void (*sign_bits)(const double*, std::int8_t*, std::size_t);
    std::size_t (*count_negative)(const std::int8_t*, std::size_t);
};

const KernelTable& scalar_table();

#if defined(__x86_64__) || defined(_M_X64)
#define OBCS_HAVE_AVX2_TU 1
const KernelTable& avx2_table();
#endif

#if defined(__aarch64__) || defined(_M_ARM64)
#define OBCS_HAVE_NEON_TU 1
const KernelTable& neon_table();
#endif

}  // namespace obcs::kernels::detail
