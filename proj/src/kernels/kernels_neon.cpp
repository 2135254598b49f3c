// NEON variants for aarch64. Compiled only on ARM builds; dispatch.cpp
// installs the table unconditionally there (NEON is baseline on aarch64).

#include "kernels_internal.hpp"

#if defined(__aarch64__) || defined(_M_ARM64)

#include <arm_neon.h>

namespace obcs::kernels::detail {

namespace {

double dot_neon(const double* a, const double* b, std::size_t len) {
    float64x2_t acc0 = vdupq_n_f64(0.0);
    float64x2_t acc1 = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 4 <= len; i += 4) {
        acc0 = vfmaq_f64(acc0, vld1q_f64(a + i), vld1q_f64(b + i));
        acc1 = vfmaq_f64(acc1, vld1q_f64(a + i + 2), vld1q_f64(b + i + 2));
    }
    double result = vaddvq_f64(acc0) + vaddvq_f64(acc1);
    for (; i < len; ++i) {
        result += a[i] * b[i];
    }
    return result;
}

void axpy_neon(double alpha, const double* x, double* y, std::size_t len) {
    const float64x2_t va = vdupq_n_f64(alpha);
    std::size_t i = 0;
    for (; i + 2 <= len; i += 2) {
        float64x2_t vy = vld1q_f64(y + i);
        vy = vfmaq_f64(vy, va, vld1q_f64(x + i));
        vst1q_f64(y + i, vy);
    }
    for (; i < len; ++i) {
        y[i] += alpha * x[i];
    }
}

double sum_squares_neon(const double* a, std::size_t len) {
    float64x2_t acc = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 2 <= len; i += 2) {
        float64x2_t v = vld1q_f64(a + i);
        acc = vfmaq_f64(acc, v, v);
    }
    double result = vaddvq_f64(acc);
    for (; i < len; ++i) {
        result += a[i] * a[i];
    }
    return result;
}

void scale_neon(double alpha, double* a, std::size_t len) {
    const float64x2_t va = vdupq_n_f64(alpha);
    std::size_t i = 0;
    for (; i + 2 <= len; i += 2) {
        vst1q_f64(a + i, vmulq_f64(va, vld1q_f64(a + i)));
    }
    for (; i < len; ++i) {
        a[i] *= alpha;
    }
}

void sign_bits_neon(const double* t, std::int8_t* bits, std::size_t len) {
    for (std::size_t i = 0; i < len; ++i) {
        bits[i] = (t[i] >= 0.0) ? std::int8_t{1} : std::int8_t{-1};
    }
}

std::size_t count_negative_neon(const std::int8_t* bits, std::size_t len) {
    std::size_t count = 0;
    std::size_t i = 0;
    for (; i + 16 <= len; i += 16) {
        int8x16_t v = vld1q_s8(bits + i);
        uint8x16_t neg = vcltq_s8(v, vdupq_n_s8(0));
        // lanes are 0x00 or 0xFF; shift to 0/1 and sum
        count += vaddvq_u8(vshrq_n_u8(neg, 7));
    }
    for (; i < len; ++i) {
        count += (bits[i] < 0) ? 1u : 0u;
    }
    return count;
}

}  // namespace

const KernelTable& neon_table() {
    static const KernelTable table{
        dot_neon,    axpy_neon,      sum_squares_neon,
        scale_neon,  sign_bits_neon, count_negative_neon,
    };
    return table;
}

}  // namespace obcs::kernels::detail

#endif  // aarch64
