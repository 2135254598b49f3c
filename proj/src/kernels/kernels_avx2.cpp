// AVX2 + FMA variants. This TU is compiled with -mavx2 -mfma; dispatch.cpp
// only installs it after a runtime CPU check.

#include "kernels_internal.hpp"

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

namespace obcs::kernels::detail {

namespace {

double dot_avx2(const double* a, const double* b, std::size_t len) {
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= len; i += 8) {
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
        acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4), acc1);
    }
    for (; i + 4 <= len; i += 4) {
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
    }
    __m256d acc = _mm256_add_pd(acc0, acc1);
    __m128d lo = _mm256_castpd256_pd128(acc);
    __m128d hi = _mm256_extractf128_pd(acc, 1);
    __m128d sum2 = _mm_add_pd(lo, hi);
    double result = _mm_cvtsd_f64(_mm_add_sd(sum2, _mm_unpackhi_pd(sum2, sum2)));
    for (; i < len; ++i) {
        result += a[i] * b[i];
    }
    return result;
}

void axpy_avx2(double alpha, const double* x, double* y, std::size_t len) {
    const __m256d va = _mm256_set1_pd(alpha);
    std::size_t i = 0;
    for (; i + 8 <= len; i += 8) {
        __m256d y0 = _mm256_loadu_pd(y + i);
        __m256d y1 = _mm256_loadu_pd(y + i + 4);
        y0 = _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), y0);
        y1 = _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i + 4), y1);
        _mm256_storeu_pd(y + i, y0);
        _mm256_storeu_pd(y + i + 4, y1);
    }
    for (; i + 4 <= len; i += 4) {
        __m256d y0 = _mm256_loadu_pd(y + i);
        y0 = _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), y0);
        _mm256_storeu_pd(y + i, y0);
    }
    for (; i < len; ++i) {
        y[i] += alpha * x[i];
    }
}

double sum_squares_avx2(const double* a, std::size_t len) {
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= len; i += 8) {
        __m256d v0 = _mm256_loadu_pd(a + i);
        __m256d v1 = _mm256_loadu_pd(a + i + 4);
        acc0 = _mm256_fmadd_pd(v0, v0, acc0);
        acc1 = _mm256_fmadd_pd(v1, v1, acc1);
    }
    for (; i + 4 <= len; i += 4) {
        __m256d v0 = _mm256_loadu_pd(a + i);
        acc0 = _mm256_fmadd_pd(v0, v0, acc0);
    }
    __m256d acc = _mm256_add_pd(acc0, acc1);
    __m128d lo = _mm256_castpd256_pd128(acc);
    __m128d hi = _mm256_extractf128_pd(acc, 1);
    __m128d sum2 = _mm_add_pd(lo, hi);
    double result = _mm_cvtsd_f64(_mm_add_sd(sum2, _mm_unpackhi_pd(sum2, sum2)));
    for (; i < len; ++i) {
        result += a[i] * a[i];
    }
    return result;
}

void scale_avx2(double alpha, double* a, std::size_t len) {
    const __m256d va = _mm256_set1_pd(alpha);
    std::size_t i = 0;
    for (; i + 4 <= len; i += 4) {
        _mm256_storeu_pd(a + i, _mm256_mul_pd(va, _mm256_loadu_pd(a + i)));
    }
    for (; i < len; ++i) {
        a[i] *= alpha;
    }
}

void sign_bits_avx2(const double* t, std::int8_t* bits, std::size_t len) {
    const __m256d zero = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= len; i += 4) {
        __m256d v = _mm256_loadu_pd(t + i);
        int mask = _mm256_movemask_pd(_mm256_cmp_pd(v, zero, _CMP_GE_OQ));
        bits[i + 0] = (mask & 1) ? std::int8_t{1} : std::int8_t{-1};
        bits[i + 1] = (mask & 2) ? std::int8_t{1} : std::int8_t{-1};
        bits[i + 2] = (mask & 4) ? std::int8_t{1} : std::int8_t{-1};
        bits[i + 3] = (mask & 8) ? std::int8_t{1} : std::int8_t{-1};
    }
    for (; i < len; ++i) {
        bits[i] = (t[i] >= 0.0) ? std::int8_t{1} : std::int8_t{-1};
    }
}

std::size_t count_negative_avx2(const std::int8_t* bits, std::size_t len) {
    const __m256i zero = _mm256_setzero_si256();
    std::size_t count = 0;
    std::size_t i = 0;
    for (; i + 32 <= len; i += 32) {
        __m256i v = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(bits + i));
        __m256i neg = _mm256_cmpgt_epi8(zero, v);
        count += static_cast<std::size_t>(
            _mm_popcnt_u32(static_cast<unsigned>(_mm256_movemask_epi8(neg))));
    }
    for (; i < len; ++i) {
        count += (bits[i] < 0) ? 1u : 0u;
    }
    return count;
}

}  // namespace

const KernelTable& avx2_table() {
    static const KernelTable table{
        dot_avx2,    axpy_avx2,      sum_squares_avx2,
        scale_avx2,  sign_bits_avx2, count_negative_avx2,
    };
    return table;
}

}  // namespace obcs::kernels::detail

#endif  // x86_64
