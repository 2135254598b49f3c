#include "kernels_internal.hpp"

namespace obcs::kernels::detail {

namespace {

double dot_scalar(const double* a, const double* b, std::size_t len) {
    double acc = 0.0;
    for (std::size_t i = 0; i < len; ++i) {
        acc += a[i] * b[i];
    }
    return acc;
}

void axpy_scalar(double alpha, const double* x, double* y, std::size_t len) {
    for (std::size_t i = 0; i < len; ++i) {
        y[i] += alpha * x[i];
    }
}

double sum_squares_scalar(const double* a, std::size_t len) {
    double acc = 0.0;
    for (std::size_t i = 0; i < len; ++i) {
        acc += a[i] * a[i];
    }
    return acc;
}

void scale_scalar(double alpha, double* a, std::size_t len) {
    for (std::size_t i = 0; i < len; ++i) {
        a[i] *= alpha;
    }
}

void sign_bits_scalar(const double* t, std::int8_t* bits, std::size_t len) {
    for (std::size_t i = 0; i < len; ++i) {
        bits[i] = (t[i] >= 0.0) ? std::int8_t{1} : std::int8_t{-1};
    }
}

std::size_t count_negative_scalar(const std::int8_t* bits, std::size_t len) {
    std::size_t count = 0;
    for (std::size_t i = 0; i < len; ++i) {
        count += (bits[i] < 0) ? 1u : 0u;
    }
    return count;
}

}  // namespace

const KernelTable& scalar_table() {
    static const KernelTable table{
        dot_scalar,        axpy_scalar,      sum_squares_scalar,
        scale_scalar,      sign_bits_scalar, count_negative_scalar,
    };
    return table;
}

}  // namespace obcs::kernels::detail
