#include "obcs/kernels.hpp"

#include <atomic>

#include "kernels_internal.hpp"
#include "obcs/errors.hpp"

namespace obcs::kernels {

namespace {

using detail::KernelTable;

bool level_supported(IsaLevel level) {
    switch (level) {
        case IsaLevel::Scalar:
            return true;
        case IsaLevel::Avx2:
#if defined(OBCS_HAVE_AVX2_TU)
            return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
            return false;
#endif
        case IsaLevel::Neon:
#if defined(OBCS_HAVE_NEON_TU)
            return true;
#else
            return false;
#endif
    }
    return false;
}

const KernelTable* table_for(IsaLevel level) {
    switch (level) {
        case IsaLevel::Scalar:
            return &detail::scalar_table();
#if defined(OBCS_HAVE_AVX2_TU)
        case IsaLevel::Avx2:
            return &detail::avx2_table();
#endif
#if defined(OBCS_HAVE_NEON_TU)
        case IsaLevel::Neon:
            return &detail::neon_table();
#endif
        default:
            return &detail::scalar_table();
    }
}

IsaLevel best_level() {
    if (level_supported(IsaLevel::Avx2)) return IsaLevel::Avx2;
    if (level_supported(IsaLevel::Neon)) return IsaLevel::Neon;
    return IsaLevel::Scalar;
}

struct Dispatch {
    std::atomic<const KernelTable*> table;
    std::atomic<IsaLevel> level;
    Dispatch() {
        IsaLevel l = best_level();
        level.store(l);
        table.store(table_for(l));
    }
};

Dispatch& dispatch() {
    static Dispatch d;
    return d;
}

const KernelTable& current() {
    return *dispatch().table.load(std::memory_order_relaxed);
}

}  // namespace

IsaLevel active_level() {
    return dispatch().level.load(std::memory_order_relaxed);
}

const char* level_name(IsaLevel level) {
    switch (level) {
        case IsaLevel::Scalar:
            return "scalar";
        case IsaLevel::Avx2:
            return "avx2";
        case IsaLevel::Neon:
            return "neon";
    }
    return "unknown";
}

void force_level(IsaLevel level) {
    if (!level_supported(level)) {
        throw InvalidParameter(std::string("kernel level not supported on this host: ") +
                               level_name(level));
    }
    dispatch().level.store(level);
    dispatch().table.store(table_for(level));
}

void reset_level() {
    force_level(best_level());
}

double dot(const double* a, const double* b, std::size_t len) {
    return current().dot(a, b, len);
}

void axpy(double alpha, const double* x, double* y, std::size_t len) {
    current().axpy(alpha, x, y, len);
}

double sum_squares(const double* a, std::size_t len) {
    return current().sum_squares(a, len);
}

void scale(double alpha, double* a, std::size_t len) {
    current().scale(alpha, a, len);
}

void sign_bits(const double* t, std::int8_t* bits, std::size_t len) {
    current().sign_bits(t, bits, len);
}

std::size_t count_negative(const std::int8_t* bits, std::size_t len) {
    return current().count_negative(bits, len);
}

}  // namespace obcs::kernels
