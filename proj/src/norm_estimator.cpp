#include "obcs/norm_estimator.hpp"

#include <cmath>

#include "obcs/errors.hpp"
#include "obcs/kernels.hpp"
#include "obcs/special_functions.hpp"

namespace obcs {

const char* to_string(EstimateStatus status) {
    switch (status) {
        case EstimateStatus::Ok:
            return "Ok";
        case EstimateStatus::BelowHalf:
            return "BelowHalf";
        case EstimateStatus::Saturated:
            return "Saturated";
    }
    return "unknown";
}

double empirical_cdf(const SignVector& y) {
    if (y.bits.empty()) {
        throw EmptyMeasurement("empirical_cdf: no measurements");
    }
    const std::size_t negatives = kernels::count_negative(y.bits.data(), y.bits.size());
    return static_cast<double>(negatives) / static_cast<double>(y.bits.size());
}

NormEstimate estimate_norm(const SignVector& y, double tau) {
    if (!(tau > 0.0)) {
        throw InvalidParameter("estimate_norm: tau must be positive");
    }
    NormEstimate est;
    est.f_m = empirical_cdf(y);
    est.tau = tau;
    est.m = y.size();
    if (est.f_m >= 1.0) {
        est.status = EstimateStatus::Saturated;
        est.lambda = 0.0;
    } else if (est.f_m <= 0.5) {
        est.status = EstimateStatus::BelowHalf;
    } else {
        est.status = EstimateStatus::Ok;
        est.lambda = tau / (special::kSqrt2 * special::erfinv(2.0 * est.f_m - 1.0));
    }
    return est;
}

double dkw_failure_probability(std::size_t m, double gamma) {
    if (m == 0 || !(gamma > 0.0)) {
        throw InvalidParameter("dkw_failure_probability: need m >= 1 and gamma > 0");
    }
    const double p = 2.0 * std::exp(-2.0 * static_cast<double>(m) * gamma * gamma);
    return p > 1.0 ? 1.0 : p;
}

std::size_t sample_size_fixed_signal(double r, double R, double delta, double epsilon) {
    if (!(r > 0.0) || !(r <= R)) {
        throw InvalidParameter("sample_size_fixed_signal: need 0 < r <= R");
    }
    const double delta_cap = 0.4 * std::sqrt(std::exp(1.0)) * R;  // (2 sqrt(e)/5) R
    if (!(delta > 0.0) || !(delta < delta_cap)) {
        throw InvalidParameter(
            "sample_size_fixed_signal: need 0 < delta < (2 sqrt(e)/5) R");
    }
    if (!(epsilon > 0.0) || !(epsilon < 1.0)) {
        throw InvalidParameter("sample_size_fixed_signal: need 0 < epsilon < 1");
    }
    const double four_pi_e2 = 4.0 * 3.14159265358979323846 * std::exp(2.0);
    const double bound = four_pi_e2 * (R * R * R * R) / (r * r) / (delta * delta) *
                         std::log(2.0 / epsilon);
    return static_cast<std::size_t>(std::ceil(bound));
}

std::size_t sample_size_uniform(double r, double R, double delta, std::size_t n,
                                std::size_t s, double c1) {
    if (!(r > 0.0) || !(r <= R)) {
        throw InvalidParameter("sample_size_uniform: need 0 < r <= R");
    }
    if (!(delta > 0.0) || !(delta <= R)) {
        throw InvalidParameter("sample_size_uniform: need 0 < delta <= R");
    }
    if (s == 0 || s > n) {
        throw InvalidParameter("sample_size_uniform: need 0 < s <= n");
    }
    if (!(c1 > 0.0)) {
        throw InvalidParameter("sample_size_uniform: need C1 > 0");
    }
    const double log_term = std::log(static_cast<double>(n) * R * R /
                                     (static_cast<double>(s) * delta * r));
    const double bound = c1 * (R * R * R * R) / (r * r) / (delta * delta) *
                         static_cast<double>(s) * log_term;
    if (!(bound > 1.0)) {
        return 1;  // the bound is vacuous; any m satisfies it
    }
    return static_cast<std::size_t>(std::ceil(bound));
}

}  // namespace obcs
