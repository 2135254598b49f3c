#pragma once

// Norm estimation from constant-threshold one-bit measurements: the fraction
// of -1 bits is an empirical CDF value F_m(tau), and
//     Lambda = tau / (sqrt(2) * erfinv(2 F_m - 1))
// estimates ||x||_2. Includes the DKW tail bound and the sample-size
// calculators that budget measurements for a target accuracy.

#include <cstddef>
#include <optional>

#include "obcs/measurement.hpp"

namespace obcs {

enum class EstimateStatus {
    Ok,         // F_m in (1/2, 1), lambda positive
    BelowHalf,  // F_m <= 1/2: undersampled or ||x|| >> tau; no estimate
    Saturated,  // F_m = 1: lambda = 0 by the limit convention
};

const char* to_string(EstimateStatus status);

struct NormEstimate {
    EstimateStatus status;
    double f_m = 0.0;
    double tau = 0.0;
    std::size_t m = 0;
    /// Present for Ok (positive) and Saturated (zero); absent for BelowHalf.
    std::optional<double> lambda;
};

/// Fraction of -1 entries. Throws EmptyMeasurement when y is empty.
double empirical_cdf(const SignVector& y);

/// Estimator above; degenerate F_m values are encoded in the status, never
/// thrown. Throws InvalidParameter if tau <= 0.
NormEstimate estimate_norm(const SignVector& y, double tau);

/// DKW tail bound 2 exp(-2 m gamma^2), clamped to [0, 1].
double dkw_failure_probability(std::size_t m, double gamma);

/// Measurements needed so |Lambda - ||x||| <= delta holds with probability
/// >= 1 - epsilon for one fixed signal in the annulus r <= ||x|| <= R, at
/// threshold tau = r: ceil(4 pi e^2 (R^4/r^2) delta^-2 log(2/epsilon)).
/// Requires 0 < r <= R, 0 < delta < (2 sqrt(e)/5) R, 0 < epsilon < 1.
std::size_t sample_size_fixed_signal(double r, double R, double delta, double epsilon);

/// Uniform (all s-sparse signals in the annulus) variant at tau = 3r/5:
/// ceil(C1 (R^4/r^2) delta^-2 s log(n R^2 / (s delta r))). The leading
/// constant is not pinned down by the analysis; C1 defaults to 1 and the
/// result is a planning figure, not a guarantee.
std::size_t sample_size_uniform(double r, double R, double delta, std::size_t n,
                                std::size_t s, double c1 = 1.0);

}  // namespace obcs
