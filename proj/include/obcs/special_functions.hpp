#pragma once

// Gaussian error function machinery used by the norm estimator, plus
// executable checks of the two inequalities the estimator's accuracy
// analysis rests on.

#include <cstddef>
#include <span>

namespace obcs::special {

inline constexpr double kSqrtPi = 1.7724538509055160272981674833411;
inline constexpr double kSqrt2 = 1.4142135623730950488016887242097;

/// Gaussian error function, (2/sqrt(pi)) * integral of exp(-t^2) from 0 to x.
double erf(double x);

/// Complement 1 - erf(x), accurate in the tail.
double erfc(double x);

/// Inverse of erf on (-1, 1). Initial rational approximation refined by
/// Newton steps with derivative (sqrt(pi)/2) * exp(z^2); the residual is
/// evaluated through erfc near |u| = 1 to avoid cancellation.
/// Throws DomainError for |u| >= 1.
double erfinv(double u);

/// h(u) = 1 / erfinv(2u - 1) on (1/2, 1). Throws DomainError outside.
double h(double u);

/// h'(u) = -sqrt(pi) * exp(erfinv(2u-1)^2) / erfinv(2u-1)^2 on (1/2, 1).
double h_prime(double u);

/// CDF of N(0, sigma^2) at tau: (1 + erf(tau / (sigma*sqrt(2)))) / 2.
/// Throws InvalidParameter if sigma <= 0.
double gaussian_cdf_at_threshold(double tau, double sigma);

/// Executable check of the geometric ratio inequality: for (x1, t1) on the
/// unit sphere, (x2, t2) in the unit ball, t1 >= alpha > eta and the pair
/// within eta of each other, ||x1/t1 - x2/t2||^2 <= 4 eta^2 / (alpha^2 (alpha-eta)^2).
struct RatioBoundCheck {
    enum class Verdict { Holds, Violated, PreconditionsViolated };
    Verdict verdict;
    double lhs = 0.0;    // ||x1/t1 - x2/t2||^2 (when preconditions hold)
    double bound = 0.0;  // 4 eta^2 / (alpha^2 (alpha - eta)^2)

    bool holds() const { return verdict == Verdict::Holds; }
    bool preconditions_violated() const {
        return verdict == Verdict::PreconditionsViolated;
    }
};

RatioBoundCheck check_lemma_sincos(std::span<const double> x1, double t1,
                                   std::span<const double> x2, double t2,
                                   double alpha, double eta);

}  // namespace obcs::special
