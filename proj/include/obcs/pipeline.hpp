#pragma once

// Split-measurement estimator: threshold-quantized batch for the norm,
// zero-shift batch for the direction, final estimate Lambda * x#.

#include <cstdint>

#include "obcs/recovery.hpp"

namespace obcs {

struct SplitPlan {
    std::size_t m_norm = 0;       // m1: constant-threshold measurements
    std::size_t m_direction = 0;  // m2: zero-shift measurements

    std::size_t total() const { return m_norm + m_direction; }

    /// Even split for a fixed budget (odd leftover goes to the norm batch).
    static SplitPlan halves(std::size_t m_total);
};

/// Runs both sub-estimators on independent ensembles derived from disjoint
/// substreams of `seed` and multiplies: estimate = Lambda * (x#/||x#||).
/// Norm-side BelowHalf and direction-side failures surface in the status;
/// Saturated (Lambda = 0) produces the zero estimate. The result carries the
/// norm estimate as a diagnostic.
RecoveryResult combined_recover(const SparseSignal& signal, const SplitPlan& plan,
                                double tau, std::uint64_t seed,
                                const RecoveryTolerances& tol = {});

/// As above but with the ground truth replaced by an arbitrary vector.
RecoveryResult combined_recover(std::span<const double> x, std::size_t n,
                                const SplitPlan& plan, double tau, std::uint64_t seed,
                                const RecoveryTolerances& tol = {});

}  // namespace obcs
