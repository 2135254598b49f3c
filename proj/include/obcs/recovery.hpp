#pragma once

// Recovery front ends over the sign-consistency programs: the augmented
// program returns (x#, t#) and the norm-aware estimate tau x#/t#; the plain
// program returns a unit-norm direction estimate for split pipelines.

#include <optional>
#include <string>
#include <vector>

#include "obcs/lp.hpp"
#include "obcs/measurement.hpp"
#include "obcs/norm_estimator.hpp"

namespace obcs {

enum class SolverStatus {
    Optimal,
    Infeasible,
    NumericalFailure,
    NormUnresolved,  // |t#| (or ||x#||) at numerical zero: estimate withheld
};

const char* to_string(SolverStatus status);

struct RecoveryTolerances {
    double feas_tol = 1e-8;
    double opt_tol = 1e-8;
    double t_tol = 1e-6;
};

struct RecoveryResult {
    SolverStatus status = SolverStatus::NumericalFailure;
    std::vector<double> x_sharp;      // solver output in signal coordinates
    std::optional<double> t_sharp;    // augmented coordinate; absent for plain PV
    std::vector<double> estimate;     // tau x#/t#, x#/||x#||, or Lambda x#; empty
                                      // when the status withholds it
    double objective = 0.0;
    double max_eq_violation = 0.0;    // relative residuals of the solved program
    double max_ineq_violation = 0.0;
    std::string note;                 // diagnostics (e.g. "degenerate-solution")
    std::optional<NormEstimate> norm_estimate;  // set by the combined pipeline
};

/// Solve the augmented program on a Gaussian-dither ensemble and form
/// tau x#/t#. t# <= t_tol yields NormUnresolved with the raw (x#, t#) kept.
/// Throws InvalidParameter unless the ensemble uses GaussianDither with
/// tau > 0.
RecoveryResult recover_augmented(const MeasurementEnsemble& ensemble,
                                 const SignVector& y,
                                 const RecoveryTolerances& tol = {});

/// Solve the plain program on a zero-shift ensemble and return the unit
/// direction x#/||x#||. ||x#|| <= t_tol yields NormUnresolved with note
/// "degenerate-solution". Throws InvalidParameter unless shifts are all zero.
RecoveryResult recover_direction(const MeasurementEnsemble& ensemble,
                                 const SignVector& y,
                                 const RecoveryTolerances& tol = {});

}  // namespace obcs
