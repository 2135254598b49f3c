#include "obcs/recovery.hpp"

#include <cmath>

#include "obcs/errors.hpp"
#include "obcs/kernels.hpp"

namespace obcs {

const char* to_string(SolverStatus status) {
    switch (status) {
        case SolverStatus::Optimal:
            return "Optimal";
        case SolverStatus::Infeasible:
            return "Infeasible";
        case SolverStatus::NumericalFailure:
            return "NumericalFailure";
        case SolverStatus::NormUnresolved:
            return "NormUnresolved";
    }
    return "unknown";
}

namespace {

SolverStatus map_lp_status(LpStatus status) {
    switch (status) {
        case LpStatus::Optimal:
            return SolverStatus::Optimal;
        case LpStatus::Infeasible:
            return SolverStatus::Infeasible;
        default:
            return SolverStatus::NumericalFailure;
    }
}

}  // namespace

RecoveryResult recover_augmented(const MeasurementEnsemble& ensemble,
                                 const SignVector& y, const RecoveryTolerances& tol) {
    if (ensemble.shift.kind != ShiftKind::GaussianDither || !(ensemble.shift.tau > 0.0)) {
        throw InvalidParameter(
            "recover_augmented: ensemble must use Gaussian dither with tau > 0");
    }
    const std::size_t n = ensemble.cols;
    const double tau = ensemble.shift.tau;
    const LpProblem problem = formulate_pv_augmented(
        ensemble.matrix, ensemble.rows, n, ensemble.shifts, tau, y);
    const LpSolution sol = solve_lp(problem, tol.feas_tol, tol.opt_tol);

    RecoveryResult out;
    out.status = map_lp_status(sol.status);
    out.objective = sol.objective;
    out.max_eq_violation = sol.max_eq_violation;
    out.max_ineq_violation = sol.max_ineq_violation;
    if (sol.status != LpStatus::Optimal) {
        out.note = to_string(sol.status);
        return out;
    }

    const std::size_t na = n + 1;
    out.x_sharp.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        out.x_sharp[j] = sol.x[j] - sol.x[na + j];
    }
    const double t_sharp = sol.x[n] - sol.x[na + n];
    out.t_sharp = t_sharp;
    if (!(t_sharp > tol.t_tol)) {
        out.status = SolverStatus::NormUnresolved;
        out.note = "t_sharp at numerical zero; norm estimate withheld";
        return out;
    }
    out.estimate.resize(n);
    const double factor = tau / t_sharp;
    for (std::size_t j = 0; j < n; ++j) {
        out.estimate[j] = factor * out.x_sharp[j];
    }
    return out;
}

RecoveryResult recover_direction(const MeasurementEnsemble& ensemble,
                                 const SignVector& y, const RecoveryTolerances& tol) {
    if (!ensemble.zero_shifts()) {
        throw InvalidParameter("recover_direction: ensemble shifts must all be zero");
    }
    const std::size_t n = ensemble.cols;
    const LpProblem problem = formulate_pv(ensemble.matrix, ensemble.rows, n, y);
    const LpSolution sol = solve_lp(problem, tol.feas_tol, tol.opt_tol);

    RecoveryResult out;
    out.status = map_lp_status(sol.status);
    out.objective = sol.objective;
    out.max_eq_violation = sol.max_eq_violation;
    out.max_ineq_violation = sol.max_ineq_violation;
    if (sol.status != LpStatus::Optimal) {
        out.note = to_string(sol.status);
        return out;
    }

    out.x_sharp.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        out.x_sharp[j] = sol.x[j] - sol.x[n + j];
    }
    const double norm =
        std::sqrt(kernels::sum_squares(out.x_sharp.data(), n));
    if (!(norm > tol.t_tol)) {
        out.status = SolverStatus::NormUnresolved;
        out.note = "degenerate-solution";
        return out;
    }
    out.estimate.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        out.estimate[j] = out.x_sharp[j] / norm;
    }
    return out;
}

}  // namespace obcs
