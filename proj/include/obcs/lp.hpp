#pragma once

// Linear programs in the canonical form used throughout:
//
//     minimize    objective . v
//     subject to  eq_matrix v = eq_rhs
//                 ineq_matrix v >= ineq_rhs      (rows mean "expression >= 0"
//                                                 with expression = row.v - rhs)
//                 v >= 0
//
// plus the sign-consistency formulations that cast the one-bit recovery
// programs into this form via the split v = (x+, x-).

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "obcs/measurement.hpp"

namespace obcs {

struct LpProblem {
    std::size_t num_vars = 0;
    std::vector<double> objective;    // length num_vars
    std::vector<double> eq_matrix;    // row-major num_eq x num_vars
    std::vector<double> eq_rhs;
    std::vector<double> ineq_matrix;  // row-major num_ineq x num_vars
    std::vector<double> ineq_rhs;

    std::size_t num_eq() const { return eq_rhs.size(); }
    std::size_t num_ineq() const { return ineq_rhs.size(); }
    const double* eq_row(std::size_t i) const { return eq_matrix.data() + i * num_vars; }
    const double* ineq_row(std::size_t i) const {
        return ineq_matrix.data() + i * num_vars;
    }
};

enum class LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
    IterationLimit,
    NumericalFailure,
};

const char* to_string(LpStatus status);

struct LpSolution {
    LpStatus status = LpStatus::NumericalFailure;
    std::vector<double> x;          // length num_vars, valid when Optimal
    double objective = 0.0;         // objective . x
    double max_eq_violation = 0.0;  // relative residuals, recomputed from the
    double max_ineq_violation = 0.0;  // original problem data
    int iterations = 0;
};

/// Dense two-phase primal simplex. Dantzig pricing with index tie-breaks;
/// switches to Bland's rule after a long degenerate streak so termination is
/// guaranteed. Residuals above feas_tol downgrade Optimal to NumericalFailure.
LpSolution solve_lp(const LpProblem& problem, double feas_tol = 1e-8,
                    double opt_tol = 1e-8);

/// Relative feasibility residuals of an arbitrary point.
void feasibility_residuals(const LpProblem& problem, std::span<const double> v,
                           double& max_eq_violation, double& max_ineq_violation);

/// min ||x'||_1  s.t.  sum_i y_i <a_i, x'> = m  and  y_i <a_i, x'> >= 0.
/// Split form: v = (x+, x-), 2n variables, m inequality rows, 1 equality row.
LpProblem formulate_pv(std::span<const double> a, std::size_t m, std::size_t n,
                       const SignVector& y);

/// The norm-aware variant over (z, u): rows use the augmented vectors
/// (a_i, b_i / tau). Built directly; structurally identical to formulate_pv
/// on the augmented matrix [A | b/tau].
LpProblem formulate_pv_augmented(std::span<const double> a, std::size_t m,
                                 std::size_t n, std::span<const double> shifts,
                                 double tau, const SignVector& y);

/// Plain-text export (documented in the README) for cross-checking against
/// external solvers.
std::string to_text(const LpProblem& problem);

}  // namespace obcs
