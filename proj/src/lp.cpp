#include "obcs/lp.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "obcs/errors.hpp"
#include "obcs/kernels.hpp"

namespace obcs {

const char* to_string(LpStatus status) {
    switch (status) {
        case LpStatus::Optimal:
            return "Optimal";
        case LpStatus::Infeasible:
            return "Infeasible";
        case LpStatus::Unbounded:
            return "Unbounded";
        case LpStatus::IterationLimit:
            return "IterationLimit";
        case LpStatus::NumericalFailure:
            return "NumericalFailure";
    }
    return "unknown";
}

namespace {

constexpr double kEps = 1e-9;

// Condensed-dictionary simplex for  max c.v  s.t.  A v <= b, v >= 0.
// The dictionary keeps one column per nonbasic variable plus an artificial
// column used to reach feasibility when some b_i < 0. Variable ids:
// 0..nn-1 originals, nn..nn+mm-1 slacks, -1 the artificial.
class DenseSimplex {
public:
    DenseSimplex(std::vector<double> a, std::vector<double> b, std::vector<double> c)
        : mm_(b.size()),
          nn_(c.size()),
          stride_(nn_ + 2),
          dict_((mm_ + 2) * stride_, 0.0),
          basic_(mm_),
          nonbasic_(nn_ + 1) {
        for (std::size_t i = 0; i < mm_; ++i) {
            double* drow = row(i);
            const double* arow = a.data() + i * nn_;
            std::copy(arow, arow + nn_, drow);
            drow[nn_] = -1.0;  // artificial column
            drow[nn_ + 1] = b[i];
            basic_[i] = static_cast<int>(nn_ + i);
        }
        for (std::size_t j = 0; j < nn_; ++j) {
            nonbasic_[j] = static_cast<int>(j);
            row(mm_)[j] = -c[j];
        }
        nonbasic_[nn_] = kArtificial;
        row(mm_ + 1)[nn_] = 1.0;  // phase-1 objective: drive the artificial out
        max_iterations_ = static_cast<int>(20000 + 10 * (mm_ + nn_));
    }

    LpStatus run(std::vector<double>& x_out, double& objective_out, int& iters_out) {
        // Feasibility phase, only entered when some rhs is negative.
        std::size_t worst = 0;
        for (std::size_t i = 1; i < mm_; ++i) {
            if (rhs(i) < rhs(worst)) {
                worst = i;
            }
        }
        if (rhs(worst) < -kEps) {
            pivot(worst, nn_);
            const StepOutcome outcome = optimize(mm_ + 1, /*exclude_artificial=*/false);
            if (outcome == StepOutcome::IterationLimit) {
                return LpStatus::IterationLimit;
            }
            if (row(mm_ + 1)[nn_ + 1] < -kEps) {
                return LpStatus::Infeasible;
            }
            evict_artificial();
        }

        const StepOutcome outcome = optimize(mm_, /*exclude_artificial=*/true);
        if (outcome == StepOutcome::IterationLimit) {
            return LpStatus::IterationLimit;
        }
        if (outcome == StepOutcome::Unbounded) {
            return LpStatus::Unbounded;
        }

        x_out.assign(nn_, 0.0);
        for (std::size_t i = 0; i < mm_; ++i) {
            if (basic_[i] >= 0 && basic_[i] < static_cast<int>(nn_)) {
                x_out[static_cast<std::size_t>(basic_[i])] = std::max(rhs(i), 0.0);
            }
        }
        objective_out = row(mm_)[nn_ + 1];
        iters_out = iterations_;
        return LpStatus::Optimal;
    }

    /// Dual prices at optimality: the reduced cost of each slack column
    /// (zero while the slack is basic).
    std::vector<double> slack_duals() const {
        std::vector<double> duals(mm_, 0.0);
        const double* orow = row(mm_);
        for (std::size_t j = 0; j <= nn_; ++j) {
            const int id = nonbasic_[j];
            if (id >= static_cast<int>(nn_)) {
                duals[static_cast<std::size_t>(id) - nn_] = std::max(orow[j], 0.0);
            }
        }
        return duals;
    }

private:
    enum class StepOutcome { Optimal, Unbounded, IterationLimit };
    static constexpr int kArtificial = -1;

    double* row(std::size_t i) { return dict_.data() + i * stride_; }
    const double* row(std::size_t i) const { return dict_.data() + i * stride_; }
    double rhs(std::size_t i) const { return row(i)[nn_ + 1]; }

    void pivot(std::size_t r, std::size_t s) {
        double* prow = row(r);
        const double inv = 1.0 / prow[s];
        for (std::size_t i = 0; i < mm_ + 2; ++i) {
            if (i == r) {
                continue;
            }
            double* target = row(i);
            const double factor = target[s] * inv;
            if (factor != 0.0) {
                kernels::axpy(-factor, prow, target, stride_);
            }
            target[s] = -factor;  // column s now belongs to the leaving variable
        }
        for (std::size_t j = 0; j < stride_; ++j) {
            if (j != s) {
                prow[j] *= inv;
            }
        }
        prow[s] = inv;
        std::swap(basic_[r], nonbasic_[s]);
        ++iterations_;
    }

    // Price with Dantzig's rule (index tie-break); after a long run of
    // pivots with no objective progress, fall back to Bland's rule, which
    // cannot cycle.
    StepOutcome optimize(std::size_t obj_row, bool exclude_artificial) {
        int stall = 0;
        bool bland = false;
        for (;;) {
            if (iterations_ >= max_iterations_) {
                return StepOutcome::IterationLimit;
            }
            const double* orow = row(obj_row);
            std::size_t entering = nn_ + 1;
            if (bland) {
                int best_id = std::numeric_limits<int>::max();
                for (std::size_t j = 0; j <= nn_; ++j) {
                    if (exclude_artificial && nonbasic_[j] == kArtificial) {
                        continue;
                    }
                    if (orow[j] < -kEps && nonbasic_[j] < best_id) {
                        best_id = nonbasic_[j];
                        entering = j;
                    }
                }
            } else {
                double best = -kEps;
                int best_id = std::numeric_limits<int>::max();
                for (std::size_t j = 0; j <= nn_; ++j) {
                    if (exclude_artificial && nonbasic_[j] == kArtificial) {
                        continue;
                    }
                    const double rc = orow[j];
                    if (rc < best || (rc == best && nonbasic_[j] < best_id)) {
                        best = rc;
                        best_id = nonbasic_[j];
                        entering = j;
                    }
                }
            }
            if (entering == nn_ + 1) {
                return StepOutcome::Optimal;
            }

            std::size_t leaving = mm_;
            double best_ratio = std::numeric_limits<double>::infinity();
            int best_id = std::numeric_limits<int>::max();
            for (std::size_t i = 0; i < mm_; ++i) {
                const double coeff = row(i)[entering];
                if (coeff <= kEps) {
                    continue;
                }
                const double ratio = rhs(i) / coeff;
                if (ratio < best_ratio - kEps ||
                    (ratio < best_ratio + kEps && basic_[i] < best_id)) {
                    best_ratio = ratio;
                    best_id = basic_[i];
                    leaving = i;
                }
            }
            if (leaving == mm_) {
                return StepOutcome::Unbounded;
            }

            const double before = row(obj_row)[nn_ + 1];
            pivot(leaving, entering);
            const double after = row(obj_row)[nn_ + 1];
            if (std::abs(after - before) <= 1e-12 * (1.0 + std::abs(after))) {
                if (++stall > 200 && !bland) {
                    bland = true;
                }
            } else {
                stall = 0;
            }
        }
    }

    // After the feasibility phase the artificial may sit in the basis at
    // level zero; swap it out on the largest available column so the main
    // phase never touches it. An all-zero row is redundant and left alone.
    void evict_artificial() {
        for (std::size_t i = 0; i < mm_; ++i) {
            if (basic_[i] != kArtificial) {
                continue;
            }
            std::size_t best = nn_ + 1;
            double best_abs = kEps;
            for (std::size_t j = 0; j <= nn_; ++j) {
                if (nonbasic_[j] == kArtificial) {
                    continue;
                }
                const double v = std::abs(row(i)[j]);
                if (v > best_abs) {
                    best_abs = v;
                    best = j;
                }
            }
            if (best <= nn_) {
                pivot(i, best);
            }
            return;
        }
    }

    std::size_t mm_, nn_, stride_;
    std::vector<double> dict_;
    std::vector<int> basic_;
    std::vector<int> nonbasic_;
    int iterations_ = 0;
    int max_iterations_ = 0;
};

void validate(const LpProblem& p) {
    if (p.num_vars == 0 || p.objective.size() != p.num_vars) {
        throw DimensionMismatch("solve_lp: objective length must equal num_vars");
    }
    if (p.eq_matrix.size() != p.num_eq() * p.num_vars ||
        p.ineq_matrix.size() != p.num_ineq() * p.num_vars) {
        throw DimensionMismatch("solve_lp: constraint matrix shapes are inconsistent");
    }
}

}  // namespace

void feasibility_residuals(const LpProblem& p, std::span<const double> v,
                           double& max_eq_violation, double& max_ineq_violation) {
    max_eq_violation = 0.0;
    max_ineq_violation = 0.0;
    for (std::size_t i = 0; i < p.num_eq(); ++i) {
        const double lhs = kernels::dot(p.eq_row(i), v.data(), p.num_vars);
        const double scale = std::max(1.0, std::abs(p.eq_rhs[i]));
        max_eq_violation = std::max(max_eq_violation, std::abs(lhs - p.eq_rhs[i]) / scale);
    }
    for (std::size_t i = 0; i < p.num_ineq(); ++i) {
        const double lhs = kernels::dot(p.ineq_row(i), v.data(), p.num_vars);
        const double scale = std::max(1.0, std::abs(p.ineq_rhs[i]));
        max_ineq_violation =
            std::max(max_ineq_violation, std::max(0.0, p.ineq_rhs[i] - lhs) / scale);
    }
}

namespace {

// Direct orientation: max (-c).v  s.t.  A v <= b (inequalities negated,
// equalities as two rows). Rows = num_ineq + 2 num_eq.
LpStatus solve_primal_orientation(const LpProblem& p, std::vector<double>& x,
                                  int& iterations) {
    const std::size_t nn = p.num_vars;
    const std::size_t mm = p.num_ineq() + 2 * p.num_eq();
    std::vector<double> a(mm * nn);
    std::vector<double> b(mm);
    std::size_t r = 0;
    for (std::size_t i = 0; i < p.num_ineq(); ++i, ++r) {
        const double* src = p.ineq_row(i);
        for (std::size_t j = 0; j < nn; ++j) {
            a[r * nn + j] = -src[j];
        }
        b[r] = -p.ineq_rhs[i];
    }
    for (std::size_t i = 0; i < p.num_eq(); ++i) {
        const double* src = p.eq_row(i);
        for (std::size_t j = 0; j < nn; ++j) {
            a[r * nn + j] = src[j];
            a[(r + 1) * nn + j] = -src[j];
        }
        b[r] = p.eq_rhs[i];
        b[r + 1] = -p.eq_rhs[i];
        r += 2;
    }
    std::vector<double> c(nn);
    for (std::size_t j = 0; j < nn; ++j) {
        c[j] = -p.objective[j];
    }
    DenseSimplex simplex(std::move(a), std::move(b), std::move(c));
    double max_obj = 0.0;
    return simplex.run(x, max_obj, iterations);
}

// Dual orientation for tall problems (many constraint rows, few variables).
// The dual of  min c.v : Ev = e, Gv >= g, v >= 0  is
//   max e.mu + g.lambda : E^T mu + G^T lambda <= c, lambda >= 0, mu free,
// which has only num_vars rows. The original v is recovered as the dual
// prices of those rows, i.e. the slack reduced costs at optimality. With the
// one-bit programs c = 1, so the dual starts feasible at the origin and the
// feasibility phase is skipped entirely.
LpStatus solve_dual_orientation(const LpProblem& p, std::vector<double>& v,
                                int& iterations) {
    const std::size_t rows = p.num_vars;
    const std::size_t cols = p.num_ineq() + 2 * p.num_eq();  // lambda, mu+, mu-
    std::vector<double> a(rows * cols);
    std::vector<double> c(cols);
    for (std::size_t i = 0; i < p.num_ineq(); ++i) {
        const double* src = p.ineq_row(i);
        for (std::size_t j = 0; j < rows; ++j) {
            a[j * cols + i] = src[j];
        }
        c[i] = p.ineq_rhs[i];
    }
    for (std::size_t i = 0; i < p.num_eq(); ++i) {
        const double* src = p.eq_row(i);
        const std::size_t plus = p.num_ineq() + 2 * i;
        for (std::size_t j = 0; j < rows; ++j) {
            a[j * cols + plus] = src[j];
            a[j * cols + plus + 1] = -src[j];
        }
        c[plus] = p.eq_rhs[i];
        c[plus + 1] = -p.eq_rhs[i];
    }
    DenseSimplex simplex(std::move(a), p.objective, std::move(c));
    std::vector<double> w;
    double max_obj = 0.0;
    const LpStatus status = simplex.run(w, max_obj, iterations);
    if (status == LpStatus::Optimal) {
        v = simplex.slack_duals();
        return LpStatus::Optimal;
    }
    if (status == LpStatus::Unbounded) {
        return LpStatus::Infeasible;  // unbounded dual certifies primal infeasibility
    }
    return status;
}

}  // namespace

LpSolution solve_lp(const LpProblem& p, double feas_tol, double opt_tol) {
    validate(p);
    (void)opt_tol;  // optimality is certified against oracles in the tests

    const std::size_t tall_rows = p.num_ineq() + 2 * p.num_eq();
    const bool prefer_dual = tall_rows >= p.num_vars && tall_rows > 64;

    LpSolution out;
    bool solved_via_dual = false;
    if (prefer_dual) {
        const LpStatus status = solve_dual_orientation(p, out.x, out.iterations);
        if (status == LpStatus::Optimal || status == LpStatus::Infeasible) {
            out.status = status;
            solved_via_dual = true;
        }
        // An infeasible dual leaves the primal undecided; fall through.
    }
    if (!solved_via_dual) {
        out.status = solve_primal_orientation(p, out.x, out.iterations);
    }
    if (out.status != LpStatus::Optimal) {
        out.x.clear();
        return out;
    }
    out.objective = kernels::dot(p.objective.data(), out.x.data(), p.num_vars);
    feasibility_residuals(p, out.x, out.max_eq_violation, out.max_ineq_violation);
    if (out.max_eq_violation > feas_tol || out.max_ineq_violation > feas_tol) {
        out.status = LpStatus::NumericalFailure;
    }
    return out;
}

LpProblem formulate_pv(std::span<const double> a, std::size_t m, std::size_t n,
                       const SignVector& y) {
    if (m == 0 || n == 0 || a.size() != m * n) {
        throw DimensionMismatch("formulate_pv: matrix shape does not match m, n");
    }
    if (y.size() != m) {
        throw DimensionMismatch("formulate_pv: sign vector length does not match m");
    }
    LpProblem p;
    p.num_vars = 2 * n;
    p.objective.assign(p.num_vars, 1.0);
    p.ineq_matrix.assign(m * p.num_vars, 0.0);
    p.ineq_rhs.assign(m, 0.0);
    p.eq_matrix.assign(p.num_vars, 0.0);
    p.eq_rhs.assign(1, static_cast<double>(m));
    for (std::size_t i = 0; i < m; ++i) {
        const double sign = static_cast<double>(y.bits[i]);
        const double* arow = a.data() + i * n;
        double* prow = p.ineq_matrix.data() + i * p.num_vars;
        for (std::size_t j = 0; j < n; ++j) {
            const double v = sign * arow[j];
            prow[j] = v;
            prow[n + j] = -v;
            p.eq_matrix[j] += v;
            p.eq_matrix[n + j] -= v;
        }
    }
    return p;
}

LpProblem formulate_pv_augmented(std::span<const double> a, std::size_t m,
                                 std::size_t n, std::span<const double> shifts,
                                 double tau, const SignVector& y) {
    if (m == 0 || n == 0 || a.size() != m * n) {
        throw DimensionMismatch("formulate_pv_augmented: matrix shape does not match m, n");
    }
    if (shifts.size() != m || y.size() != m) {
        throw DimensionMismatch("formulate_pv_augmented: shifts/bits length mismatch");
    }
    if (!(tau > 0.0)) {
        throw InvalidParameter("formulate_pv_augmented: tau must be positive");
    }
    const std::size_t na = n + 1;  // augmented coordinate u rides along
    LpProblem p;
    p.num_vars = 2 * na;
    p.objective.assign(p.num_vars, 1.0);
    p.ineq_matrix.assign(m * p.num_vars, 0.0);
    p.ineq_rhs.assign(m, 0.0);
    p.eq_matrix.assign(p.num_vars, 0.0);
    p.eq_rhs.assign(1, static_cast<double>(m));
    for (std::size_t i = 0; i < m; ++i) {
        const double sign = static_cast<double>(y.bits[i]);
        const double* arow = a.data() + i * n;
        double* prow = p.ineq_matrix.data() + i * p.num_vars;
        for (std::size_t j = 0; j < n; ++j) {
            const double v = sign * arow[j];
            prow[j] = v;
            prow[na + j] = -v;
            p.eq_matrix[j] += v;
            p.eq_matrix[na + j] -= v;
        }
        const double v = sign * shifts[i] / tau;
        prow[n] = v;
        prow[na + n] = -v;
        p.eq_matrix[n] += v;
        p.eq_matrix[na + n] -= v;
    }
    return p;
}

std::string to_text(const LpProblem& p) {
    char buf[32];
    std::string out;
    out += "# obcs lp v1: minimize c.v subject to eq rows, ge rows, v >= 0\n";
    out += "vars " + std::to_string(p.num_vars) + "\n";
    auto append_row = [&](const char* prefix, const double* coeffs, double rhs,
                          const char* relation) {
        out += prefix;
        for (std::size_t j = 0; j < p.num_vars; ++j) {
            std::snprintf(buf, sizeof buf, " %.17g", coeffs[j]);
            out += buf;
        }
        out += " ";
        out += relation;
        std::snprintf(buf, sizeof buf, " %.17g", rhs);
        out += buf;
        out += "\n";
    };
    out += "min";
    for (std::size_t j = 0; j < p.num_vars; ++j) {
        std::snprintf(buf, sizeof buf, " %.17g", p.objective[j]);
        out += buf;
    }
    out += "\n";
    for (std::size_t i = 0; i < p.num_eq(); ++i) {
        append_row("eq", p.eq_row(i), p.eq_rhs[i], "=");
    }
    for (std::size_t i = 0; i < p.num_ineq(); ++i) {
        append_row("ge", p.ineq_row(i), p.ineq_rhs[i], ">=");
    }
    return out;
}

}  // namespace obcs
