#include "obcs/sweep.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "obcs/errors.hpp"
#include "obcs/kernels.hpp"
#include "obcs/parallel.hpp"
#include "obcs/pipeline.hpp"
#include "obcs/rng.hpp"

namespace obcs {

const char* to_string(Method method) {
    switch (method) {
        case Method::PVaug:
            return "PVaug";
        case Method::EDF:
            return "EDF";
        case Method::Combined:
            return "Combined";
    }
    return "unknown";
}

const char* to_string(GridVar var) {
    switch (var) {
        case GridVar::MOverN:
            return "m_over_n";
        case GridVar::Tau:
            return "tau";
    }
    return "unknown";
}

namespace {

double norm_of(std::span<const double> v) {
    return std::sqrt(kernels::sum_squares(v.data(), v.size()));
}

double distance(std::span<const double> a, std::span<const double> b) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        acc += d * d;
    }
    return std::sqrt(acc);
}

struct TrialSeeds {
    std::uint64_t trial;
    std::uint64_t signal;
    std::uint64_t ensemble;
    std::uint64_t split;
};

TrialSeeds derive_seeds(std::uint64_t master, std::size_t grid_index, std::size_t trial) {
    CounterRng stream = CounterRng::from_seed(master)
                            .substream(stream_tag::sweep)
                            .substream(grid_index)
                            .substream(trial);
    TrialSeeds seeds{};
    seeds.trial = stream.next_u64();
    CounterRng trial_root = CounterRng::from_seed(seeds.trial);
    CounterRng sig = trial_root.substream(stream_tag::signal);
    CounterRng ens = trial_root.substream(stream_tag::ensemble);
    CounterRng split = trial_root.substream(stream_tag::norm_batch);
    seeds.signal = sig.next_u64();
    seeds.ensemble = ens.next_u64();
    seeds.split = split.next_u64();
    return seeds;
}

void run_trial(const SweepConfig& cfg, GridVar var, double grid_value,
               std::size_t grid_index, std::size_t trial, TrialRow& row) {
    row.method = cfg.method;
    row.grid_var = var;
    row.grid_value = grid_value;
    row.trial = trial;

    const TrialSeeds seeds = derive_seeds(cfg.master_seed, grid_index, trial);
    row.seed = seeds.trial;

    const double m_over_n = (var == GridVar::MOverN) ? grid_value : cfg.m_over_n;
    const double tau = (var == GridVar::Tau) ? grid_value
                       : (cfg.tau > 0.0 ? cfg.tau : cfg.r);
    const std::size_t m = static_cast<std::size_t>(
        std::llround(m_over_n * static_cast<double>(cfg.n)));

    const auto start = std::chrono::steady_clock::now();

    const SparseSignal signal =
        generate_sparse_signal(cfg.n, cfg.s, cfg.r, cfg.R, seeds.signal);
    const double true_norm = signal.norm();

    switch (cfg.method) {
        case Method::PVaug: {
            const MeasurementEnsemble ensemble = build_ensemble(
                m, cfg.n, ShiftModel::gaussian_dither(tau), seeds.ensemble);
            const SignVector y = quantize(ensemble, signal.values);
            const RecoveryResult rr = recover_augmented(ensemble, y, cfg.tol);
            row.status = to_string(rr.status);
            if (rr.status == SolverStatus::Optimal) {
                row.norm_error = std::abs(norm_of(rr.estimate) - true_norm);
                row.signal_error = distance(rr.estimate, signal.values);
            } else {
                row.failed = true;
            }
            break;
        }
        case Method::EDF: {
            // Norm from the full budget; signal from a fresh half/half split.
            const MeasurementEnsemble ensemble = build_ensemble(
                m, cfg.n, ShiftModel::constant_threshold(tau), seeds.ensemble);
            const SignVector y = quantize(ensemble, signal.values);
            const NormEstimate est = estimate_norm(y, tau);
            if (est.lambda.has_value()) {
                row.norm_error = std::abs(*est.lambda - true_norm);
            } else {
                row.failed = true;
            }
            const RecoveryResult rr = combined_recover(
                signal, SplitPlan::halves(m), tau, seeds.split, cfg.tol);
            if (rr.status == SolverStatus::Optimal) {
                row.signal_error = distance(rr.estimate, signal.values);
            } else {
                row.failed = true;
            }
            if (est.status == EstimateStatus::BelowHalf) {
                row.status = to_string(est.status);
            } else if (rr.status != SolverStatus::Optimal) {
                row.status = to_string(rr.status);
            } else {
                row.status = to_string(est.status);
            }
            break;
        }
        case Method::Combined: {
            const RecoveryResult rr = combined_recover(
                signal, SplitPlan::halves(m), tau, seeds.split, cfg.tol);
            if (rr.norm_estimate.has_value() && rr.norm_estimate->lambda.has_value()) {
                row.norm_error = std::abs(*rr.norm_estimate->lambda - true_norm);
            } else {
                row.failed = true;
            }
            if (rr.status == SolverStatus::Optimal) {
                row.signal_error = distance(rr.estimate, signal.values);
                row.status = to_string(rr.norm_estimate->status);
            } else {
                row.failed = true;
                row.status = to_string(rr.status);
            }
            break;
        }
    }

    if (cfg.record_wall_time) {
        const auto stop = std::chrono::steady_clock::now();
        row.wall_ms =
            std::chrono::duration<double, std::milli>(stop - start).count();
    }
}

SweepReport run_sweep(const SweepConfig& cfg, GridVar var) {
    if (cfg.grid.empty() || cfg.trials == 0) {
        throw InvalidParameter("sweep: grid must be nonempty and trials >= 1");
    }
    for (const double g : cfg.grid) {
        if (!(g > 0.0)) {
            throw InvalidParameter("sweep: grid values must be positive");
        }
    }
    if (var == GridVar::Tau && !(cfg.m_over_n > 0.0)) {
        throw InvalidParameter("sweep: m_over_n must be positive");
    }

    SweepReport report;
    report.config = cfg;
    report.grid_var = var;
    report.rows.resize(cfg.grid.size() * cfg.trials);

    parallel_for(report.rows.size(), cfg.workers, [&](std::size_t k) {
        const std::size_t grid_index = k / cfg.trials;
        const std::size_t trial = k % cfg.trials;
        run_trial(cfg, var, cfg.grid[grid_index], grid_index, trial,
                  report.rows[k]);
    });

    report.aggregates = compute_aggregates(report.rows);
    return report;
}

struct Accumulator {
    std::size_t count = 0;
    double sum = 0.0;
    double sum_sq = 0.0;

    void add(double v) {
        ++count;
        sum += v;
        sum_sq += v * v;
    }
    std::optional<double> mean() const {
        if (count == 0) {
            return std::nullopt;
        }
        return sum / static_cast<double>(count);
    }
    std::optional<double> sample_std() const {
        if (count == 0) {
            return std::nullopt;
        }
        if (count == 1) {
            return 0.0;
        }
        const double n = static_cast<double>(count);
        const double var = (sum_sq - sum * sum / n) / (n - 1.0);
        return var > 0.0 ? std::sqrt(var) : 0.0;
    }
};

void format_double(std::string& out, double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out += buf;
}

void append_optional(std::string& out, const std::optional<double>& v) {
    if (v.has_value()) {
        format_double(out, *v);
    }
}

}  // namespace

SweepReport run_m_sweep(const SweepConfig& config) {
    return run_sweep(config, GridVar::MOverN);
}

SweepReport run_tau_sweep(const SweepConfig& config) {
    return run_sweep(config, GridVar::Tau);
}

std::vector<AggregateRow> compute_aggregates(const std::vector<TrialRow>& rows) {
    std::vector<AggregateRow> out;
    std::size_t i = 0;
    while (i < rows.size()) {
        std::size_t j = i;
        Accumulator norm_acc, signal_acc;
        AggregateRow agg;
        agg.method = rows[i].method;
        agg.grid_var = rows[i].grid_var;
        agg.grid_value = rows[i].grid_value;
        while (j < rows.size() && rows[j].grid_value == agg.grid_value &&
               rows[j].method == agg.method) {
            const TrialRow& row = rows[j];
            ++agg.trials;
            if (row.failed) {
                ++agg.failures;
            }
            if (row.norm_error.has_value()) {
                norm_acc.add(*row.norm_error);
            }
            if (row.signal_error.has_value()) {
                signal_acc.add(*row.signal_error);
            }
            ++j;
        }
        agg.mean_norm_error = norm_acc.mean();
        agg.std_norm_error = norm_acc.sample_std();
        agg.mean_signal_error = signal_acc.mean();
        agg.std_signal_error = signal_acc.sample_std();
        out.push_back(std::move(agg));
        i = j;
    }
    return out;
}

void write_report_csv(std::ostream& os, const SweepReport& report) {
    os << "method,grid_var,grid_value,trial,seed,norm_error,signal_error,status,"
          "wall_ms\n";
    std::string line;
    for (const TrialRow& row : report.rows) {
        line.clear();
        line += to_string(row.method);
        line += ',';
        line += to_string(row.grid_var);
        line += ',';
        format_double(line, row.grid_value);
        line += ',';
        line += std::to_string(row.trial);
        line += ',';
        line += std::to_string(row.seed);
        line += ',';
        append_optional(line, row.norm_error);
        line += ',';
        append_optional(line, row.signal_error);
        line += ',';
        line += row.status;
        line += ',';
        format_double(line, row.wall_ms);
        line += '\n';
        os << line;
    }
}

void write_aggregates_csv(std::ostream& os, const SweepReport& report) {
    os << "method,grid_var,grid_value,trials,failures,mean_norm_error,"
          "std_norm_error,mean_signal_error,std_signal_error\n";
    std::string line;
    for (const AggregateRow& agg : report.aggregates) {
        line.clear();
        line += to_string(agg.method);
        line += ',';
        line += to_string(agg.grid_var);
        line += ',';
        format_double(line, agg.grid_value);
        line += ',';
        line += std::to_string(agg.trials);
        line += ',';
        line += std::to_string(agg.failures);
        line += ',';
        append_optional(line, agg.mean_norm_error);
        line += ',';
        append_optional(line, agg.std_norm_error);
        line += ',';
        append_optional(line, agg.mean_signal_error);
        line += ',';
        append_optional(line, agg.std_signal_error);
        line += '\n';
        os << line;
    }
}

PlanOutput plan_sample_size(const PlanGoal& goal) {
    PlanOutput out;
    switch (goal.kind) {
        case PlanGoal::Kind::EdfFixed: {
            const std::size_t m =
                sample_size_fixed_signal(goal.r, goal.R, goal.delta, goal.epsilon);
            out.counts.emplace_back("m", m);
            out.formula = "m = ceil(4 pi e^2 (R^4/r^2) delta^-2 log(2/epsilon))";
            break;
        }
        case PlanGoal::Kind::EdfUniform: {
            const std::size_t m = sample_size_uniform(goal.r, goal.R, goal.delta,
                                                      goal.n, goal.s, goal.c1);
            out.counts.emplace_back("m", m);
            out.formula =
                "m = ceil(C1 (R^4/r^2) delta^-2 s log(n R^2/(s delta r)))  "
                "[threshold tau = 3r/5; C1 not pinned by the analysis]";
            break;
        }
        case PlanGoal::Kind::PvAug: {
            const double tau = goal.tau > 0.0 ? goal.tau : goal.R;
            if (!(goal.delta > 0.0) || !(goal.delta < std::min(1.0, tau / 2.0))) {
                throw InvalidParameter(
                    "plan pv-aug: requires 0 < delta < min(1, tau/2)");
            }
            if (goal.s == 0 || goal.s > goal.n) {
                throw InvalidParameter("plan pv-aug: requires 0 < s <= n");
            }
            const double log_term =
                std::log(2.0 * static_cast<double>(goal.n) / static_cast<double>(goal.s));
            const double root = std::sqrt(goal.R * goal.R + tau * tau) / goal.delta;
            const double m = goal.c * std::pow(root, 5.0) *
                             static_cast<double>(goal.s) * log_term * log_term;
            out.counts.emplace_back("m", static_cast<std::size_t>(std::ceil(m)));
            out.formula =
                "m = ceil(C (sqrt(R^2+tau^2)/delta)^5 s log^2(2n/s))  "
                "[C not pinned by the analysis]";
            break;
        }
        case PlanGoal::Kind::Combined: {
            if (!(goal.epsilon > 0.0) || !(goal.epsilon < 1.0)) {
                throw InvalidParameter("plan combined: requires 0 < epsilon < 1");
            }
            if (goal.s == 0 || goal.s > goal.n) {
                throw InvalidParameter("plan combined: requires 0 < s <= n");
            }
            if (!(goal.delta > 0.0)) {
                throw InvalidParameter("plan combined: requires delta > 0");
            }
            if (!(goal.r > 0.0) || !(goal.r <= goal.R)) {
                throw InvalidParameter("plan combined: requires 0 < r <= R");
            }
            const double four_pi_e2 = 4.0 * 3.14159265358979323846 * std::exp(2.0);
            const double m1 = four_pi_e2 * std::pow(goal.R, 4.0) / (goal.r * goal.r) /
                              (goal.delta * goal.delta) * std::log(4.0 / goal.epsilon);
            const double log_ns =
                std::log(static_cast<double>(goal.n) / static_cast<double>(goal.s));
            const double m2 = goal.c0 * std::pow(goal.R / goal.delta, 5.0) *
                              (static_cast<double>(goal.s) * log_ns * log_ns +
                               std::log(goal.c / goal.epsilon));
            out.counts.emplace_back("m1", static_cast<std::size_t>(std::ceil(m1)));
            out.counts.emplace_back(
                "m2", static_cast<std::size_t>(std::ceil(std::max(m2, 1.0))));
            out.formula =
                "m1 = ceil(4 pi e^2 (R^4/r^2) delta^-2 log(4/epsilon))  [norm batch]; "
                "m2 = ceil(C0 delta^-5 R^5 (s log^2(n/s) + log(C/epsilon)))  "
                "[direction batch; C0, C not pinned by the analysis]";
            break;
        }
    }
    return out;
}

}  // namespace obcs
