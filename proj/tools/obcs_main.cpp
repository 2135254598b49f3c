// Command-line harness: measurement simulation, norm estimation, recovery,
// the two benchmark sweeps and the sample-size planner.

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "obcs/errors.hpp"
#include "obcs/kernels.hpp"
#include "obcs/lp.hpp"
#include "obcs/pipeline.hpp"
#include "obcs/recovery.hpp"
#include "obcs/sweep.hpp"

namespace {

using namespace obcs;

struct CommonParams {
    std::size_t n = 300;
    std::size_t s = 10;
    double r = 10.0;
    double R = 20.0;
    std::size_t trials = 40;
};

void add_preset_flag(CLI::App* cmd, bool& fast) {
    cmd->add_flag("--fast", fast,
                  "small preset (n=60, s=4, 10 trials) instead of the full "
                  "n=300, s=10, 40-trial default");
}

void apply_preset(CommonParams& p, bool fast) {
    if (fast) {
        p.n = 60;
        p.s = 4;
        p.trials = 10;
    }
}

void add_common(CLI::App* cmd, CommonParams& p) {
    cmd->add_option("--n", p.n, "signal dimension");
    cmd->add_option("--s", p.s, "sparsity budget");
    cmd->add_option("--r", p.r, "lower norm bound");
    cmd->add_option("--R", p.R, "upper norm bound");
}

std::vector<double> default_tau_grid(double r, double R) {
    const double mid = 0.5 * (r + R);  // median norm of the uniform annulus draw
    const double f[] = {0.1, 1.0 / 3.0, 2.0 / 3.0, 1.0, 4.0 / 3.0, 2.0, 3.0, 4.0};
    std::vector<double> grid;
    for (const double v : f) {
        grid.push_back(v * mid);
    }
    return grid;
}

std::string aggregates_path(const std::string& out) {
    const std::string suffix = ".csv";
    if (out.size() > suffix.size() &&
        out.compare(out.size() - suffix.size(), suffix.size(), suffix) == 0) {
        return out.substr(0, out.size() - suffix.size()) + ".agg.csv";
    }
    return out + ".agg.csv";
}

void write_sweep_outputs(const SweepReport& report, const std::string& out) {
    std::ofstream rows(out, std::ios::binary);
    if (!rows) {
        throw InvalidParameter("cannot open output file: " + out);
    }
    write_report_csv(rows, report);
    std::ofstream aggs(aggregates_path(out), std::ios::binary);
    write_aggregates_csv(aggs, report);
    std::printf("wrote %s and %s\n", out.c_str(), aggregates_path(out).c_str());
    for (const AggregateRow& agg : report.aggregates) {
        std::printf("  %s=%-10.6g trials=%zu failures=%zu", to_string(agg.grid_var),
                    agg.grid_value, agg.trials, agg.failures);
        if (agg.mean_norm_error) {
            std::printf(" norm_err=%.6g", *agg.mean_norm_error);
        }
        if (agg.mean_signal_error) {
            std::printf(" signal_err=%.6g", *agg.mean_signal_error);
        }
        std::printf("\n");
    }
}

Method parse_method(const std::string& name) {
    if (name == "pvaug" || name == "PVaug") return Method::PVaug;
    if (name == "edf" || name == "EDF") return Method::EDF;
    if (name == "combined" || name == "Combined") return Method::Combined;
    throw InvalidParameter("unknown method: " + name +
                           " (expected pvaug, edf or combined)");
}

int run_simulate(std::size_t n, std::size_t m, std::size_t s, double r, double R,
                 const std::string& shift_name, double tau, std::uint64_t seed,
                 const std::string& out, const std::string& signal_out,
                 const std::string& bits_out) {
    ShiftModel shift = ShiftModel::zero();
    if (shift_name == "constant") {
        shift = ShiftModel::constant_threshold(tau);
    } else if (shift_name == "dither") {
        shift = ShiftModel::gaussian_dither(tau);
    } else if (shift_name != "zero") {
        throw InvalidParameter("unknown shift model: " + shift_name);
    }
    const SparseSignal x = generate_sparse_signal(n, s, r, R, seed);
    const MeasurementEnsemble e = build_ensemble(m, n, shift, seed);
    const SignVector y = quantize(e, x.values);
    if (!out.empty()) {
        std::ofstream os(out, std::ios::binary);
        if (!os) {
            throw InvalidParameter("cannot open output file: " + out);
        }
        write_ensemble_csv(os, e);
    }
    if (!signal_out.empty()) {
        std::ofstream os(signal_out, std::ios::binary);
        write_signal_csv(os, x);
    }
    if (!bits_out.empty()) {
        std::ofstream os(bits_out, std::ios::binary);
        write_bits_csv(os, y);
    }
    std::printf("m=%zu n=%zu ||x||=%.17g f_m=%.17g kernels=%s\n", m, n, x.norm(),
                empirical_cdf(y), kernels::level_name(kernels::active_level()));
    return 0;
}

int run_estimate_norm(const std::string& bits_in, std::size_t n, std::size_t m,
                      std::size_t s, double r, double R, double tau,
                      std::uint64_t seed) {
    SignVector y;
    double true_norm = -1.0;
    if (!bits_in.empty()) {
        std::ifstream is(bits_in);
        if (!is) {
            throw InvalidParameter("cannot open bits file: " + bits_in);
        }
        y = read_bits_csv(is);
    } else {
        const SparseSignal x = generate_sparse_signal(n, s, r, R, seed);
        true_norm = x.norm();
        y = quantize_streaming(m, n, ShiftModel::constant_threshold(tau), seed,
                               x.values);
    }
    const NormEstimate est = estimate_norm(y, tau);
    std::printf("m=%zu tau=%.17g f_m=%.17g status=%s", est.m, est.tau, est.f_m,
                to_string(est.status));
    if (est.lambda) {
        std::printf(" lambda=%.17g", *est.lambda);
    }
    if (true_norm >= 0.0) {
        std::printf(" true_norm=%.17g", true_norm);
        if (est.lambda) {
            std::printf(" error=%.17g", std::abs(*est.lambda - true_norm));
        }
    }
    std::printf("\n");
    return est.lambda ? 0 : 3;
}

int run_recover(const std::string& method, std::size_t n, std::size_t m,
                std::size_t s, double r, double R, double tau, std::uint64_t seed,
                const std::string& export_lp) {
    const SparseSignal x = generate_sparse_signal(n, s, r, R, seed);
    RecoveryResult rr;
    if (method == "aug") {
        const MeasurementEnsemble e =
            build_ensemble(m, n, ShiftModel::gaussian_dither(tau), seed);
        const SignVector y = quantize(e, x.values);
        if (!export_lp.empty()) {
            std::ofstream os(export_lp, std::ios::binary);
            os << to_text(formulate_pv_augmented(e.matrix, m, n, e.shifts, tau, y));
        }
        rr = recover_augmented(e, y);
    } else if (method == "direction") {
        const MeasurementEnsemble e = build_ensemble(m, n, ShiftModel::zero(), seed);
        const SignVector y = quantize(e, x.values);
        if (!export_lp.empty()) {
            std::ofstream os(export_lp, std::ios::binary);
            os << to_text(formulate_pv(e.matrix, m, n, y));
        }
        rr = recover_direction(e, y);
    } else if (method == "combined") {
        rr = combined_recover(x, SplitPlan::halves(m), tau, seed);
    } else {
        throw InvalidParameter("unknown recover method: " + method +
                               " (expected aug, direction or combined)");
    }

    std::printf("status=%s objective=%.17g eq_viol=%.3g ineq_viol=%.3g",
                to_string(rr.status), rr.objective, rr.max_eq_violation,
                rr.max_ineq_violation);
    if (rr.t_sharp) {
        std::printf(" t_sharp=%.17g", *rr.t_sharp);
    }
    if (!rr.note.empty()) {
        std::printf(" note=\"%s\"", rr.note.c_str());
    }
    std::printf("\n");
    if (rr.status == SolverStatus::Optimal && !rr.estimate.empty()) {
        double err_sq = 0.0, est_norm_sq = 0.0;
        for (std::size_t j = 0; j < x.values.size(); ++j) {
            const double d = rr.estimate[j] - x.values[j];
            err_sq += d * d;
            est_norm_sq += rr.estimate[j] * rr.estimate[j];
        }
        std::printf("true_norm=%.17g est_norm=%.17g signal_error=%.17g\n", x.norm(),
                    std::sqrt(est_norm_sq), std::sqrt(err_sq));
    }
    return rr.status == SolverStatus::Optimal ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"one-bit compressive sensing with norm estimation"};
    app.require_subcommand(1);

    auto* sim = app.add_subcommand("simulate",
                                   "draw a sparse signal, a Gaussian ensemble and "
                                   "one-bit measurements; optionally export CSV");
    CommonParams sim_p;
    std::size_t sim_m = 1800;
    std::string sim_shift = "constant";
    double sim_tau = 10.0;
    std::uint64_t sim_seed = 1;
    std::string sim_out, sim_signal_out, sim_bits_out;
    bool sim_fast = false;
    add_common(sim, sim_p);
    sim->add_option("--m", sim_m, "number of measurements");
    sim->add_option("--shift", sim_shift, "shift model: constant, dither or zero");
    sim->add_option("--tau", sim_tau, "threshold / dither scale");
    sim->add_option("--seed", sim_seed, "master seed");
    sim->add_option("--out", sim_out, "ensemble CSV output path");
    sim->add_option("--signal-out", sim_signal_out, "signal CSV output path");
    sim->add_option("--bits-out", sim_bits_out, "bits CSV output path");
    add_preset_flag(sim, sim_fast);

    auto* est = app.add_subcommand(
        "estimate-norm", "EDF norm estimate from simulated or imported bits");
    CommonParams est_p;
    std::size_t est_m = 10000;
    double est_tau = 10.0;
    std::uint64_t est_seed = 1;
    std::string est_bits_in;
    bool est_fast = false;
    add_common(est, est_p);
    est->add_option("--m", est_m, "number of measurements (simulated path)");
    est->add_option("--tau", est_tau, "constant threshold");
    est->add_option("--seed", est_seed, "master seed");
    est->add_option("--bits-in", est_bits_in, "read bits (+1/-1 per line) instead");
    add_preset_flag(est, est_fast);

    auto* rec = app.add_subcommand("recover",
                                   "one-shot recovery on a simulated instance");
    CommonParams rec_p;
    std::string rec_method = "aug";
    std::size_t rec_m = 1800;
    double rec_tau = 10.0;
    std::uint64_t rec_seed = 1;
    std::string rec_export;
    bool rec_fast = false;
    add_common(rec, rec_p);
    rec->add_option("--method", rec_method, "aug, direction or combined");
    rec->add_option("--m", rec_m, "number of measurements");
    rec->add_option("--tau", rec_tau, "threshold / dither scale");
    rec->add_option("--seed", rec_seed, "master seed");
    rec->add_option("--export-lp", rec_export, "write the LP in plain text");
    add_preset_flag(rec, rec_fast);

    auto* swm = app.add_subcommand("sweep-m", "error versus m/n at fixed threshold");
    auto* swt = app.add_subcommand("sweep-tau", "error versus threshold at fixed m/n");
    struct SweepCli {
        CommonParams p;
        std::string method = "pvaug";
        std::vector<double> grid;
        std::uint64_t seed = 1;
        double tau = 0.0;
        double m_over_n = 6.0;
        std::string out;
        bool timing = false;
        bool fast = false;
        unsigned workers = 0;
    };
    SweepCli swm_cli, swt_cli;
    swm_cli.out = "sweep_m.csv";
    swt_cli.out = "sweep_tau.csv";
    for (auto [cmd, cli] : {std::pair{swm, &swm_cli}, std::pair{swt, &swt_cli}}) {
        add_common(cmd, cli->p);
        cmd->add_option("--trials", cli->p.trials, "trials per grid point");
        cmd->add_option("--method", cli->method, "pvaug, edf or combined");
        cmd->add_option("--grid", cli->grid, "grid values")->delimiter(',');
        cmd->add_option("--seed", cli->seed, "master seed");
        cmd->add_option("--out", cli->out, "per-trial CSV path (aggregates go to "
                                           "the .agg.csv sibling)");
        cmd->add_flag("--timing", cli->timing,
                      "record wall-clock per trial (makes reports nondeterministic)");
        cmd->add_option("--workers", cli->workers,
                        "worker threads (0 = OBCS_WORKERS env or all cores)");
        add_preset_flag(cmd, cli->fast);
    }
    swm->add_option("--tau", swm_cli.tau, "fixed threshold (default: r)");
    swt->add_option("--m-over-n", swt_cli.m_over_n, "fixed budget (default 6)");

    auto* plan = app.add_subcommand("plan", "sample-size calculators");
    std::string plan_method = "edf-fixed";
    PlanGoal goal;
    plan->add_option("--method", plan_method,
                     "edf-fixed, edf-uniform, pv-aug or combined");
    plan->add_option("--delta", goal.delta, "target accuracy");
    plan->add_option("--epsilon", goal.epsilon, "failure probability");
    plan->add_option("--r", goal.r, "lower norm bound");
    plan->add_option("--R", goal.R, "upper norm bound");
    plan->add_option("--n", goal.n, "dimension");
    plan->add_option("--s", goal.s, "sparsity");
    plan->add_option("--tau", goal.tau, "pv-aug dither scale (default R)");
    plan->add_option("--C", goal.c, "abstract constant C");
    plan->add_option("--C0", goal.c0, "abstract constant C0");
    plan->add_option("--C1", goal.c1, "abstract constant C1");

    for (CLI::App* cmd : app.get_subcommands({})) {
        cmd->set_config("--config", "", "plain key=value configuration file; "
                                        "command-line flags override it");
    }

    CLI11_PARSE(app, argc, argv);

    try {
        if (sim->parsed()) {
            apply_preset(sim_p, sim_fast);
            return run_simulate(sim_p.n, sim_m, sim_p.s, sim_p.r, sim_p.R, sim_shift,
                                sim_tau, sim_seed, sim_out, sim_signal_out,
                                sim_bits_out);
        }
        if (est->parsed()) {
            apply_preset(est_p, est_fast);
            return run_estimate_norm(est_bits_in, est_p.n, est_m, est_p.s, est_p.r,
                                     est_p.R, est_tau, est_seed);
        }
        if (rec->parsed()) {
            apply_preset(rec_p, rec_fast);
            return run_recover(rec_method, rec_p.n, rec_m, rec_p.s, rec_p.r, rec_p.R,
                               rec_tau, rec_seed, rec_export);
        }
        for (auto [cmd, cli, is_m] : {std::tuple{swm, &swm_cli, true},
                                      std::tuple{swt, &swt_cli, false}}) {
            if (!cmd->parsed()) {
                continue;
            }
            apply_preset(cli->p, cli->fast);
            SweepConfig cfg;
            cfg.n = cli->p.n;
            cfg.s = cli->p.s;
            cfg.r = cli->p.r;
            cfg.R = cli->p.R;
            cfg.trials = cli->p.trials;
            cfg.method = parse_method(cli->method);
            cfg.master_seed = cli->seed;
            cfg.tau = cli->tau;
            cfg.m_over_n = cli->m_over_n;
            cfg.record_wall_time = cli->timing;
            cfg.workers = cli->workers;
            if (is_m) {
                cfg.grid = cli->grid.empty() ? std::vector<double>{1.0, 2.0, 4.0, 6.0}
                                             : cli->grid;
                write_sweep_outputs(run_m_sweep(cfg), cli->out);
            } else {
                cfg.grid = cli->grid.empty() ? default_tau_grid(cfg.r, cfg.R)
                                             : cli->grid;
                write_sweep_outputs(run_tau_sweep(cfg), cli->out);
            }
            return 0;
        }
        if (plan->parsed()) {
            if (plan_method == "edf-fixed") {
                goal.kind = PlanGoal::Kind::EdfFixed;
            } else if (plan_method == "edf-uniform") {
                goal.kind = PlanGoal::Kind::EdfUniform;
            } else if (plan_method == "pv-aug") {
                goal.kind = PlanGoal::Kind::PvAug;
            } else if (plan_method == "combined") {
                goal.kind = PlanGoal::Kind::Combined;
            } else {
                throw InvalidParameter("unknown plan method: " + plan_method);
            }
            const PlanOutput out = plan_sample_size(goal);
            std::printf("%s\n", out.formula.c_str());
            for (const auto& [name, count] : out.counts) {
                std::printf("%s = %zu\n", name.c_str(), count);
            }
            return 0;
        }
    } catch (const Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 0;
}
