#pragma once

// Monte Carlo harness: error versus measurement budget (m/n grid) and versus
// threshold (tau grid) for the augmented-program, EDF and split estimators,
// with deterministic seeded trials and CSV reports.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "obcs/recovery.hpp"

namespace obcs {

enum class Method { PVaug, EDF, Combined };
enum class GridVar { MOverN, Tau };

const char* to_string(Method method);
const char* to_string(GridVar var);

struct SweepConfig {
    std::size_t n = 300;
    std::size_t s = 10;
    double r = 10.0;
    double R = 20.0;
    Method method = Method::PVaug;
    std::vector<double> grid;  // m/n values or tau values depending on the sweep
    std::size_t trials = 40;
    std::uint64_t master_seed = 1;
    double tau = 0.0;        // fixed threshold for m-sweeps; 0 means "use r"
    double m_over_n = 6.0;   // fixed budget for tau-sweeps
    RecoveryTolerances tol;
    bool record_wall_time = false;  // off by default so reports are byte-stable
    unsigned workers = 0;           // 0 = OBCS_WORKERS env or hardware threads
};

struct TrialRow {
    Method method;
    GridVar grid_var;
    double grid_value = 0.0;
    std::size_t trial = 0;
    std::uint64_t seed = 0;
    std::optional<double> norm_error;    // |estimated norm - ||x|||
    std::optional<double> signal_error;  // ||estimate - x||
    std::string status;
    bool failed = false;  // some requested output was not produced
    double wall_ms = 0.0;
};

struct AggregateRow {
    Method method;
    GridVar grid_var;
    double grid_value = 0.0;
    std::size_t trials = 0;
    std::size_t failures = 0;
    std::optional<double> mean_norm_error, std_norm_error;
    std::optional<double> mean_signal_error, std_signal_error;
};

struct SweepReport {
    SweepConfig config;
    GridVar grid_var;
    std::vector<TrialRow> rows;          // grid-major, then trial
    std::vector<AggregateRow> aggregates;  // one per grid point
};

/// Error versus measurement budget; m = round(grid_value * n) per point,
/// threshold held at config.tau (default r).
SweepReport run_m_sweep(const SweepConfig& config);

/// Error versus threshold; m = round(config.m_over_n * n) held fixed. PVaug
/// draws shifts ~ N(0, tau^2); EDF/Combined use the constant threshold tau.
SweepReport run_tau_sweep(const SweepConfig& config);

/// Aggregates recomputed from rows; run_* store exactly this.
std::vector<AggregateRow> compute_aggregates(const std::vector<TrialRow>& rows);

/// Per-trial CSV. Header (bit-exact):
///   method,grid_var,grid_value,trial,seed,norm_error,signal_error,status,wall_ms
void write_report_csv(std::ostream& os, const SweepReport& report);

/// Aggregate CSV (written alongside with suffix .agg.csv). Header:
///   method,grid_var,grid_value,trials,failures,mean_norm_error,
///   std_norm_error,mean_signal_error,std_signal_error
void write_aggregates_csv(std::ostream& os, const SweepReport& report);

/// Measurement-budget calculators with the formula echoed, for the CLI.
struct PlanGoal {
    enum class Kind { EdfFixed, EdfUniform, PvAug, Combined };
    Kind kind = Kind::EdfFixed;
    double delta = 1.0;
    double epsilon = 0.05;
    double r = 10.0;
    double R = 20.0;
    std::size_t n = 300;
    std::size_t s = 10;
    double tau = 0.0;  // PvAug threshold; 0 means "use R"
    double c = 1.0;    // abstract constants, not pinned down by the analysis
    double c0 = 1.0;
    double c1 = 1.0;
};

struct PlanOutput {
    std::vector<std::pair<std::string, std::size_t>> counts;  // name -> m
    std::string formula;
};

PlanOutput plan_sample_size(const PlanGoal& goal);

}  // namespace obcs
