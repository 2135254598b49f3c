#include "obcs/pipeline.hpp"

#include "obcs/errors.hpp"
#include "obcs/rng.hpp"

namespace obcs {

SplitPlan SplitPlan::halves(std::size_t m_total) {
    SplitPlan plan;
    plan.m_direction = m_total / 2;
    plan.m_norm = m_total - plan.m_direction;
    return plan;
}

RecoveryResult combined_recover(const SparseSignal& signal, const SplitPlan& plan,
                                double tau, std::uint64_t seed,
                                const RecoveryTolerances& tol) {
    return combined_recover(signal.values, signal.dimension(), plan, tau, seed, tol);
}

RecoveryResult combined_recover(std::span<const double> x, std::size_t n,
                                const SplitPlan& plan, double tau, std::uint64_t seed,
                                const RecoveryTolerances& tol) {
    if (plan.m_norm == 0 || plan.m_direction == 0) {
        throw InvalidParameter("combined_recover: both batch sizes must be positive");
    }
    if (x.size() != n) {
        throw DimensionMismatch("combined_recover: signal length does not match n");
    }
    const CounterRng root = CounterRng::from_seed(seed);
    CounterRng norm_stream = root.substream(stream_tag::norm_batch);
    CounterRng direction_stream = root.substream(stream_tag::direction_batch);
    const std::uint64_t norm_seed = norm_stream.next_u64();
    const std::uint64_t direction_seed = direction_stream.next_u64();

    const MeasurementEnsemble norm_ensemble =
        build_ensemble(plan.m_norm, n, ShiftModel::constant_threshold(tau), norm_seed);
    const SignVector y_norm = quantize(norm_ensemble, x);
    const NormEstimate norm_est = estimate_norm(y_norm, tau);

    const MeasurementEnsemble direction_ensemble =
        build_ensemble(plan.m_direction, n, ShiftModel::zero(), direction_seed);
    const SignVector y_direction = quantize(direction_ensemble, x);
    RecoveryResult direction = recover_direction(direction_ensemble, y_direction, tol);

    RecoveryResult out = std::move(direction);
    out.norm_estimate = norm_est;
    out.t_sharp.reset();
    if (out.status != SolverStatus::Optimal) {
        out.estimate.clear();
        return out;
    }
    if (!norm_est.lambda.has_value()) {
        out.status = SolverStatus::NormUnresolved;
        out.note = std::string("norm estimator: ") + to_string(norm_est.status);
        out.estimate.clear();
        return out;
    }
    const double lambda = *norm_est.lambda;
    for (double& v : out.estimate) {
        v *= lambda;
    }
    return out;
}

}  // namespace obcs
