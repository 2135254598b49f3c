#include "obcs/measurement.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <numeric>
#include <ostream>
#include <string>

#include "obcs/errors.hpp"
#include "obcs/kernels.hpp"
#include "obcs/parallel.hpp"

namespace obcs {

namespace {

void validate_shift(const ShiftModel& shift) {
    if (shift.kind == ShiftKind::ConstantThreshold && !(shift.tau > 0.0)) {
        throw InvalidParameter("constant threshold requires tau > 0");
    }
    if (shift.kind == ShiftKind::GaussianDither && shift.tau < 0.0) {
        throw InvalidParameter("dither scale tau must be nonnegative");
    }
}

double shift_at(const ShiftModel& shift, const CounterRng& shift_root, std::size_t i) {
    if (shift.kind == ShiftKind::ConstantThreshold) {
        return -shift.tau;
    }
    CounterRng rng = shift_root.substream(i);
    return shift.tau * rng.next_gaussian();
}

}  // namespace

double SparseSignal::norm() const {
    return std::sqrt(kernels::sum_squares(values.data(), values.size()));
}

bool MeasurementEnsemble::zero_shifts() const {
    return std::all_of(shifts.begin(), shifts.end(), [](double b) { return b == 0.0; });
}

SparseSignal generate_sparse_signal(std::size_t n, std::size_t s, double r, double R,
                                    std::uint64_t seed) {
    if (s == 0 || s > n || !(r > 0.0) || !(r <= R)) {
        throw InvalidDimension("generate_sparse_signal: need 0 < s <= n and 0 < r <= R");
    }
    CounterRng rng = CounterRng::from_seed(seed).substream(stream_tag::signal);

    // Uniform size-s support via partial Fisher-Yates.
    std::vector<std::size_t> indices(n);
    std::iota(indices.begin(), indices.end(), std::size_t{0});
    for (std::size_t i = 0; i < s; ++i) {
        const std::size_t j = i + rng.next_below(n - i);
        std::swap(indices[i], indices[j]);
    }
    std::vector<std::size_t> support(indices.begin(), indices.begin() + s);
    std::sort(support.begin(), support.end());

    SparseSignal signal;
    signal.values.assign(n, 0.0);
    signal.support = std::move(support);
    signal.sparsity_budget = s;
    signal.norm_lower = r;
    signal.norm_upper = R;

    double norm_sq = 0.0;
    do {
        norm_sq = 0.0;
        for (const std::size_t idx : signal.support) {
            const double g = rng.next_gaussian();
            signal.values[idx] = g;
            norm_sq += g * g;
        }
    } while (norm_sq == 0.0);

    const double target = r + (R - r) * rng.next_unit();
    const double factor = target / std::sqrt(norm_sq);
    for (const std::size_t idx : signal.support) {
        signal.values[idx] *= factor;
    }
    return signal;
}

MeasurementEnsemble build_ensemble(std::size_t m, std::size_t n, ShiftModel shift,
                                   std::uint64_t seed) {
    if (m == 0 || n == 0) {
        throw InvalidDimension("build_ensemble: m and n must be positive");
    }
    validate_shift(shift);

    MeasurementEnsemble ensemble;
    ensemble.rows = m;
    ensemble.cols = n;
    ensemble.shift = shift;
    ensemble.seed = seed;
    ensemble.matrix.resize(m * n);
    ensemble.shifts.resize(m);

    const CounterRng root = CounterRng::from_seed(seed);
    const CounterRng matrix_root = root.substream(stream_tag::matrix);
    const CounterRng shift_root = root.substream(stream_tag::shifts);

    double* data = ensemble.matrix.data();
    double* shifts = ensemble.shifts.data();
    parallel_for(m, 0, [&](std::size_t i) {
        CounterRng row_rng = matrix_root.substream(i);
        row_rng.fill_gaussian(data + i * n, n);
        shifts[i] = shift_at(shift, shift_root, i);
    });
    return ensemble;
}

SignVector quantize(const MeasurementEnsemble& ensemble, std::span<const double> x) {
    if (x.size() != ensemble.cols) {
        throw DimensionMismatch("quantize: signal length does not match ensemble columns");
    }
    const std::size_t m = ensemble.rows;
    std::vector<double> t(m);
    for (std::size_t i = 0; i < m; ++i) {
        t[i] = kernels::dot(ensemble.row(i), x.data(), ensemble.cols) + ensemble.shifts[i];
    }
    SignVector y;
    y.bits.resize(m);
    kernels::sign_bits(t.data(), y.bits.data(), m);
    return y;
}

SignVector quantize_streaming(std::size_t m, std::size_t n, ShiftModel shift,
                              std::uint64_t seed, std::span<const double> x,
                              unsigned workers) {
    if (m == 0 || n == 0) {
        throw InvalidDimension("quantize_streaming: m and n must be positive");
    }
    if (x.size() != n) {
        throw DimensionMismatch("quantize_streaming: signal length does not match n");
    }
    validate_shift(shift);

    const CounterRng root = CounterRng::from_seed(seed);
    const CounterRng matrix_root = root.substream(stream_tag::matrix);
    const CounterRng shift_root = root.substream(stream_tag::shifts);

    SignVector y;
    y.bits.resize(m);
    std::int8_t* bits = y.bits.data();

    constexpr std::size_t kBlock = 1024;
    const std::size_t blocks = (m + kBlock - 1) / kBlock;
    parallel_for(blocks, workers, [&](std::size_t blk) {
        std::vector<double> buffer(n);
        const std::size_t begin = blk * kBlock;
        const std::size_t end = std::min(begin + kBlock, m);
        for (std::size_t i = begin; i < end; ++i) {
            CounterRng row_rng = matrix_root.substream(i);
            row_rng.fill_gaussian(buffer.data(), n);
            const double t =
                kernels::dot(buffer.data(), x.data(), n) + shift_at(shift, shift_root, i);
            bits[i] = (t >= 0.0) ? std::int8_t{1} : std::int8_t{-1};
        }
    });
    return y;
}

void write_ensemble_csv(std::ostream& os, const MeasurementEnsemble& ensemble) {
    char buf[32];
    os << "# obcs ensemble m=" << ensemble.rows << " n=" << ensemble.cols << " shift="
       << (ensemble.shift.kind == ShiftKind::GaussianDither ? "dither" : "constant")
       << " tau=";
    std::snprintf(buf, sizeof buf, "%.17g", ensemble.shift.tau);
    os << buf << " seed=" << ensemble.seed << "\n";
    for (std::size_t i = 0; i < ensemble.rows; ++i) {
        const double* row = ensemble.row(i);
        for (std::size_t j = 0; j < ensemble.cols; ++j) {
            std::snprintf(buf, sizeof buf, "%.17g", row[j]);
            os << buf << ',';
        }
        std::snprintf(buf, sizeof buf, "%.17g", ensemble.shifts[i]);
        os << buf << '\n';
    }
}

void write_signal_csv(std::ostream& os, const SparseSignal& signal) {
    char buf[32];
    for (const double v : signal.values) {
        std::snprintf(buf, sizeof buf, "%.17g", v);
        os << buf << '\n';
    }
}

void write_bits_csv(std::ostream& os, const SignVector& y) {
    for (const std::int8_t b : y.bits) {
        os << (b > 0 ? "+1" : "-1") << '\n';
    }
}

SignVector read_bits_csv(std::istream& is) {
    SignVector y;
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') {
            continue;
        }
        const int v = std::stoi(line);
        if (v != 1 && v != -1) {
            throw InvalidParameter("bits file entries must be +1 or -1");
        }
        y.bits.push_back(static_cast<std::int8_t>(v));
    }
    return y;
}

}  // namespace obcs
