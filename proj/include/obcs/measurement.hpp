#pragma once

// Sparse test signals, Gaussian measurement ensembles and affine one-bit
// quantization y_i = sign(<a_i, x> + b_i), with sign(0) = +1.

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "obcs/rng.hpp"

namespace obcs {

struct SparseSignal {
    std::vector<double> values;        // length n, zero off support
    std::vector<std::size_t> support;  // ascending, size <= sparsity_budget
    std::size_t sparsity_budget = 0;   // s
    double norm_lower = 0.0;           // r
    double norm_upper = 0.0;           // R

    std::size_t dimension() const { return values.size(); }
    double norm() const;
};

enum class ShiftKind {
    GaussianDither,     // b_i ~ N(0, tau^2); tau = 0 gives zero shifts
    ConstantThreshold,  // b_i = -tau, so y = sign(Ax - tau); requires tau > 0
};

struct ShiftModel {
    ShiftKind kind;
    double tau;

    static ShiftModel gaussian_dither(double tau) {
        return {ShiftKind::GaussianDither, tau};
    }
    static ShiftModel constant_threshold(double tau) {
        return {ShiftKind::ConstantThreshold, tau};
    }
    static ShiftModel zero() { return {ShiftKind::GaussianDither, 0.0}; }
};

struct MeasurementEnsemble {
    std::size_t rows = 0;  // m
    std::size_t cols = 0;  // n
    ShiftModel shift{ShiftKind::GaussianDither, 0.0};
    std::uint64_t seed = 0;
    std::vector<double> matrix;  // row-major rows x cols, iid N(0,1)
    std::vector<double> shifts;  // length rows

    const double* row(std::size_t i) const { return matrix.data() + i * cols; }
    bool zero_shifts() const;
};

struct SignVector {
    std::vector<std::int8_t> bits;  // entries are +1 or -1

    std::size_t size() const { return bits.size(); }
};

/// Uniform support of size s, iid N(0,1) entries on the support, then
/// rescaled so the Euclidean norm is uniform on [r, R].
/// Throws InvalidDimension if s == 0, s > n, r <= 0 or r > R.
SparseSignal generate_sparse_signal(std::size_t n, std::size_t s, double r, double R,
                                    std::uint64_t seed);

/// Gaussian matrix plus shifts per the shift model. Rows and shifts come from
/// per-index substreams of the seed, so regeneration is bit-exact and
/// parallelizable. Throws InvalidParameter for ConstantThreshold with
/// tau <= 0, or GaussianDither with tau < 0.
MeasurementEnsemble build_ensemble(std::size_t m, std::size_t n, ShiftModel shift,
                                   std::uint64_t seed);

/// bits_i = sign(<a_i, x> + b_i). Throws DimensionMismatch.
SignVector quantize(const MeasurementEnsemble& ensemble, std::span<const double> x);

/// Same bits as build_ensemble + quantize for identical arguments, but the
/// matrix rows are regenerated on the fly (never stored) and processed in
/// parallel. Intended for measurement counts where storing A is wasteful.
SignVector quantize_streaming(std::size_t m, std::size_t n, ShiftModel shift,
                              std::uint64_t seed, std::span<const double> x,
                              unsigned workers = 0);

/// CSV export: one measurement per line, the n matrix entries then the shift.
/// A comment header records m, n, the shift model and the seed.
void write_ensemble_csv(std::ostream& os, const MeasurementEnsemble& ensemble);

/// CSV export of a signal, one value per line.
void write_signal_csv(std::ostream& os, const SparseSignal& signal);

/// One bit per line (+1 / -1).
void write_bits_csv(std::ostream& os, const SignVector& y);

/// Reads bits written by write_bits_csv (or any +1/-1 per line file).
SignVector read_bits_csv(std::istream& is);

}  // namespace obcs
