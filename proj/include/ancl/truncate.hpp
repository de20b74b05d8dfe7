// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "ancl/operators.hpp"

#include <string>
#include <vector>

namespace ancl {

/// Square complex matrix, row-major, 0-based storage.
class DenseMatrix {
public:
    explicit DenseMatrix(std::size_t order);
    static DenseMatrix from_rows(const std::vector<std::vector<Complex>>& rows);
    static DenseMatrix diagonal(const std::vector<double>& values);

    [[nodiscard]] std::size_t order() const noexcept { return n_; }
    Complex& at(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
    [[nodiscard]] const Complex& at(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }

    /// max |a_ij - conj(a_ji)|.
    [[nodiscard]] double hermitian_defect() const;
    [[nodiscard]] double max_abs() const;
    [[nodiscard]] double frobenius() const;

    /// M* M, skipping zero entries row by row.
    [[nodiscard]] DenseMatrix gram() const;
    [[nodiscard]] DenseMatrix multiply(const DenseMatrix& other) const;
    [[nodiscard]] DenseMatrix adjoint() const;

private:
    std::size_t n_;
    std::vector<Complex> data_;
};

/// Section P_n T P_n: entry (i, j) = d_j when map(j) = i <= n (1-based).
DenseMatrix materialize(const ShiftedDiagonal& t, Index n);

namespace jacobi {
inline constexpr double kOffThreshold = 1e-12;
inline constexpr int kMaxSweeps = 100;
inline constexpr double kHermitianTolerance = 1e-12;
} // namespace jacobi

struct EigenResult {
    std::vector<double> values;      // ascending
    DenseMatrix vectors{0};          // column k belongs to values[k]; order 0 when not requested
    int sweeps = 0;
};

/// Cyclic Jacobi on a Hermitian matrix. ContractError when the input is not
/// Hermitian within jacobi::kHermitianTolerance (relative to max(1, max|a|)),
/// IterationLimitError when kMaxSweeps sweeps do not converge.
EigenResult hermitian_eigen(const DenseMatrix& m, bool want_vectors = false);

/// Square roots of the eigenvalues of M* M, clamped at zero, ascending.
std::vector<double> singular_values(const DenseMatrix& m);

struct StudyRow {
    Index n;
    double norm_estimate;
    double min_singular_estimate;
    double gap_to_symbolic;  // symbolic norm minus norm_estimate
    std::string summary;
};

struct ConvergenceStudy {
    double symbolic_norm;
    double symbolic_min_modulus;
    std::vector<StudyRow> rows;
    std::vector<std::string> notes;

    /// Header n,norm_est,min_sv_est,gap_to_symbolic then one line per row.
    [[nodiscard]] std::string to_csv() const;
};

/// Sizes must be strictly increasing and positive.
ConvergenceStudy convergence_study(const ShiftedDiagonal& t, const std::vector<Index>& sizes);

/// HEURISTIC: values around which section spectra pile up as n grows.
/// Diagnostic only; nothing in classify consults it. Identity-map operators
/// with real weights use section eigenvalues, everything else singular values.
struct EssentialEstimate {
    std::vector<double> candidates;
    std::string label = "HEURISTIC";
};
EssentialEstimate estimate_ess_spectrum(const ShiftedDiagonal& t, const std::vector<Index>& sizes = {64, 256, 1024});

} // namespace ancl
