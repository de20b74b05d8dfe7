// SPDX-License-Identifier: Apache-2.0
#include "ancl/truncate.hpp"

#include "ancl/errors.hpp"
#include "ancl/tolerance.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <utility>

namespace ancl {

DenseMatrix::DenseMatrix(std::size_t order) : n_(order), data_(order * order) {}

DenseMatrix DenseMatrix::from_rows(const std::vector<std::vector<Complex>>& rows) {
    DenseMatrix m(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != rows.size()) throw ContractError("matrix rows must form a square");
        for (std::size_t j = 0; j < rows.size(); ++j) {
            if (!std::isfinite(rows[i][j].real()) || !std::isfinite(rows[i][j].imag()))
                throw ContractError("matrix entries must be finite");
            m.at(i, j) = rows[i][j];
        }
    }
    return m;
}

DenseMatrix DenseMatrix::diagonal(const std::vector<double>& values) {
    DenseMatrix m(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) m.at(i, i) = values[i];
    return m;
}

double DenseMatrix::hermitian_defect() const {
    double worst = 0.0;
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = i; j < n_; ++j) worst = std::max(worst, std::abs(at(i, j) - std::conj(at(j, i))));
    return worst;
}

double DenseMatrix::max_abs() const {
    double worst = 0.0;
    for (const Complex& z : data_) worst = std::max(worst, std::abs(z));
    return worst;
}

double DenseMatrix::frobenius() const {
    double s = 0.0;
    for (const Complex& z : data_) s += std::norm(z);
    return std::sqrt(s);
}

DenseMatrix DenseMatrix::gram() const {
    DenseMatrix g(n_);
    std::vector<std::pair<std::size_t, Complex>> nz;
    for (std::size_t k = 0; k < n_; ++k) {
        nz.clear();
        for (std::size_t j = 0; j < n_; ++j)
            if (at(k, j) != Complex(0.0)) nz.emplace_back(j, at(k, j));
        for (const auto& [i, vi] : nz)
            for (const auto& [j, vj] : nz) g.at(i, j) += std::conj(vi) * vj;
    }
    return g;
}

DenseMatrix DenseMatrix::multiply(const DenseMatrix& other) const {
    if (other.n_ != n_) throw ContractError("matrix orders differ");
    DenseMatrix r(n_);
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t k = 0; k < n_; ++k) {
            const Complex a = at(i, k);
            if (a == Complex(0.0)) continue;
            for (std::size_t j = 0; j < n_; ++j) r.at(i, j) += a * other.at(k, j);
        }
    return r;
}

DenseMatrix DenseMatrix::adjoint() const {
    DenseMatrix r(n_);
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < n_; ++j) r.at(j, i) = std::conj(at(i, j));
    return r;
}

DenseMatrix materialize(const ShiftedDiagonal& t, Index n) {
    if (n < 1) throw ContractError("section order must be at least 1");
    DenseMatrix m(static_cast<std::size_t>(n));
    for (Index j = 1; j <= n; ++j) {
        const auto col = t.column(j);
        if (!col || col->first > n) continue;
        m.at(static_cast<std::size_t>(col->first - 1), static_cast<std::size_t>(j - 1)) = col->second;
    }
    return m;
}

namespace {

double off_diagonal(const DenseMatrix& a) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.order(); ++i)
        for (std::size_t j = 0; j < a.order(); ++j)
            if (i != j) s += std::norm(a.at(i, j));
    return std::sqrt(s);
}

// Zeroes a(p, q) with U = [[c, s], [-s conj(e), c conj(e)]], e = a_pq / |a_pq|.
void rotate(DenseMatrix& a, DenseMatrix* v, std::size_t p, std::size_t q) {
    const Complex apq = a.at(p, q);
    const double g = std::abs(apq);
    const Complex e = apq / g;
    const double theta = (a.at(q, q).real() - a.at(p, p).real()) / (2.0 * g);
    const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
    const double c = 1.0 / std::sqrt(t * t + 1.0);
    const double s = t * c;
    const std::size_t n = a.order();
    const double app = a.at(p, p).real() - t * g;
    const double aqq = a.at(q, q).real() + t * g;

    auto columns = [&](DenseMatrix& m) {
        for (std::size_t k = 0; k < n; ++k) {
            const Complex xp = m.at(k, p);
            const Complex xq = m.at(k, q);
            m.at(k, p) = c * xp - s * std::conj(e) * xq;
            m.at(k, q) = s * xp + c * std::conj(e) * xq;
        }
    };
    columns(a);
    for (std::size_t k = 0; k < n; ++k) {
        const Complex xp = a.at(p, k);
        const Complex xq = a.at(q, k);
        a.at(p, k) = c * xp - s * e * xq;
        a.at(q, k) = s * xp + c * e * xq;
    }
    a.at(p, p) = app;
    a.at(q, q) = aqq;
    a.at(p, q) = 0.0;
    a.at(q, p) = 0.0;
    if (v) columns(*v);
}

} // namespace

EigenResult hermitian_eigen(const DenseMatrix& m, bool want_vectors) {
    const std::size_t n = m.order();
    if (m.hermitian_defect() > jacobi::kHermitianTolerance * std::max(1.0, m.max_abs()))
        throw ContractError("matrix is not Hermitian");
    DenseMatrix a = m;
    for (std::size_t i = 0; i < n; ++i) a.at(i, i) = a.at(i, i).real();
    DenseMatrix v(want_vectors ? n : 0);
    for (std::size_t i = 0; i < v.order(); ++i) v.at(i, i) = 1.0;

    const double scale = std::max(a.frobenius(), 1e-300);
    EigenResult out;
    while (off_diagonal(a) > jacobi::kOffThreshold * scale) {
        if (out.sweeps == jacobi::kMaxSweeps)
            throw IterationLimitError("Jacobi did not converge in " + std::to_string(jacobi::kMaxSweeps) + " sweeps");
        ++out.sweeps;
        for (std::size_t p = 0; p + 1 < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q)
                if (std::abs(a.at(p, q)) > 1e-18 * scale) rotate(a, want_vectors ? &v : nullptr, p, q);
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return a.at(x, x).real() < a.at(y, y).real(); });
    out.values.reserve(n);
    for (std::size_t k : order) out.values.push_back(a.at(k, k).real());
    if (want_vectors) {
        out.vectors = DenseMatrix(n);
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t i = 0; i < n; ++i) out.vectors.at(i, k) = v.at(i, order[k]);
    }
    return out;
}

std::vector<double> singular_values(const DenseMatrix& m) {
    std::vector<double> ev = hermitian_eigen(m.gram()).values;
    for (double& x : ev) x = std::sqrt(std::max(0.0, x));
    return ev;
}

std::string ConvergenceStudy::to_csv() const {
    std::ostringstream os;
    os.precision(17);
    os << "n,norm_est,min_sv_est,gap_to_symbolic\n";
    for (const StudyRow& r : rows)
        os << r.n << ',' << r.norm_estimate << ',' << r.min_singular_estimate << ',' << r.gap_to_symbolic << '\n';
    return os.str();
}

ConvergenceStudy convergence_study(const ShiftedDiagonal& t, const std::vector<Index>& sizes) {
    for (std::size_t i = 0; i < sizes.size(); ++i) {
        if (sizes[i] < 1) throw ContractError("section sizes must be positive");
        if (i > 0 && sizes[i] <= sizes[i - 1]) throw ContractError("section sizes must be strictly increasing");
    }
    const SpectrumReport symbolic = spectrum_report(modulus_profile_direct(t));
    ConvergenceStudy study{symbolic.norm, symbolic.min_modulus, {}, {}};
    bool under_min = false;
    for (Index n : sizes) {
        const std::vector<double> sv = singular_values(materialize(t, n));
        StudyRow row{n, sv.back(), sv.front(), symbolic.norm - sv.back(), {}};
        std::ostringstream s;
        s << "sv range [" << sv.front() << ", " << sv.back() << "]";
        if (row.min_singular_estimate < symbolic.min_modulus - tolerance()) {
            s << "; below symbolic m(T)";
            under_min = true;
        }
        row.summary = s.str();
        study.rows.push_back(std::move(row));
    }
    if (under_min)
        study.notes.push_back("section minimum underestimates m(T): columns mapped outside the section are zero");
    if (!symbolic.norm_attained) study.notes.push_back("norm not attained: estimates approach the norm from below");
    return study;
}

EssentialEstimate estimate_ess_spectrum(const ShiftedDiagonal& t, const std::vector<Index>& sizes) {
    if (sizes.size() < 2) throw ContractError("at least two section sizes are needed");
    const bool eigen = t.is_diagonal() && t.weights().is_real();
    std::vector<std::vector<double>> spectra;
    double lo = 0.0, hi = 0.0;
    for (Index n : sizes) {
        const DenseMatrix m = materialize(t, n);
        spectra.push_back(eigen ? hermitian_eigen(m).values : singular_values(m));
        lo = std::min(lo, spectra.back().front());
        hi = std::max(hi, spectra.back().back());
    }
    const double width = 0.02 * std::max(1.0, hi - lo);
    const auto bins = static_cast<std::size_t>((hi - lo) / width) + 1;
    auto histogram = [&](const std::vector<double>& vals) {
        std::vector<std::size_t> h(bins, 0);
        for (double x : vals) ++h[std::min(bins - 1, static_cast<std::size_t>((x - lo) / width))];
        return h;
    };
    const auto first = histogram(spectra.front());
    const auto last = histogram(spectra.back());
    const double growth = static_cast<double>(sizes.back()) / static_cast<double>(sizes.front());

    EssentialEstimate out;
    const std::vector<double>& top = spectra.back();
    for (std::size_t b = 0; b < bins; ++b) {
        if (static_cast<double>(last[b]) < 0.25 * growth * static_cast<double>(std::max<std::size_t>(first[b], 1)))
            continue;
        // densest point of the bin: smallest gap to a neighbour
        double best = 0.0, gap = INFINITY;
        for (std::size_t i = 0; i < top.size(); ++i) {
            const auto bi = std::min(bins - 1, static_cast<std::size_t>((top[i] - lo) / width));
            if (bi != b) continue;
            double g = INFINITY;
            if (i > 0) g = std::min(g, top[i] - top[i - 1]);
            if (i + 1 < top.size()) g = std::min(g, top[i + 1] - top[i]);
            if (g < gap) gap = g, best = top[i];
        }
        if (!out.candidates.empty() && best - out.candidates.back() <= 2 * width) continue;
        out.candidates.push_back(best);
    }
    return out;
}

} // namespace ancl
