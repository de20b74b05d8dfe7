// SPDX-License-Identifier: Apache-2.0
#include "ancl/errors.hpp"
#include "ancl/truncate.hpp"

#include "builders.hpp"
#include "doctest.h"

#include <algorithm>
#include <random>

using namespace ancl;
using namespace testkit;

namespace {

// Random unitary by Gram-Schmidt; real when `complex` is false.
DenseMatrix random_unitary(std::mt19937_64& rng, std::size_t n, bool complex) {
    std::normal_distribution<double> g;
    std::vector<std::vector<Complex>> cols(n, std::vector<Complex>(n));
    for (std::size_t k = 0; k < n; ++k) {
        auto& c = cols[k];
        for (auto& z : c) z = Complex(g(rng), complex ? g(rng) : 0.0);
        for (std::size_t r = 0; r < 2; ++r)
            for (std::size_t j = 0; j < k; ++j) {
                Complex dot = 0.0;
                for (std::size_t i = 0; i < n; ++i) dot += std::conj(cols[j][i]) * c[i];
                for (std::size_t i = 0; i < n; ++i) c[i] -= dot * cols[j][i];
            }
        double norm = 0.0;
        for (auto& z : c) norm += std::norm(z);
        for (auto& z : c) z /= std::sqrt(norm);
    }
    DenseMatrix q(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) q.at(i, k) = cols[k][i];
    return q;
}

} // namespace

TEST_CASE("materialize sections") {
    const DenseMatrix s = materialize(ShiftedDiagonal(IndexMap::stretch(2), WeightSeq::constant(1.0)), 4);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) {
            const bool one = (i == 0 && j == 0) || (i == 2 && j == 1);
            CHECK(s.at(i, j) == Complex(one ? 1.0 : 0.0));
        }
    const DenseMatrix d = materialize(tail_diag("1 - 1/n", 1, Direction::increasing), 3);
    CHECK(d.at(0, 0) == Complex(0.0));
    CHECK(d.at(1, 1) == Complex(0.5));
    CHECK(d.at(2, 2).real() == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    const DenseMatrix sh = materialize(ShiftedDiagonal(IndexMap::shift(1), WeightSeq::constant(1.0)), 3);
    CHECK(sh.at(1, 0) == Complex(1.0));
    CHECK(sh.at(2, 1) == Complex(1.0));
    CHECK(sh.frobenius() == doctest::Approx(std::sqrt(2.0)));
    CHECK_THROWS_AS(materialize(const_diag(1.0), 0), ContractError);
}

TEST_CASE("Hermitian Jacobi basics") {
    const EigenResult a = hermitian_eigen(DenseMatrix::from_rows({{0.0, 1.0}, {1.0, 0.0}}));
    CHECK(a.values[0] == doctest::Approx(-1.0));
    CHECK(a.values[1] == doctest::Approx(1.0));
    const EigenResult b = hermitian_eigen(DenseMatrix::diagonal({0.0, 0.5, 2.0 / 3.0}));
    CHECK(b.values == std::vector<double>{0.0, 0.5, 2.0 / 3.0});
    CHECK(b.sweeps == 0);
    const EigenResult c = hermitian_eigen(DenseMatrix::from_rows({{2.0, Complex(0, 1)}, {Complex(0, -1), 2.0}}));
    CHECK(c.values[0] == doctest::Approx(1.0));
    CHECK(c.values[1] == doctest::Approx(3.0));
    CHECK_THROWS_AS(hermitian_eigen(DenseMatrix::from_rows({{0.0, 1.0}, {0.0, 0.0}})), ContractError);
    CHECK_THROWS_AS(DenseMatrix::from_rows({{1.0, 2.0}}), ContractError);
}

TEST_CASE("Jacobi recovers rotation-conjugated spectra") {
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    for (int trial = 0; trial < 12; ++trial) {
        const std::size_t n = 24;
        std::vector<double> spec(n);
        for (auto& x : spec) x = u(rng);
        if (trial % 3 == 0) spec[1] = spec[0];  // repeated eigenvalue
        const DenseMatrix q = random_unitary(rng, n, trial % 2 == 1);
        const DenseMatrix m = q.multiply(DenseMatrix::diagonal(spec)).multiply(q.adjoint());
        const EigenResult r = hermitian_eigen(m, true);
        std::sort(spec.begin(), spec.end());
        double trace = 0.0, sum = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            CHECK(std::abs(r.values[i] - spec[i]) <= 1e-10);
            trace += m.at(i, i).real();
            sum += r.values[i];
        }
        CHECK(std::abs(trace - sum) <= 1e-9 * n * m.frobenius());
        for (std::size_t k = 0; k < n; ++k) {
            double res = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                Complex mv = 0.0;
                for (std::size_t j = 0; j < n; ++j) mv += m.at(i, j) * r.vectors.at(j, k);
                res += std::norm(mv - r.values[k] * r.vectors.at(i, k));
            }
            CHECK(std::sqrt(res) <= 1e-10 * m.frobenius());
        }
    }
}

TEST_CASE("singular values") {
    const auto s = singular_values(materialize(ShiftedDiagonal(IndexMap::stretch(2), WeightSeq::constant(1.0)), 4));
    CHECK(s == std::vector<double>{0.0, 0.0, 1.0, 1.0});
    CHECK(singular_values(DenseMatrix(3)) == std::vector<double>{0.0, 0.0, 0.0});
    const auto d = singular_values(DenseMatrix::diagonal({-2.0, 0.5, 1.0}));
    CHECK(d[0] == doctest::Approx(0.5));
    CHECK(d[1] == doctest::Approx(1.0));
    CHECK(d[2] == doctest::Approx(2.0));

    const ShiftedDiagonal w = tail_diag("1 + 1/n", 1, Direction::decreasing, Complex(0.6, 0.8));
    const auto sv = singular_values(materialize(w, 50));
    std::vector<double> expect;
    for (Index n = 1; n <= 50; ++n) expect.push_back(std::abs(w.weights().entry(n)));
    std::sort(expect.begin(), expect.end());
    for (std::size_t i = 0; i < sv.size(); ++i) CHECK(std::abs(sv[i] - expect[i]) <= 1e-12);
}

TEST_CASE("convergence study") {
    const ConvergenceStudy s = convergence_study(tail_diag("1 - 1/n", 1, Direction::increasing), {4, 64, 1024});
    REQUIRE(s.rows.size() == 3);
    CHECK(s.rows[0].norm_estimate == 0.75);
    CHECK(s.rows[1].norm_estimate == 0.984375);
    CHECK(s.rows[2].norm_estimate == 0.9990234375);
    CHECK(s.rows[2].gap_to_symbolic == doctest::Approx(1.0 / 1024));
    CHECK(s.symbolic_norm == 1.0);
    CHECK(s.to_csv().rfind("n,norm_est,min_sv_est,gap_to_symbolic\n4,0.75,0,0.25\n", 0) == 0);

    const ConvergenceStudy id = convergence_study(const_diag(1.0), {1, 8, 32});
    for (const StudyRow& r : id.rows) {
        CHECK(r.norm_estimate == 1.0);
        CHECK(r.min_singular_estimate == 1.0);
    }
    CHECK(id.notes.empty());

    const ConvergenceStudy st = convergence_study(ShiftedDiagonal(IndexMap::stretch(2), WeightSeq::constant(1.0)), {64});
    CHECK(st.rows[0].norm_estimate == 1.0);
    CHECK(st.rows[0].min_singular_estimate == 0.0);
    CHECK(st.symbolic_min_modulus == 1.0);
    CHECK_FALSE(st.notes.empty());

    CHECK_THROWS_AS(convergence_study(const_diag(1.0), {8, 8}), ContractError);
}

TEST_CASE("essential spectrum heuristic") {
    auto near = [](const std::vector<double>& got, std::vector<double> want) {
        if (got.size() != want.size()) return false;
        for (std::size_t i = 0; i < got.size(); ++i)
            if (std::abs(got[i] - want[i]) > 0.02) return false;
        return true;
    };
    const ShiftedDiagonal d = tail_diag("1 - 1/n", 1, Direction::increasing);
    const EssentialEstimate g = estimate_ess_spectrum(compose(adjoint(d), d));
    CHECK(g.label == "HEURISTIC");
    CHECK(near(g.candidates, {1.0}));
    const ShiftedDiagonal proj = diagonal(WeightSeq::interleave(WeightSeq::constant(1.0), WeightSeq::constant(0.0)));
    CHECK(near(estimate_ess_spectrum(proj).candidates, {0.0, 1.0}));
    CHECK(near(estimate_ess_spectrum(tail_diag("1/n", 0, Direction::decreasing)).candidates, {0.0}));
}
