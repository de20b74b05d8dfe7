// SPDX-License-Identifier: Apache-2.0
#include "ancl/operators.hpp"

#include "ancl/errors.hpp"
#include "ancl/tolerance.hpp"

#include <algorithm>
#include <cmath>

namespace ancl {

std::optional<std::pair<Index, Complex>> ShiftedDiagonal::column(Index n) const {
    const auto m = map_.eval(n);
    if (!m) return std::nullopt;
    return std::make_pair(*m, weights_.entry(n));
}

ShiftedDiagonal diagonal(const WeightSeq& w) { return ShiftedDiagonal(IndexMap::identity(), w); }

std::vector<Complex> apply(const ShiftedDiagonal& t, const std::vector<Complex>& x, Index dim) {
    if (dim < static_cast<Index>(x.size())) throw ContractError("apply: dim must be at least the input length");
    std::vector<Complex> y(static_cast<std::size_t>(dim), Complex(0.0));
    for (Index n = 1; n <= static_cast<Index>(x.size()); ++n) {
        const Complex xn = x[static_cast<std::size_t>(n - 1)];
        if (xn == Complex(0.0)) continue;
        const auto col = t.column(n);
        if (col && col->first <= dim) y[static_cast<std::size_t>(col->first - 1)] += col->second * xn;
    }
    return y;
}

bool actions_agree(const ShiftedDiagonal& a, const ShiftedDiagonal& b, Index up_to, double tol) {
    for (Index n = 1; n <= up_to; ++n) {
        auto ca = a.column(n);
        auto cb = b.column(n);
        if (ca && std::abs(ca->second) <= tol) ca.reset();
        if (cb && std::abs(cb->second) <= tol) cb.reset();
        if (ca.has_value() != cb.has_value()) return false;
        if (!ca) continue;
        if (ca->first != cb->first) return false;
        if (std::abs(ca->second - cb->second) > tol * std::max(1.0, std::abs(ca->second))) return false;
    }
    return true;
}

namespace {

WeightSeq conj_if_needed(const WeightSeq& w) { return w.is_real() ? w : WeightSeq::conj(w); }

WeightSeq masked(const ShiftedDiagonal& t) { return WeightSeq::mask(t.weights(), t.map()); }

} // namespace

ShiftedDiagonal adjoint(const ShiftedDiagonal& t) {
    if (t.is_diagonal()) return ShiftedDiagonal(t.map(), conj_if_needed(t.weights()));
    const IndexMap inv = IndexMap::inverse(t.map());
    return ShiftedDiagonal(inv, conj_if_needed(WeightSeq::reindex(t.weights(), inv)));
}

ShiftedDiagonal compose(const ShiftedDiagonal& a, const ShiftedDiagonal& b) {
    return ShiftedDiagonal(IndexMap::compose(a.map(), b.map()),
                           WeightSeq::mul(WeightSeq::reindex(a.weights(), b.map()), b.weights()));
}

ShiftedDiagonal add(const ShiftedDiagonal& a, const ShiftedDiagonal& b) {
    if (!(a.map() == b.map())) {
        throw UnsupportedSumError("sum of operators with different index maps (" + a.map().canonical() + " vs " +
                                  b.map().canonical() + ") is outside the representable class");
    }
    return ShiftedDiagonal(a.map(), WeightSeq::add(a.weights(), b.weights()));
}

ShiftedDiagonal scale(const ShiftedDiagonal& t, Complex c) { return ShiftedDiagonal(t.map(), WeightSeq::scale(t.weights(), c)); }

ShiftedDiagonal direct_sum(const ShiftedDiagonal& a, const ShiftedDiagonal& b) {
    return ShiftedDiagonal(IndexMap::interleave(a.map(), b.map()), WeightSeq::interleave(a.weights(), b.weights()));
}

SpectralProfile gram(const ShiftedDiagonal& t) {
    return WeightSeq::modulus_map(masked(t), WeightSeq::ModulusFn::square).real_profile();
}

SpectralProfile cogram(const ShiftedDiagonal& t) { return gram(adjoint(t)); }

Modulus modulus(const ShiftedDiagonal& t) {
    return {diagonal(WeightSeq::modulus_map(masked(t), WeightSeq::ModulusFn::abs)), sqrt_profile(gram(t))};
}

SpectralProfile modulus_profile_direct(const ShiftedDiagonal& t) {
    return WeightSeq::modulus_map(masked(t), WeightSeq::ModulusFn::abs).real_profile();
}

PolarParts polar_decompose(const ShiftedDiagonal& t) {
    Modulus m = modulus(t);
    return {ShiftedDiagonal(t.map(), WeightSeq::phase(masked(t))), std::move(m.diagonal), std::move(m.profile)};
}

double operator_norm(const ShiftedDiagonal& t) { return spectrum_report(modulus_profile_direct(t)).norm; }

std::optional<Multiplicity> kernel_dimension(const ShiftedDiagonal& t) {
    const SpectralProfile m = modulus_profile_direct(t);
    std::optional<Multiplicity> total;
    auto add_to = [&](Multiplicity k) { total = total ? *total + k : k; };
    for (const Atom& a : m.atoms()) {
        if (a.value <= kZeroWeight) add_to(a.mult);
    }
    for (const Tail& tail : m.tails()) {
        const Index end = std::max(tail.mono_from(), sign_stable_from(tail).from) + 1;
        std::uint64_t zeros = 0;
        for (Index n = tail.start(); n <= end; ++n) {
            if (std::abs(tail.eval(n)) <= kZeroWeight) ++zeros;
        }
        if (zeros > 0) add_to(Multiplicity::finite(zeros));
    }
    return total;
}

std::vector<NormalBlock> normal_block_decomposition(const ShiftedDiagonal& t, Index depth) {
    if (!t.is_diagonal()) throw ContractError("block decomposition requires a normal (Identity-map) operator");
    std::vector<NormalBlock> blocks;
    for (Index n = 1; n <= depth; ++n) {
        const Complex d = t.weights().entry(n);
        const double lambda = std::abs(d);
        const Complex phase = lambda <= kZeroWeight ? Complex(1.0) : d / lambda;
        auto it = std::find_if(blocks.begin(), blocks.end(), [&](const NormalBlock& b) { return same_point(b.lambda, lambda); });
        if (it == blocks.end()) {
            blocks.push_back({lambda, {n}, {phase}});
        } else {
            it->indices.push_back(n);
            it->phases.push_back(phase);
        }
    }
    return blocks;
}

} // namespace ancl
