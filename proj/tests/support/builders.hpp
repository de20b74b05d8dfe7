// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "ancl/operators.hpp"

#include <cmath>
#include <complex>

namespace testkit {

using namespace ancl;

inline Tail make_tail(const char* expr, double limit, Direction dir, Index start = 1, Index mono = 0) {
    return Tail(Expr::parse(expr), start, limit, dir, mono == 0 ? start : mono);
}

inline WeightSeq tail_weights(const char* expr, double limit, Direction dir, Complex phase = 1.0,
                              std::vector<Complex> prefix = {}) {
    const Index start = static_cast<Index>(prefix.size()) + 1;
    return WeightSeq::basic(std::move(prefix), make_tail(expr, limit, dir, start), phase);
}

inline ShiftedDiagonal tail_diag(const char* expr, double limit, Direction dir, Complex phase = 1.0) {
    return diagonal(tail_weights(expr, limit, dir, phase));
}

inline ShiftedDiagonal const_diag(Complex c) { return diagonal(WeightSeq::constant(c)); }

/// Value of a weight normal form at n (n at or beyond its class threshold).
inline std::optional<Complex> nf_value(const WeightNormalForm& nf, Index n) {
    const WeightPiece& p = nf.pieces[static_cast<std::size_t>((n - 1) % nf.period)];
    if (n < p.from) return std::nullopt;
    if (!p.is_expr) return p.value;
    return p.phase * p.expr->eval(static_cast<double>(n));
}

} // namespace testkit
