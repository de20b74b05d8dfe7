// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "ancl/index_map.hpp"
#include "ancl/spectra.hpp"

#include <complex>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace ancl {

using Complex = std::complex<double>;

/// One residue class of a weight normal form. For n in the class with
/// n >= from the entry is either `value` or phase * expr(n), where expr is a
/// real expression in the absolute index n tending to `limit`.
struct WeightPiece {
    bool is_expr = false;
    Complex value{0.0, 0.0};
    Complex phase{1.0, 0.0};
    std::optional<Expr> expr;
    double limit = 0.0;
    Index from = 1;

    [[nodiscard]] Complex limit_value() const { return is_expr ? phase * limit : value; }
};

struct WeightNormalForm {
    Index period = 1;
    std::vector<WeightPiece> pieces;

    [[nodiscard]] Index max_from() const;
    [[nodiscard]] WeightNormalForm refined(Index k) const;
};

/// Bounded complex sequence d_1, d_2, ... built from closed-form pieces.
class WeightSeq {
public:
    enum class Kind { basic, interleave, reindex, mask, mul, add, conj, phase, modulus_map };
    enum class ModulusFn { abs, square, deficit, excess };

    /// Every entry equal to c.
    static WeightSeq constant(Complex c);
    /// Explicit prefix, then c forever.
    static WeightSeq basic(std::vector<Complex> prefix, Complex tail_constant);
    /// Explicit prefix, then phase * tail(n). Requires tail.start() <= |prefix| + 1
    /// and |phase| = 1.
    static WeightSeq basic(std::vector<Complex> prefix, Tail tail, Complex phase);

    /// Odd entries from `odd` (re-indexed 1, 2, ...), even entries from `even`.
    static WeightSeq interleave(const WeightSeq& odd, const WeightSeq& even);
    /// n -> w(map(n)), zero where map is undefined.
    static WeightSeq reindex(const WeightSeq& w, const IndexMap& map);
    /// n -> w(n) where map is defined, zero elsewhere.
    static WeightSeq mask(const WeightSeq& w, const IndexMap& map);
    static WeightSeq mul(const WeightSeq& a, const WeightSeq& b);
    /// Entrywise sum; raises UnsupportedSumError when two non-constant pieces
    /// carry phases that are not real multiples of each other.
    static WeightSeq add(const WeightSeq& a, const WeightSeq& b);
    static WeightSeq scale(const WeightSeq& w, Complex c);
    static WeightSeq conj(const WeightSeq& w);
    /// w / |w|, zero where w vanishes.
    static WeightSeq phase(const WeightSeq& w);
    /// f(|w|) for f = abs, square, max(alpha - t, 0) or max(t - alpha, 0).
    static WeightSeq modulus_map(const WeightSeq& w, ModulusFn fn, double alpha = 0.0);

    [[nodiscard]] Complex entry(Index n) const;
    [[nodiscard]] const WeightNormalForm& normal_form() const;
    [[nodiscard]] bool is_real() const;

    /// Eigenvalue profile of diag(w) for real w: leading entries become atoms,
    /// constant classes infinite atoms and the remaining classes tails.
    [[nodiscard]] SpectralProfile real_profile() const;

    [[nodiscard]] Kind kind() const;
    [[nodiscard]] const std::vector<Complex>& prefix() const;
    [[nodiscard]] const std::optional<Tail>& tail() const;
    [[nodiscard]] Complex tail_constant() const;
    [[nodiscard]] Complex tail_phase() const;
    [[nodiscard]] WeightSeq first() const;
    [[nodiscard]] WeightSeq second() const;
    [[nodiscard]] const IndexMap& map() const;
    [[nodiscard]] ModulusFn modulus_fn() const;
    [[nodiscard]] double alpha() const;

    [[nodiscard]] const std::string& canonical() const;
    friend bool operator==(const WeightSeq& a, const WeightSeq& b) { return a.canonical() == b.canonical(); }

    struct Node;

private:
    explicit WeightSeq(std::shared_ptr<const Node> node);
    std::shared_ptr<const Node> node_;
};

std::string format_double(double v);

} // namespace ancl
