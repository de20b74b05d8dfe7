// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "ancl/expr.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace ancl {

using Index = std::int64_t;

/// Sampling parameters used when certifying tails.
namespace certify {
/// Consecutive indices checked after the start and after the monotone point.
inline constexpr Index kPrefix = 2048;
/// Largest index any scan or sample reaches.
inline constexpr Index kBound = 1'000'000;
/// Required closeness to the declared limit at kBound, relative to max(1, |limit|).
inline constexpr double kLimitGap = 1e-3;
/// Values this close to the limit (relative) are numerically saturated.
inline constexpr double kSaturation = 1e-14;
/// Near the limit (relative distance below kFlatZone) consecutive values may
/// tie or wobble by up to kRounding (relative) without breaking monotonicity.
inline constexpr double kFlatZone = 1e-9;
inline constexpr double kRounding = 4e-15;
} // namespace certify

enum class Direction { increasing, decreasing };

[[nodiscard]] inline Direction flipped(Direction d) {
    return d == Direction::increasing ? Direction::decreasing : Direction::increasing;
}

/// Eigenvalue multiplicity; infinity is a distinguished token, never a large count.
class Multiplicity {
public:
    static Multiplicity finite(std::uint64_t count);
    static Multiplicity infinite() { return Multiplicity(0, true); }

    [[nodiscard]] bool is_infinite() const noexcept { return infinite_; }
    [[nodiscard]] std::uint64_t count() const noexcept { return count_; }

    friend Multiplicity operator+(Multiplicity a, Multiplicity b) {
        if (a.infinite_ || b.infinite_) return infinite();
        return Multiplicity(a.count_ + b.count_, false);
    }
    friend bool operator==(const Multiplicity&, const Multiplicity&) = default;

    [[nodiscard]] std::string to_string() const { return infinite_ ? "inf" : std::to_string(count_); }

private:
    Multiplicity(std::uint64_t c, bool inf) : count_(c), infinite_(inf) {}
    std::uint64_t count_;
    bool infinite_;
};

/// Extremes of a tail's value set.
struct TailRange {
    double inf;
    bool inf_attained;
    double sup;
    bool sup_attained;
};

/// Eventually monotone sequence expr(n), n >= start, with a certified limit.
/// Construction certifies evaluability, monotonicity from mono_from on, and
/// convergence to the limit; failures raise CertificationError.
class Tail {
public:
    Tail(Expr expr, Index start, double limit, Direction direction, Index mono_from);

    [[nodiscard]] double eval(Index n) const;
    [[nodiscard]] const Expr& expr() const noexcept { return expr_; }
    [[nodiscard]] Index start() const noexcept { return start_; }
    [[nodiscard]] double limit() const noexcept { return limit_; }
    [[nodiscard]] Direction direction() const noexcept { return direction_; }
    [[nodiscard]] Index mono_from() const noexcept { return mono_from_; }

    [[nodiscard]] TailRange range() const;
    /// Number of indices in the certification prefix whose value is within
    /// tolerance of v. Zero when v is the limit itself.
    [[nodiscard]] std::uint64_t hits(double v) const;
    /// True when |value - limit| is below numerical resolution.
    [[nodiscard]] bool saturated(double value) const;

    /// Same sequence with the first index moved forward to new_start.
    [[nodiscard]] Tail reanchored(Index new_start) const;

private:
    void certify() const;

    Expr expr_;
    Index start_;
    double limit_;
    Direction direction_;
    Index mono_from_;
};

/// Result of analysing a sequence whose limit is known: the finitely many
/// leading entries before monotone behaviour, followed by either a certified
/// tail or a constant.
struct FittedSequence {
    std::vector<double> leading;
    std::optional<Tail> tail;
    std::optional<double> constant;
};

/// Splits expr(n), n >= start, into leading entries plus a monotone tail
/// converging to `limit` (or a constant). Raises CertificationError when no
/// monotone region is found within the sampling window.
FittedSequence fit_sequence(const Expr& expr, Index start, double limit);

/// Index from which every tail value is nonzero with the sign of its
/// eventual behaviour; the entries before it are the ones a sign split must
/// spell out explicitly. Scans at most certify::kBound indices.
struct SignStable {
    Index from;
    int sign;
};
SignStable sign_stable_from(const Tail& tail);

struct Atom {
    double value;
    Multiplicity mult;
};

/// Countable spectrum of a diagonalizable self-adjoint operator on an
/// infinite dimensional space: finitely many atoms plus finitely many tails.
class SpectralProfile {
public:
    SpectralProfile(std::vector<Atom> atoms, std::vector<Tail> tails);

    [[nodiscard]] const std::vector<Atom>& atoms() const noexcept { return atoms_; }
    [[nodiscard]] const std::vector<Tail>& tails() const noexcept { return tails_; }

    [[nodiscard]] double inf() const;
    [[nodiscard]] double sup() const;
    [[nodiscard]] bool is_positive() const;

    /// Infinite-multiplicity atom values and tail limits, sorted, merged at tolerance.
    [[nodiscard]] std::vector<double> essential_points() const;
    /// Eigenvalue multiplicity of v; empty when v is not an eigenvalue.
    [[nodiscard]] std::optional<Multiplicity> multiplicity_at(double v) const;

    /// Eigenvalue entries with every tail enumerated for start <= n <= bound
    /// and every infinite atom repeated `bound` times; sorted ascending.
    [[nodiscard]] std::vector<double> sample(Index bound) const;

private:
    std::vector<Atom> atoms_;
    std::vector<Tail> tails_;
};

struct DiscreteSpectrum {
    std::vector<Atom> explicit_part;
    std::vector<std::size_t> tail_refs;
};

struct SpectrumReport {
    std::vector<double> sigma_ess;
    DiscreteSpectrum sigma_d;
    double norm;
    double min_modulus;
    double ess_min_modulus;
    bool norm_attained;
    bool min_attained;
    std::string note;
};

SpectrumReport spectrum_report(const SpectralProfile& p);

SpectralProfile shift_scale(const SpectralProfile& p, double a, double b);

/// Every tail replaced by its sign-stable part, with the leading entries
/// moved into explicit atoms appended after the existing ones.
SpectralProfile split_signs(const SpectralProfile& p);

SpectralProfile abs_profile(const SpectralProfile& p);
std::pair<SpectralProfile, SpectralProfile> pos_neg_parts(const SpectralProfile& p);
SpectralProfile square_profile(const SpectralProfile& p);
SpectralProfile sqrt_profile(const SpectralProfile& p);
/// Coefficients in ascending degree order, all nonnegative.
SpectralProfile polynomial_apply(const SpectralProfile& p, const std::vector<double>& coeffs);
SpectralProfile merge_profiles(const SpectralProfile& a, const SpectralProfile& b);

struct CompactnessReport {
    bool is_compact;
    bool is_finite_rank;
};
CompactnessReport compactness_check(const SpectralProfile& p);

/// Multiset comparison of two sorted samples, ignoring how often values equal
/// to one of `infinite_values` occur (both sides must still contain them).
bool same_multiset(const std::vector<double>& a, const std::vector<double>& b,
                   const std::vector<double>& infinite_values, double tol);

} // namespace ancl
