// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "ancl/operators.hpp"
#include "ancl/spectra.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace ancl {

/// Reason attached to one membership flag.
struct Certificate {
    std::string criterion;
    bool holds = false;
    std::string detail;
    std::optional<double> alpha;
    std::vector<double> points;
    std::optional<double> attaining_value;
};

struct MembershipReport {
    bool norm_attaining = false;
    bool min_attaining = false;
    bool in_AN = false;
    bool in_AM = false;
    bool in_AN_closure = false;
    bool in_AM_closure = false;
    bool is_compact = false;
    bool is_finite_rank = false;
    /// Keyed by flag name.
    std::map<std::string, Certificate> certificates;
    /// Agreement of the independent derivations (gram route vs modulus route
    /// for operators; always true for profiles).
    bool paths_agree = true;
    std::string cross_check;
};

/// Spectral points strictly below (or above) a threshold at tolerance: a
/// finite list, or `infinite` with a witness naming an infinite atom or a
/// tail accumulating from that side.
struct SideCount {
    bool infinite = false;
    std::vector<double> points;
    std::string witness;
};
SideCount side_points(const SpectralProfile& p, double threshold, bool below);

/// Flags of the positive operator with spectrum p. Signed input raises ContractError.
MembershipReport classify_positive(const SpectralProfile& p);

enum class Side { below, at, above };

/// Where one spectral item of the input went in a decomposition. `item` names
/// the entry of the sign-split shifted profile (atoms first, then tails);
/// `part_index` points into the atoms or tails of K1 (below) or K2 (above).
struct SupportTag {
    bool is_tail = false;
    std::size_t item = 0;
    Side side = Side::at;
    std::size_t part_index = 0;
    /// Multiplicity of an atom item (tails are always below or above).
    Multiplicity mult = Multiplicity::infinite();
};

/// T = alpha I - K1 + K2 with K1 K2 = 0 and K1 <= alpha I.
struct PositiveDecomposition {
    double alpha;
    SpectralProfile K1;
    SpectralProfile K2;
    std::vector<SupportTag> tags;

    /// Spectrum of alpha - K1 + K2 rebuilt from the tags, tails enumerated up to
    /// index bound and infinite atoms repeated bound times (sorted).
    [[nodiscard]] std::vector<double> reconstruct(Index bound) const;
};

PositiveDecomposition an_closure_decomposition(const SpectralProfile& p);

/// alpha I + compact part - finite part (AN form) or
/// beta I - compact part + finite part (AM form).
struct Triple {
    double alpha;
    SpectralProfile compact_part;
    /// (deficit or excess relative to alpha, multiplicity).
    std::vector<Atom> finite_part;
};
Triple an_triple(const SpectralProfile& p);
Triple am_triple(const SpectralProfile& p);

MembershipReport membership_general(const ShiftedDiagonal& t);

struct AlphaWK {
    double alpha;
    ShiftedDiagonal W;
    ShiftedDiagonal K;
    /// gram(K) has essential spectrum {0}.
    bool k_compact;
};
AlphaWK structure_alpha_w_k(const ShiftedDiagonal& t);

struct FredholmReport {
    std::optional<Multiplicity> kernel_dim;  // empty = 0
    bool range_closed;
    bool left_semi_fredholm;
    double inf_nonzero_modulus;
    bool corollary_applies;
    bool corollary_holds;
    std::string certificate;
};
FredholmReport fredholm_report(const ShiftedDiagonal& t);

struct DirectSumVerdict {
    bool in_closure;
    std::string reason;
};
DirectSumVerdict direct_sum_membership(const SpectralProfile& a, const SpectralProfile& b);

struct TwoOfThree {
    bool in_closure_T;
    bool in_closure_Tstar;
    bool ess_equal;
    bool consistent;
};
TwoOfThree two_of_three(const ShiftedDiagonal& t);

/// Membership of the product a∘b; precondition failures raise ContractError
/// and a non-member product raises TheoremViolation.
bool product_membership(const ShiftedDiagonal& a, const ShiftedDiagonal& b);

/// True iff sigma_ess(p) ⊆ {alpha, -alpha} with {alpha} = sigma_ess(|p|).
bool selfadjoint_ess_pair_check(const SpectralProfile& p);

/// T = alpha W - K1 + K2 for a normal (Identity-map) operator in the closure.
struct NormalStructure {
    double alpha;
    ShiftedDiagonal W;
    ShiftedDiagonal K1;
    ShiftedDiagonal K2;
};
/// Real weights required (ContractError otherwise); NotMemberError outside the closure.
NormalStructure selfadjoint_structure(const ShiftedDiagonal& t);
/// Identity map required (ContractError otherwise); NotMemberError outside the closure.
NormalStructure normal_structure(const ShiftedDiagonal& t);

} // namespace ancl
