// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "ancl/spectra.hpp"

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace ancl {

/// A set of positive indices that is either finite (listed) or infinite
/// (described by a membership predicate).
struct IndexSet {
    bool infinite = false;
    std::vector<Index> elements;  // sorted; only meaningful when finite
    std::function<bool(Index)> contains;

    [[nodiscard]] bool empty() const { return !infinite && elements.empty(); }
    /// Cardinality as a multiplicity; empty sets have no multiplicity.
    [[nodiscard]] std::optional<Multiplicity> size() const;
};

/// One residue class of a periodic affine normal form. For n = P*j + r,
/// r = residue + 1 and n >= from, the map sends n to step*j + offset, or is
/// undefined there.
struct MapPiece {
    bool defined = false;
    Index step = 0;
    Index offset = 0;
    Index from = 1;
};

struct MapNormalForm {
    Index period = 1;
    std::vector<MapPiece> pieces;

    [[nodiscard]] Index max_from() const;
    /// Same map described with period period*k.
    [[nodiscard]] MapNormalForm refined(Index k) const;
};

/// Injective partial map n -> sigma(n) on the positive integers.
class IndexMap {
public:
    enum class Kind { identity, shift, stretch, table, inverse, compose, interleave };

    static IndexMap identity();
    /// n -> n + k, k >= 1.
    static IndexMap shift(Index k);
    /// n -> k(n - 1) + 1, k >= 2.
    static IndexMap stretch(Index k);
    /// Injective pairs (n, v) with 1 <= n, v <= size; indices <= size without a
    /// pair are outside the domain; identity beyond size.
    static IndexMap table(Index size, std::vector<std::pair<Index, Index>> pairs);
    static IndexMap inverse(const IndexMap& f);
    static IndexMap compose(const IndexMap& outer, const IndexMap& inner);
    static IndexMap interleave(const IndexMap& odd, const IndexMap& even);

    [[nodiscard]] Kind kind() const;
    [[nodiscard]] Index param() const;
    [[nodiscard]] const std::vector<std::pair<Index, Index>>& pairs() const;
    /// Operands of inverse/compose/interleave (inverse and compose: first is
    /// the argument or the outer map).
    [[nodiscard]] IndexMap first() const;
    [[nodiscard]] IndexMap second() const;

    [[nodiscard]] std::optional<Index> eval(Index n) const;
    [[nodiscard]] std::optional<Index> inverse_eval(Index m) const;

    [[nodiscard]] IndexSet domain_complement() const;
    [[nodiscard]] IndexSet range_complement() const;
    [[nodiscard]] bool is_total() const { return domain_complement().empty(); }

    /// Periodic affine description; throws ContractError when the map is too
    /// irregular (period beyond 2^16).
    [[nodiscard]] const MapNormalForm& normal_form() const;

    [[nodiscard]] const std::string& canonical() const;
    friend bool operator==(const IndexMap& a, const IndexMap& b) { return a.canonical() == b.canonical(); }

    struct Node;

private:
    explicit IndexMap(std::shared_ptr<const Node> node);
    std::shared_ptr<const Node> node_;
};

/// Largest period any normal form may use.
inline constexpr Index kMaxPeriod = Index{1} << 16;

} // namespace ancl
