// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "ancl/index_map.hpp"
#include "ancl/spectra.hpp"
#include "ancl/weights.hpp"

#include <string>
#include <vector>

namespace ancl {

/// T e_n = d_n e_{map(n)} where map(n) is defined, T e_n = 0 otherwise.
class ShiftedDiagonal {
public:
    ShiftedDiagonal(IndexMap map, WeightSeq weights) : map_(std::move(map)), weights_(std::move(weights)) {}

    [[nodiscard]] const IndexMap& map() const noexcept { return map_; }
    [[nodiscard]] const WeightSeq& weights() const noexcept { return weights_; }

    /// Image index and coefficient of e_n; empty when T e_n = 0 by the map.
    [[nodiscard]] std::optional<std::pair<Index, Complex>> column(Index n) const;
    [[nodiscard]] bool is_diagonal() const { return map_.kind() == IndexMap::Kind::identity; }

    [[nodiscard]] std::string canonical() const { return map_.canonical() + "|" + weights_.canonical(); }
    friend bool operator==(const ShiftedDiagonal& a, const ShiftedDiagonal& b) { return a.canonical() == b.canonical(); }

private:
    IndexMap map_;
    WeightSeq weights_;
};

ShiftedDiagonal diagonal(const WeightSeq& w);

/// Coordinates of T x (x padded with zeros) up to index dim.
std::vector<Complex> apply(const ShiftedDiagonal& t, const std::vector<Complex>& x, Index dim);

/// True when both operators send e_n to the same vector (within tol) for n <= up_to.
bool actions_agree(const ShiftedDiagonal& a, const ShiftedDiagonal& b, Index up_to, double tol = 1e-9);

ShiftedDiagonal adjoint(const ShiftedDiagonal& t);
/// a after b.
ShiftedDiagonal compose(const ShiftedDiagonal& a, const ShiftedDiagonal& b);
/// Requires structurally equal index maps; UnsupportedSumError otherwise.
ShiftedDiagonal add(const ShiftedDiagonal& a, const ShiftedDiagonal& b);
ShiftedDiagonal scale(const ShiftedDiagonal& t, Complex c);
ShiftedDiagonal direct_sum(const ShiftedDiagonal& a, const ShiftedDiagonal& b);

/// Eigenvalue profile of T*T.
SpectralProfile gram(const ShiftedDiagonal& t);
/// Eigenvalue profile of TT*.
SpectralProfile cogram(const ShiftedDiagonal& t);

struct Modulus {
    ShiftedDiagonal diagonal;
    SpectralProfile profile;
};
Modulus modulus(const ShiftedDiagonal& t);

/// Profile of |T| read directly from |d_n| (domain gaps contribute zeros),
/// independent of the square-root route through gram.
SpectralProfile modulus_profile_direct(const ShiftedDiagonal& t);

struct PolarParts {
    ShiftedDiagonal isometry_part;
    ShiftedDiagonal modulus_part;
    SpectralProfile modulus_profile;
};
PolarParts polar_decompose(const ShiftedDiagonal& t);

/// sup |d_n| over the domain.
double operator_norm(const ShiftedDiagonal& t);

/// Dimension of N(T); empty when the kernel is trivial.
std::optional<Multiplicity> kernel_dimension(const ShiftedDiagonal& t);

struct NormalBlock {
    double lambda;
    std::vector<Index> indices;
    std::vector<Complex> phases;
};
/// Groups e_1..e_depth by |d_n| (tolerance) with the unimodular phases of each
/// block. Requires an Identity-map operator.
std::vector<NormalBlock> normal_block_decomposition(const ShiftedDiagonal& t, Index depth);

} // namespace ancl
