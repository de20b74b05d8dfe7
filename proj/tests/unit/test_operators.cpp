// SPDX-License-Identifier: Apache-2.0
#include "ancl/errors.hpp"
#include "ancl/operators.hpp"
#include "ancl/tolerance.hpp"

#include "builders.hpp"
#include "doctest.h"

using namespace ancl;
using namespace testkit;

namespace {

const Direction inc = Direction::increasing;
const Direction dec = Direction::decreasing;

ShiftedDiagonal stretch_isometry() { return ShiftedDiagonal(IndexMap::stretch(2), WeightSeq::constant(1.0)); }

std::vector<Complex> iota(int k) {
    std::vector<Complex> x;
    for (int i = 1; i <= k; ++i) x.emplace_back(static_cast<double>(i));
    return x;
}

bool has_atom(const SpectralProfile& p, double v, Multiplicity m) {
    for (const Atom& a : p.atoms()) {
        if (same_point(a.value, v) && a.mult == m) return true;
    }
    return false;
}

} // namespace

TEST_CASE("apply") {
    CHECK(apply(stretch_isometry(), iota(3), 6) == std::vector<Complex>{1, 0, 2, 0, 3, 0});
    CHECK(apply(const_diag(1.0), iota(4), 4) == iota(4));
    const auto y = apply(tail_diag("1 - 1/n", 1, inc), {1.0}, 1);
    CHECK(y[0] == Complex(0.0));
    CHECK_THROWS_AS(apply(const_diag(1.0), iota(4), 3), ContractError);
}

TEST_CASE("adjoint") {
    const ShiftedDiagonal s = adjoint(stretch_isometry());
    CHECK(apply(s, iota(6), 6) == std::vector<Complex>{1, 3, 5, 0, 0, 0});
    const ShiftedDiagonal d = tail_diag("1 - 1/n", 1, inc);
    CHECK(adjoint(d) == d);
    const ShiftedDiagonal shift(IndexMap::shift(1), WeightSeq::constant(1.0));
    CHECK(apply(adjoint(shift), {1.0}, 1)[0] == Complex(0.0));
    CHECK(actions_agree(adjoint(adjoint(s)), s, 10000));
    const ShiftedDiagonal c(IndexMap::interleave(IndexMap::shift(1), IndexMap::stretch(2)),
                            tail_weights("1 + 1/n", 1, dec, Complex(0, 1)));
    CHECK(actions_agree(adjoint(adjoint(c)), c, 10000));
}

TEST_CASE("compose") {
    const ShiftedDiagonal s1(IndexMap::shift(1), WeightSeq::constant(1.0));
    const ShiftedDiagonal s2(IndexMap::shift(2), WeightSeq::constant(1.0));
    CHECK(actions_agree(compose(s1, s2), ShiftedDiagonal(IndexMap::shift(3), WeightSeq::constant(1.0)), 1000));
    CHECK(actions_agree(compose(adjoint(stretch_isometry()), stretch_isometry()), const_diag(1.0), 100));
    const PolarParts p = polar_decompose(ShiftedDiagonal(IndexMap::shift(1), tail_weights("1 - 1/n", 1, inc)));
    CHECK(actions_agree(compose(p.isometry_part, p.modulus_part),
                        ShiftedDiagonal(IndexMap::shift(1), tail_weights("1 - 1/n", 1, inc)), 10000));
}

TEST_CASE("add") {
    const ShiftedDiagonal alt = diagonal(WeightSeq::interleave(WeightSeq::constant(1.0), WeightSeq::constant(-1.0)));
    const ShiftedDiagonal sum = add(alt, const_diag(1.0));
    CHECK(apply(sum, iota(4), 4) == std::vector<Complex>{2, 0, 6, 0});
    const ShiftedDiagonal d = tail_diag("1 - 1/n", 1, inc);
    CHECK(actions_agree(add(d, const_diag(0.0)), d, 1000));
    const SpectralProfile one = gram(add(d, tail_diag("1/n", 0, dec)));
    REQUIRE(one.atoms().size() == 1);
    CHECK(one.atoms()[0].value == 1.0);
    CHECK(one.atoms()[0].mult.is_infinite());
    CHECK(one.tails().empty());
    CHECK_THROWS_AS(add(d, stretch_isometry()), UnsupportedSumError);
}

TEST_CASE("gram and cogram") {
    const SpectralProfile g = gram(stretch_isometry());
    CHECK(g.atoms().size() == 1);
    CHECK(has_atom(g, 1.0, Multiplicity::infinite()));
    const SpectralProfile c = cogram(stretch_isometry());
    CHECK(has_atom(c, 1.0, Multiplicity::infinite()));
    CHECK(has_atom(c, 0.0, Multiplicity::infinite()));
    const ShiftedDiagonal shift(IndexMap::shift(1), WeightSeq::constant(1.0));
    CHECK(gram(shift).atoms().size() == 1);
    CHECK(has_atom(cogram(shift), 1.0, Multiplicity::infinite()));
    CHECK(has_atom(cogram(shift), 0.0, Multiplicity::finite(1)));
    const SpectralProfile sq = gram(tail_diag("1 - 1/n", 1, inc));
    REQUIRE(sq.tails().size() == 1);
    for (Index n = 1; n <= 50; ++n) CHECK(sq.tails()[0].eval(n) == doctest::Approx((1 - 1.0 / n) * (1 - 1.0 / n)));
}

TEST_CASE("modulus and polar decomposition") {
    CHECK(actions_agree(modulus(stretch_isometry()).diagonal, const_diag(1.0), 1000));
    CHECK(actions_agree(modulus(tail_diag("-1/n", 0, inc)).diagonal, tail_diag("1/n", 0, dec), 1000));
    const ShiftedDiagonal s2(IndexMap::shift(2), tail_weights("1 + 1/n", 1, dec));
    CHECK(actions_agree(modulus(s2).diagonal, tail_diag("1 + 1/n", 1, dec), 1000));

    const ShiftedDiagonal t = diagonal(WeightSeq::basic({-2.0, 3.0}, 0.0));
    const PolarParts p = polar_decompose(t);
    CHECK(actions_agree(p.isometry_part, diagonal(WeightSeq::basic({-1.0, 1.0}, 0.0)), 100));
    CHECK(actions_agree(p.modulus_part, diagonal(WeightSeq::basic({2.0, 3.0}, 0.0)), 100));

    const ShiftedDiagonal sh(IndexMap::shift(1), tail_weights("1 - 1/n", 1, inc));
    const PolarParts q = polar_decompose(sh);
    CHECK(actions_agree(q.isometry_part, ShiftedDiagonal(IndexMap::shift(1), WeightSeq::basic({0.0}, 1.0)), 1000));
    // W*W is the projection onto the complement of the kernel.
    const ShiftedDiagonal wsw = compose(adjoint(q.isometry_part), q.isometry_part);
    CHECK(actions_agree(wsw, diagonal(WeightSeq::basic({0.0}, 1.0)), 100));
}

TEST_CASE("direct sum") {
    CHECK(actions_agree(direct_sum(const_diag(1.0), const_diag(1.0)), const_diag(1.0), 100));
    const SpectralProfile g = gram(direct_sum(tail_diag("1 - 1/n", 1, inc), tail_diag("1 + 1/n", 1, dec)));
    CHECK(g.essential_points() == std::vector<double>{1.0});
    const SpectralProfile h = gram(direct_sum(const_diag(1.0), const_diag(2.0)));
    CHECK(h.essential_points() == std::vector<double>{1.0, 4.0});
}

TEST_CASE("normal blocks") {
    const ShiftedDiagonal t = diagonal(WeightSeq::basic({Complex(0, 1), Complex(0, -1), Complex(0, 2)}, 0.0));
    const auto blocks = normal_block_decomposition(t, 3);
    REQUIRE(blocks.size() == 2);
    CHECK(blocks[0].lambda == 1.0);
    CHECK(blocks[0].indices == std::vector<Index>{1, 2});
    CHECK(blocks[0].phases == std::vector<Complex>{Complex(0, 1), Complex(0, -1)});
    CHECK(blocks[1].lambda == 2.0);
    CHECK(normal_block_decomposition(const_diag(1.0), 10).size() == 1);
    CHECK_THROWS_AS(normal_block_decomposition(stretch_isometry(), 4), ContractError);
}

TEST_CASE("weight normal forms match pointwise entries") {
    const WeightSeq a = tail_weights("1 - 2/n", 1, inc, Complex(0, 1));
    const WeightSeq b = tail_weights("1 + 1/n^2", 1, dec, -1.0, {3.0, Complex(0, 1)});
    const IndexMap f = IndexMap::compose(IndexMap::inverse(IndexMap::stretch(3)), IndexMap::interleave(IndexMap::shift(2), IndexMap::stretch(2)));
    const std::vector<WeightSeq> seqs = {
        WeightSeq::interleave(a, b),
        WeightSeq::reindex(a, f),
        WeightSeq::mask(b, f),
        WeightSeq::mul(WeightSeq::reindex(a, f), WeightSeq::interleave(b, a)),
        WeightSeq::phase(WeightSeq::interleave(a, b)),
        WeightSeq::modulus_map(WeightSeq::interleave(a, b), WeightSeq::ModulusFn::abs),
        WeightSeq::modulus_map(a, WeightSeq::ModulusFn::deficit, 1.0),
        WeightSeq::modulus_map(b, WeightSeq::ModulusFn::excess, 1.0),
        WeightSeq::add(a, WeightSeq::constant(Complex(0, 2))),
        WeightSeq::conj(b),
    };
    for (const WeightSeq& w : seqs) {
        CAPTURE(w.canonical());
        const WeightNormalForm& nf = w.normal_form();
        for (Index n = 1; n <= 3000; ++n) {
            const auto v = nf_value(nf, n);
            if (v) REQUIRE(std::abs(*v - w.entry(n)) <= 1e-12);
        }
    }
    CHECK_THROWS_AS(WeightSeq::add(a, b), UnsupportedSumError);
}
