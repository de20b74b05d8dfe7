// SPDX-License-Identifier: Apache-2.0
#include "ancl/classify.hpp"
#include "ancl/errors.hpp"
#include "ancl/tolerance.hpp"

#include "builders.hpp"
#include "doctest.h"

using namespace ancl;
using namespace testkit;

namespace {

const Direction inc = Direction::increasing;
const Direction dec = Direction::decreasing;

SpectralProfile tail_profile(const char* e, double limit, Direction d) { return SpectralProfile({}, {make_tail(e, limit, d)}); }

ShiftedDiagonal stretch_isometry() { return ShiftedDiagonal(IndexMap::stretch(2), WeightSeq::constant(1.0)); }

ShiftedDiagonal alternating(const WeightSeq& odd_minus_free) {
    return diagonal(WeightSeq::interleave(odd_minus_free, WeightSeq::scale(odd_minus_free, -1.0)));
}

} // namespace

TEST_CASE("classify positive profiles") {
    const MembershipReport a = classify_positive(tail_profile("1 - 1/n", 1, inc));
    CHECK(a.in_AN_closure);
    CHECK_FALSE(a.in_AN);
    CHECK(a.in_AM);
    CHECK_FALSE(a.norm_attaining);
    CHECK(a.min_attaining);

    const MembershipReport b = classify_positive(SpectralProfile({{1.0, Multiplicity::infinite()}}, {}));
    CHECK(b.norm_attaining);
    CHECK(b.min_attaining);
    CHECK(b.in_AN);
    CHECK(b.in_AM);
    CHECK(b.in_AN_closure);
    CHECK(b.in_AM_closure);

    const MembershipReport c = classify_positive(tail_profile("1 + 1/n", 1, dec));
    CHECK(c.in_AN);
    CHECK_FALSE(c.in_AM);
    CHECK_FALSE(c.min_attaining);
    CHECK(c.norm_attaining);

    const MembershipReport proj = classify_positive(SpectralProfile({{0.0, Multiplicity::infinite()}, {1.0, Multiplicity::infinite()}}, {}));
    CHECK_FALSE(proj.in_AN_closure);
    CHECK_FALSE(proj.in_AM_closure);
    CHECK(proj.certificates.at("in_AN_closure").points == std::vector<double>{0.0, 1.0});

    CHECK_THROWS_AS(classify_positive(tail_profile("-1/n", 0, inc)), ContractError);
}

TEST_CASE("AN-closure decomposition") {
    const PositiveDecomposition d = an_closure_decomposition(tail_profile("1 - 1/n", 1, inc));
    CHECK(d.alpha == 1.0);
    REQUIRE(d.K1.tails().size() == 1);
    for (Index n = 1; n <= 20; ++n) CHECK(d.K1.tails()[0].eval(n) == doctest::Approx(1.0 / n));
    CHECK(d.K2.tails().empty());
    REQUIRE(d.K2.atoms().size() == 1);
    CHECK(d.K2.atoms()[0].value == 0.0);

    const PositiveDecomposition id = an_closure_decomposition(SpectralProfile({{1.0, Multiplicity::infinite()}}, {}));
    CHECK(id.alpha == 1.0);
    CHECK(id.K1.sup() == 0.0);
    CHECK(id.K2.sup() == 0.0);

    const SpectralProfile both = merge_profiles(tail_profile("1 - 1/n", 1, inc), tail_profile("1 + 1/n", 1, dec));
    const PositiveDecomposition m = an_closure_decomposition(both);
    CHECK(m.K1.tails().size() == 1);
    CHECK(m.K2.tails().size() == 1);
    CHECK(m.K2.tails()[0].eval(4) == doctest::Approx(0.25));
    CHECK(same_multiset(m.reconstruct(500), both.sample(500), {}, 1e-9));

    CHECK_THROWS_AS(an_closure_decomposition(SpectralProfile({{0.0, Multiplicity::infinite()}, {1.0, Multiplicity::infinite()}}, {})),
                    NotMemberError);
}

TEST_CASE("triples") {
    const Triple t = an_triple(tail_profile("1 + 1/n", 1, dec));
    CHECK(t.alpha == 1.0);
    CHECK(t.finite_part.empty());
    CHECK(t.compact_part.tails().size() == 1);

    const Triple u = an_triple(SpectralProfile({{0.5, Multiplicity::finite(2)}, {1.0, Multiplicity::infinite()}}, {}));
    CHECK(u.alpha == 1.0);
    REQUIRE(u.finite_part.size() == 1);
    CHECK(u.finite_part[0].value == 0.5);
    CHECK(u.finite_part[0].mult == Multiplicity::finite(2));

    const Triple v = am_triple(tail_profile("1 - 1/n", 1, inc));
    CHECK(v.alpha == 1.0);
    CHECK(v.finite_part.empty());
    CHECK(v.compact_part.tails()[0].eval(5) == doctest::Approx(0.2));

    CHECK_THROWS_AS(an_triple(tail_profile("1 - 1/n", 1, inc)), NotMemberError);
    CHECK_THROWS_AS(am_triple(tail_profile("1 + 1/n", 1, dec)), NotMemberError);
}

TEST_CASE("general membership") {
    const MembershipReport s = membership_general(stretch_isometry());
    CHECK(s.in_AN_closure);
    CHECK(s.paths_agree);
    const MembershipReport sa = membership_general(adjoint(stretch_isometry()));
    CHECK_FALSE(sa.in_AN_closure);
    CHECK(sa.paths_agree);
    const ShiftedDiagonal proj = diagonal(WeightSeq::interleave(WeightSeq::constant(1.0), WeightSeq::constant(0.0)));
    CHECK_FALSE(membership_general(proj).in_AN_closure);

    const ShiftedDiagonal sum = add(alternating(WeightSeq::constant(1.0)), const_diag(1.0));
    const MembershipReport r = membership_general(sum);
    CHECK_FALSE(r.in_AN_closure);
    CHECK(r.certificates.at("in_AN_closure").points == std::vector<double>{0.0, 2.0});
    CHECK(r.certificates.at("in_AN_closure").detail.find("{0, 4}") != std::string::npos);
}

TEST_CASE("alpha W + K structure") {
    const ShiftedDiagonal d = tail_diag("1 - 1/n", 1, inc);
    const AlphaWK s = structure_alpha_w_k(d);
    CHECK(s.alpha == 1.0);
    CHECK(s.k_compact);
    CHECK(s.W.weights().entry(1) == Complex(0.0));
    CHECK(s.K.weights().entry(1) == Complex(0.0));
    CHECK(s.K.weights().entry(4).real() == doctest::Approx(-0.25));
    CHECK(actions_agree(add(scale(s.W, s.alpha), s.K), d, 10000));

    const AlphaWK iso = structure_alpha_w_k(stretch_isometry());
    CHECK(iso.alpha == 1.0);
    CHECK(gram(iso.K).sup() == 0.0);

    const ShiftedDiagonal c = tail_diag("1/n", 0, dec);
    const AlphaWK comp = structure_alpha_w_k(c);
    CHECK(comp.alpha == 0.0);
    CHECK(actions_agree(comp.K, c, 1000));

    CHECK_THROWS_AS(structure_alpha_w_k(adjoint(stretch_isometry())), NotMemberError);
}

TEST_CASE("Fredholm report") {
    const FredholmReport a = fredholm_report(tail_diag("1 - 1/n", 1, inc));
    REQUIRE(a.kernel_dim.has_value());
    CHECK(*a.kernel_dim == Multiplicity::finite(1));
    CHECK(a.range_closed);
    CHECK(a.inf_nonzero_modulus == 0.5);
    CHECK(a.left_semi_fredholm);
    CHECK(a.corollary_applies);
    CHECK(a.corollary_holds);

    const FredholmReport b = fredholm_report(const_diag(1.0));
    CHECK_FALSE(b.kernel_dim.has_value());
    CHECK(b.range_closed);
    CHECK(b.left_semi_fredholm);

    const FredholmReport c = fredholm_report(tail_diag("1/n", 0, dec));
    CHECK_FALSE(c.kernel_dim.has_value());
    CHECK_FALSE(c.range_closed);
}

TEST_CASE("direct sums and two of three") {
    const SpectralProfile one({{1.0, Multiplicity::infinite()}}, {});
    const SpectralProfile four({{4.0, Multiplicity::infinite()}}, {});
    CHECK(direct_sum_membership(one, one).in_closure);
    CHECK_FALSE(direct_sum_membership(one, four).in_closure);
    CHECK_THROWS_AS(direct_sum_membership(one, merge_profiles(one, four)), ContractError);

    const TwoOfThree s = two_of_three(stretch_isometry());
    CHECK(s.in_closure_T);
    CHECK_FALSE(s.in_closure_Tstar);
    CHECK_FALSE(s.ess_equal);
    CHECK(s.consistent);

    const TwoOfThree d = two_of_three(tail_diag("1 - 1/n", 1, inc));
    CHECK(d.in_closure_T);
    CHECK(d.in_closure_Tstar);
    CHECK(d.ess_equal);

    const TwoOfThree k = two_of_three(ShiftedDiagonal(IndexMap::shift(1), tail_weights("1/n", 0, dec)));
    CHECK(k.in_closure_T);
    CHECK(k.in_closure_Tstar);
    CHECK(k.ess_equal);
}

TEST_CASE("products") {
    CHECK(product_membership(tail_diag("1 - 1/n", 1, inc), tail_diag("1 + 1/n", 1, dec)));
    const ShiftedDiagonal p = compose(tail_diag("1 - 1/n", 1, inc), tail_diag("1 + 1/n", 1, dec));
    CHECK(gram(p).essential_points() == std::vector<double>{1.0});
    CHECK(product_membership(stretch_isometry(), tail_diag("1 - 1/n", 1, inc)));
    CHECK_THROWS_AS(product_membership(adjoint(stretch_isometry()), const_diag(1.0)), ContractError);
}

TEST_CASE("self-adjoint and normal structure") {
    const ShiftedDiagonal t = alternating(tail_weights("1 - 1/(2*n - 1)", 1, inc));
    const NormalStructure s = selfadjoint_structure(t);
    CHECK(s.alpha == 1.0);
    for (Index n = 1; n <= 10000; ++n) {
        const Complex rebuilt = s.alpha * s.W.weights().entry(n) - s.K1.weights().entry(n) + s.K2.weights().entry(n);
        REQUIRE(std::abs(rebuilt - t.weights().entry(n)) <= 1e-9);
        REQUIRE((std::abs(s.K1.weights().entry(n)) == 0.0 || std::abs(s.K2.weights().entry(n)) == 0.0));
    }
    CHECK(selfadjoint_ess_pair_check(t.weights().real_profile()));
    CHECK(selfadjoint_ess_pair_check(tail_profile("1 - 1/n", 1, inc)));

    const NormalStructure id = selfadjoint_structure(const_diag(1.0));
    CHECK(id.alpha == 1.0);
    CHECK(id.K1.weights().entry(7) == Complex(0.0));
    CHECK(id.K2.weights().entry(7) == Complex(0.0));

    const NormalStructure up = selfadjoint_structure(tail_diag("1 + 1/n", 1, dec));
    CHECK(up.K1.weights().entry(3) == Complex(0.0));
    CHECK(up.K2.weights().entry(4).real() == doctest::Approx(0.25));

    const NormalStructure c = normal_structure(tail_diag("1 - 1/n", 1, inc, Complex(0, 1)));
    CHECK(c.alpha == 1.0);
    CHECK(c.W.weights().entry(1) == Complex(0.0));
    CHECK(c.W.weights().entry(2) == Complex(0, 1));
    CHECK(std::abs(c.K1.weights().entry(4)) == doctest::Approx(0.25));

    CHECK_THROWS_AS(normal_structure(stretch_isometry()), ContractError);
    CHECK_THROWS_AS(selfadjoint_structure(tail_diag("1 - 1/n", 1, inc, Complex(0, 1))), ContractError);
    CHECK_THROWS_AS(selfadjoint_structure(diagonal(WeightSeq::interleave(WeightSeq::constant(1.0), WeightSeq::constant(0.0)))),
                    NotMemberError);
}
