// SPDX-License-Identifier: Apache-2.0
#include "ancl/errors.hpp"
#include "ancl/spectra.hpp"
#include "ancl/tolerance.hpp"

#include "doctest.h"

#include <cmath>

using namespace ancl;

namespace {

Tail tail(const char* expr, Index start, double limit, Direction d, Index mono = 0) {
    return Tail(Expr::parse(expr), start, limit, d, mono == 0 ? start : mono);
}

SpectralProfile single_tail(const char* expr, double limit, Direction d, Index start = 1) {
    return SpectralProfile({}, {tail(expr, start, limit, d)});
}

} // namespace

TEST_CASE("tail evaluation") {
    CHECK(tail("1 - 1/n", 1, 1, Direction::increasing).eval(10) == doctest::Approx(0.9).epsilon(1e-15));
    CHECK(tail("2 + 3*(1/2)^n", 1, 2, Direction::decreasing).eval(2) == doctest::Approx(2.75).epsilon(1e-15));
    CHECK_THROWS_AS((void)tail("1 - 1/n", 3, 1, Direction::increasing).eval(2), DomainError);
}

TEST_CASE("tail certification failures") {
    CHECK_THROWS_AS(tail("1 - 1/n", 1, 2, Direction::increasing), CertificationError);
    CHECK_THROWS_AS(tail("1 - 1/n", 1, 1, Direction::decreasing), CertificationError);
    CHECK_THROWS_AS(tail("1/(n - 5)", 1, 0, Direction::decreasing), CertificationError);
    CHECK_THROWS_AS(tail("n", 1, 0, Direction::increasing), CertificationError);
    CHECK_THROWS_AS(tail("1/log", 1, 0, Direction::increasing), ParseError);
    CHECK_NOTHROW(tail("1/(n - 5)", 6, 0, Direction::decreasing));
    CHECK_NOTHROW(tail("abs(n - 3)/n", 1, 1, Direction::increasing, 3));
}

TEST_CASE("tail range and attainment") {
    const TailRange r = tail("1 - 1/n", 1, 1, Direction::increasing).range();
    CHECK(r.inf == 0.0);
    CHECK(r.inf_attained);
    CHECK(r.sup == 1.0);
    CHECK_FALSE(r.sup_attained);
}

TEST_CASE("profile validation") {
    CHECK_THROWS_AS(SpectralProfile({{1.0, Multiplicity::finite(2)}}, {}), ValidationError);
    CHECK_THROWS_AS(Multiplicity::finite(0), ValidationError);
    CHECK_NOTHROW(SpectralProfile({{1.0, Multiplicity::infinite()}}, {}));
}

TEST_CASE("spectrum report of 1 - 1/n") {
    const SpectrumReport r = spectrum_report(single_tail("1 - 1/n", 1, Direction::increasing));
    REQUIRE(r.sigma_ess.size() == 1);
    CHECK(r.sigma_ess[0] == 1.0);
    CHECK(r.norm == 1.0);
    CHECK_FALSE(r.norm_attained);
    CHECK(r.min_modulus == 0.0);
    CHECK(r.min_attained);
    CHECK(r.ess_min_modulus == 1.0);
}

TEST_CASE("abs splits a sign-changing tail") {
    const SpectralProfile a = abs_profile(single_tail("1 - 2/n", 1, Direction::increasing));
    REQUIRE(a.atoms().size() == 2);
    CHECK(a.atoms()[0].value == 1.0);
    CHECK(a.atoms()[0].mult == Multiplicity::finite(1));
    CHECK(a.atoms()[1].value == 0.0);
    CHECK(a.atoms()[1].mult == Multiplicity::finite(1));
    REQUIRE(a.tails().size() == 1);
    CHECK(a.tails()[0].start() == 3);
    CHECK(a.tails()[0].limit() == 1.0);

    const SpectralProfile b = abs_profile(single_tail("-1/n", 0, Direction::increasing));
    REQUIRE(b.tails().size() == 1);
    CHECK(b.tails()[0].direction() == Direction::decreasing);
    CHECK(b.tails()[0].eval(4) == 0.25);
}

TEST_CASE("polynomial calculus") {
    const SpectralProfile p = single_tail("1 + 1/n", 1, Direction::decreasing);
    const SpectralProfile q = polynomial_apply(p, {0, 1, 1});
    CHECK(q.tails()[0].eval(10) == doctest::Approx(2.31).epsilon(1e-14));
    CHECK(q.tails()[0].limit() == 2.0);
    const SpectralProfile d = polynomial_apply(single_tail("1 - 1/n", 1, Direction::increasing), {0, 2});
    CHECK(d.tails()[0].eval(4) == 1.5);
    CHECK(d.tails()[0].limit() == 2.0);
    CHECK_THROWS_AS(polynomial_apply(p, {1, -1}), ContractError);
}

TEST_CASE("shift and scale") {
    const SpectralProfile p = single_tail("1 - 1/n", 1, Direction::increasing);
    CHECK_THROWS_AS(shift_scale(p, -1, 0), ContractError);
    const SpectralProfile z = shift_scale(p, 0, 3);
    REQUIRE(z.atoms().size() == 1);
    CHECK(z.atoms()[0].value == 3.0);
    CHECK(z.atoms()[0].mult.is_infinite());
    const SpectralProfile s = shift_scale(p, 2, -1);
    CHECK(s.tails()[0].eval(2) == 0.0);
    CHECK(s.tails()[0].limit() == 1.0);
}

TEST_CASE("square and square root") {
    const SpectralProfile p = single_tail("1 - 2/n", 1, Direction::increasing);
    const SpectralProfile sq = square_profile(p);
    CHECK(sq.tails()[0].eval(4) == 0.25);
    CHECK_THROWS_AS(sqrt_profile(p), DomainError);
    const SpectralProfile rt = sqrt_profile(sq);
    CHECK(rt.tails()[0].eval(4) == 0.5);
}

TEST_CASE("positive and negative parts") {
    const SpectralProfile p({{-2.0, Multiplicity::finite(1)}, {3.0, Multiplicity::infinite()}},
                            {tail("-1/n", 1, 0, Direction::increasing)});
    const auto [pos, neg] = pos_neg_parts(p);
    CHECK(pos.sup() == 3.0);
    CHECK(neg.sup() == 2.0);
    CHECK(compactness_check(neg).is_compact);
    CHECK_FALSE(compactness_check(pos).is_compact);
}

TEST_CASE("fit_sequence") {
    const FittedSequence f = fit_sequence(Expr::parse("1 + (n - 3)^2/n^3"), 1, 1);
    REQUIRE(f.tail);
    CHECK(f.tail->direction() == Direction::decreasing);
    CHECK(f.tail->mono_from() >= 3);
    CHECK(f.leading.size() == static_cast<std::size_t>(f.tail->mono_from() - 1));
    const FittedSequence c = fit_sequence(Expr::parse("(1 - 1/n) + 1/n"), 1, 1);
    REQUIRE(c.constant);
    CHECK(*c.constant == 1.0);
}

TEST_CASE("multiplicities and sampling") {
    const SpectralProfile p({{0.5, Multiplicity::finite(2)}, {1.0, Multiplicity::infinite()}},
                            {tail("1 - 1/n", 1, 1, Direction::increasing)});
    CHECK(p.multiplicity_at(0.5) == Multiplicity::finite(3));
    CHECK(p.multiplicity_at(1.0)->is_infinite());
    CHECK_FALSE(p.multiplicity_at(0.25).has_value());
    CHECK(p.sample(4).size() == 2 + 4 + 4);
}
