// SPDX-License-Identifier: Apache-2.0
#include "ancl/catalog.hpp"
#include "ancl/errors.hpp"

#include "doctest.h"

using namespace ancl;

TEST_CASE("catalog entries classify as expected") {
    CHECK(catalog_names().size() == 8);
    for (const std::string& name : catalog_names()) {
        const NamedExample ex = catalog_build(name);
        CAPTURE(name);
        const MembershipReport r = membership_general(ex.op);
        CHECK(catalog_mismatches(ex, r).empty());
        CHECK(r.in_AN_closure == r.in_AM_closure);
        if (r.in_AN) CHECK(r.in_AN_closure);
        if (r.in_AM) CHECK(r.in_AM_closure);
    }
}

TEST_CASE("catalog lookups") {
    CHECK_THROWS_AS(catalog_build("nope"), LookupError);
    CHECK_THROWS_AS(report_flag(MembershipReport{}, "in_XY"), LookupError);
    const NamedExample s = catalog_build("sum-counterexample");
    CHECK(s.op.weights().entry(1) == Complex(2.0));
    CHECK(s.op.weights().entry(2) == Complex(0.0));
    const TwoOfThree t = two_of_three(catalog_build("stretch-isometry").op);
    CHECK(t.consistent);
    CHECK_FALSE(t.ess_equal);
}
