// SPDX-License-Identifier: Apache-2.0
#include "ancl/catalog.hpp"
#include "ancl/verify.hpp"

#include "builders.hpp"
#include "doctest.h"

using namespace ancl;
using namespace testkit;

namespace {

std::string failures(const std::vector<CheckResult>& rs) {
    std::string out;
    for (const CheckResult& r : rs)
        if (r.status == CheckStatus::fail) out += r.name + ": " + r.detail + "\n";
    return out;
}

} // namespace

TEST_CASE("verify passes on every catalog entry") {
    for (const std::string& name : catalog_names()) {
        CAPTURE(name);
        const auto rs = verify_operator(catalog_build(name).op);
        CHECK(failures(rs) == "");
        CHECK(rs.size() >= 8);
    }
}

TEST_CASE("verify on profiles and weighted shifts") {
    const SpectralProfile signed_p({{-1.0, Multiplicity::infinite()}, {0.5, Multiplicity::finite(1)}},
                                   {make_tail("1 - 1/n", 1, Direction::increasing)});
    CHECK(failures(verify_profile(signed_p)) == "");
    CHECK(failures(verify_profile(SpectralProfile({}, {make_tail("2 + 1/n^2", 2, Direction::decreasing)}))) == "");
    const ShiftedDiagonal ws(IndexMap::shift(1), tail_weights("1 + 1/n", 1, Direction::decreasing, Complex(0, 1)));
    const auto rs = verify_operator(ws);
    CHECK(failures(rs) == "");
    CHECK(status_name(CheckStatus::skipped) == std::string("skipped"));
}
