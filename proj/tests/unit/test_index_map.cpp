// SPDX-License-Identifier: Apache-2.0
#include "ancl/errors.hpp"
#include "ancl/index_map.hpp"

#include "doctest.h"
#include "random_gen.hpp"

#include <random>
#include <set>

using namespace ancl;
using testkit::random_map;

namespace {

// Reference semantics straight from the constructor definitions.
std::optional<Index> ref_eval(const IndexMap& f, Index n);

std::optional<Index> ref_inverse(const IndexMap& f, Index m) {
    // Brute-force preimage search; every map here moves indices by a bounded factor.
    for (Index n = 1; n <= 4 * m + 64; ++n) {
        if (ref_eval(f, n) == m) return n;
    }
    return std::nullopt;
}

std::optional<Index> ref_eval(const IndexMap& f, Index n) {
    switch (f.kind()) {
    case IndexMap::Kind::identity:
        return n;
    case IndexMap::Kind::shift:
        return n + f.param();
    case IndexMap::Kind::stretch:
        return f.param() * (n - 1) + 1;
    case IndexMap::Kind::table:
        if (n > f.param()) return n;
        for (auto [a, b] : f.pairs()) {
            if (a == n) return b;
        }
        return std::nullopt;
    case IndexMap::Kind::inverse:
        return ref_inverse(f.first(), n);
    case IndexMap::Kind::compose: {
        auto mid = ref_eval(f.second(), n);
        if (!mid) return std::nullopt;
        return ref_eval(f.first(), *mid);
    }
    case IndexMap::Kind::interleave:
        if (n % 2 == 1) {
            auto v = ref_eval(f.first(), (n + 1) / 2);
            return v ? std::optional<Index>(2 * *v - 1) : std::nullopt;
        } else {
            auto v = ref_eval(f.second(), n / 2);
            return v ? std::optional<Index>(2 * *v) : std::nullopt;
        }
    }
    return std::nullopt;
}

} // namespace

TEST_CASE("basic index maps") {
    CHECK(IndexMap::shift(2).eval(3) == 5);
    CHECK(IndexMap::stretch(2).eval(3) == 5);
    CHECK(IndexMap::stretch(2).inverse_eval(4) == std::nullopt);
    CHECK(IndexMap::shift(3).range_complement().elements == std::vector<Index>{1, 2, 3});
    CHECK(IndexMap::stretch(2).range_complement().infinite);
    CHECK(IndexMap::stretch(2).range_complement().contains(4));
    CHECK_FALSE(IndexMap::stretch(2).range_complement().contains(5));
    CHECK(IndexMap::identity().range_complement().empty());
    CHECK(IndexMap::table(3, {{1, 2}, {2, 3}, {3, 1}}).range_complement().empty());
    CHECK_THROWS_AS(IndexMap::table(3, {{1, 2}, {2, 2}}), ValidationError);
    CHECK_THROWS_AS(IndexMap::shift(0), ValidationError);
    CHECK_THROWS_AS(IndexMap::stretch(1), ValidationError);
}

TEST_CASE("normalization rules") {
    CHECK(IndexMap::compose(IndexMap::shift(1), IndexMap::shift(2)) == IndexMap::shift(3));
    CHECK(IndexMap::inverse(IndexMap::inverse(IndexMap::stretch(2))) == IndexMap::stretch(2));
    CHECK(IndexMap::compose(IndexMap::inverse(IndexMap::stretch(2)), IndexMap::stretch(2)) == IndexMap::identity());
    CHECK_FALSE(IndexMap::compose(IndexMap::stretch(2), IndexMap::inverse(IndexMap::stretch(2))) == IndexMap::identity());
    CHECK(IndexMap::interleave(IndexMap::identity(), IndexMap::identity()) == IndexMap::identity());
    CHECK(IndexMap::interleave(IndexMap::shift(2), IndexMap::shift(2)) == IndexMap::shift(4));
}

TEST_CASE("normal form agrees with reference semantics on random maps") {
    std::mt19937_64 rng(20261015);
    for (int trial = 0; trial < 200; ++trial) {
        const IndexMap f = random_map(rng, 2);
        CAPTURE(f.canonical());
        std::set<Index> seen;
        for (Index n = 1; n <= 300; ++n) {
            const auto v = f.eval(n);
            REQUIRE(v == ref_eval(f, n));
            if (v) {
                REQUIRE(seen.insert(*v).second);
                REQUIRE(f.inverse_eval(*v) == n);
            }
        }
        const IndexSet dom = f.domain_complement();
        const IndexSet ran = f.range_complement();
        for (Index n = 1; n <= 100; ++n) {
            REQUIRE(dom.contains(n) == !ref_eval(f, n).has_value());
            REQUIRE(ran.contains(n) == !ref_inverse(f, n).has_value());
        }
        if (!dom.infinite) {
            for (Index n : dom.elements) REQUIRE_FALSE(ref_eval(f, n).has_value());
            for (Index n = 1; n <= 300; ++n) {
                const bool listed = std::find(dom.elements.begin(), dom.elements.end(), n) != dom.elements.end();
                REQUIRE(listed == !ref_eval(f, n).has_value());
            }
        }
    }
}
