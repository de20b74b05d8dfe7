// SPDX-License-Identifier: Apache-2.0
#include "ancl/diagram.hpp"
#include "ancl/errors.hpp"

#include "builders.hpp"
#include "doctest.h"

#include <algorithm>

using namespace ancl;
using namespace testkit;

TEST_CASE("diagram side labels") {
    const SpectralProfile an({{0.5, Multiplicity::finite(2)}, {0.75, Multiplicity::finite(1)}, {1.0, Multiplicity::infinite()}},
                             {make_tail("1 + 1/n", 1, Direction::decreasing)});
    const DiagramSpec a = build_diagram(an);
    CHECK(a.left_label == "Finitely many");
    CHECK(a.right_label == "Atmost countable");
    CHECK(a.axis_min == 0.5);
    CHECK(a.axis_max == 2.0);
    CHECK(a.ess_min_modulus == 1.0);

    const DiagramSpec c = build_diagram(SpectralProfile({}, {make_tail("1 - 1/n", 1, Direction::increasing)}));
    CHECK(c.left_label == "Atmost countable");
    CHECK(c.right_label == "Finitely many");
    CHECK(c.caption.find("closure") != std::string::npos);

    CHECK_THROWS_AS(build_diagram(SpectralProfile({{-1.0, Multiplicity::infinite()}}, {})), ContractError);
}

TEST_CASE("diagram strokes and markers") {
    const DiagramSpec c = build_diagram(SpectralProfile({}, {make_tail("1 - 1/n^(2/3)", 1, Direction::increasing)}));
    CHECK(std::is_sorted(c.strokes.begin(), c.strokes.end()));
    const auto below = std::count_if(c.strokes.begin(), c.strokes.end(), [&](double v) { return v < c.ess_min_modulus; });
    CHECK(below <= 200);
    CHECK(below >= 100);
    for (double v : c.strokes) {
        CHECK(v >= c.axis_min);
        CHECK(v <= c.axis_max);
    }

    const DiagramSpec id = build_diagram(SpectralProfile({{1.0, Multiplicity::infinite()}}, {}));
    CHECK(id.min_modulus == 1.0);
    CHECK(id.ess_min_modulus == 1.0);
    CHECK(id.norm == 1.0);
    const std::string text = render_ascii(id);
    CHECK(std::count(text.begin(), text.end(), '*') == 2);  // marker row plus legend

    const std::string svg = render_svg(c);
    CHECK(svg == render_svg(build_diagram(SpectralProfile({}, {make_tail("1 - 1/n^(2/3)", 1, Direction::increasing)}))));
    CHECK(svg.rfind("<?xml", 0) == 0);
    CHECK(svg.find("Atmost countable") != std::string::npos);
    CHECK(svg.find("#e67e22") != std::string::npos);
}
