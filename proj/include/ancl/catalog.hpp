// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "ancl/classify.hpp"
#include "ancl/operators.hpp"

#include <map>
#include <string>
#include <vector>

namespace ancl {

/// Named operator with the membership flags it is known to have.
struct NamedExample {
    std::string name;
    ShiftedDiagonal op;
    /// Flag name -> expected value; flags not listed are unconstrained.
    std::map<std::string, bool> expected;
    /// Expected certificate points of the closure test, when pinned.
    std::vector<double> closure_points;
    std::string summary;
};

/// Entry names in a fixed order.
const std::vector<std::string>& catalog_names();

/// LookupError for unknown names.
NamedExample catalog_build(const std::string& name);

/// Value of a MembershipReport flag by name; LookupError for unknown names.
bool report_flag(const MembershipReport& r, const std::string& flag);

/// Human-readable mismatches between a report and the example's expectations.
std::vector<std::string> catalog_mismatches(const NamedExample& ex, const MembershipReport& r);

} // namespace ancl
