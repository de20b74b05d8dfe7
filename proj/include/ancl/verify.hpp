// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "ancl/operators.hpp"
#include "ancl/spectra.hpp"

#include <string>
#include <vector>

namespace ancl {

enum class CheckStatus { pass, fail, skipped };

struct CheckResult {
    std::string name;
    CheckStatus status;
    std::string detail;
};

/// Runs the invariant checks that apply to an operator (normal forms,
/// adjoint and polar identities, membership equivalences, structure
/// reconstructions, Fredholm corollary, finite-section bound).
std::vector<CheckResult> verify_operator(const ShiftedDiagonal& t);

/// Runs the checks that apply to a positive or signed profile.
std::vector<CheckResult> verify_profile(const SpectralProfile& p);

bool all_passed(const std::vector<CheckResult>& results);
const char* status_name(CheckStatus s);

} // namespace ancl
