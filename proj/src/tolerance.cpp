// SPDX-License-Identifier: Apache-2.0
#include "ancl/tolerance.hpp"

#include "ancl/errors.hpp"

#include <atomic>

namespace ancl {

namespace {
std::atomic<double> g_tolerance{kDefaultTolerance};
}

double tolerance() noexcept { return g_tolerance.load(std::memory_order_relaxed); }

void set_tolerance(double tau) {
    if (!(tau > 0.0) || tau > 1e-2) throw ContractError("tolerance must lie in (0, 1e-2]");
    g_tolerance.store(tau, std::memory_order_relaxed);
}

} // namespace ancl
