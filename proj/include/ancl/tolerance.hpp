// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>

namespace ancl {

/// Default identity tolerance for spectral points.
inline constexpr double kDefaultTolerance = 1e-9;

/// Weights with modulus at or below this are treated as exact zeros.
inline constexpr double kZeroWeight = 1e-14;

/// Process-wide identity tolerance. Set it once, before any values are
/// shared between threads; every operation reads it but never writes it.
double tolerance() noexcept;
void set_tolerance(double tau);

/// Restores the previous tolerance on scope exit.
class ScopedTolerance {
public:
    explicit ScopedTolerance(double tau) : saved_(tolerance()) { set_tolerance(tau); }
    ~ScopedTolerance() { set_tolerance(saved_); }
    ScopedTolerance(const ScopedTolerance&) = delete;
    ScopedTolerance& operator=(const ScopedTolerance&) = delete;

private:
    double saved_;
};

inline bool same_point(double a, double b) noexcept { return std::abs(a - b) <= tolerance(); }

} // namespace ancl
