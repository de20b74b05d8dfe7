// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "ancl/spectra.hpp"

namespace ancl::detail {

inline Index floor_div(Index a, Index b) {
    Index q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

inline Index ceil_div(Index a, Index b) { return -floor_div(-a, b); }

inline Index mod(Index a, Index b) { return ((a % b) + b) % b; }

/// First index >= lower congruent to r modulo p.
inline Index first_in_class(Index lower, Index r, Index p) {
    if (lower <= r) return r;
    return r + p * ceil_div(lower - r, p);
}

} // namespace ancl::detail
