// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "ancl/spectra.hpp"

#include <string>
#include <vector>

namespace ancl {

/// Number-line picture of a positive spectrum between m(T) and ||T||.
struct DiagramSpec {
    double axis_min;
    double axis_max;
    /// Sorted, distinct stroke positions.
    std::vector<double> strokes;
    double min_modulus;
    double ess_min_modulus;
    double norm;
    /// "Finitely many" or "Atmost countable" for the points below / above m_e(T).
    std::string left_label;
    std::string right_label;
    std::string caption;
};

namespace diagram {
/// Stroke cap on each side of m_e(T).
inline constexpr std::size_t kMaxStrokesPerSide = 200;
/// Horizontal resolution used to stop tail sampling.
inline constexpr int kPixels = 720;
} // namespace diagram

/// ContractError for a profile with negative points.
DiagramSpec build_diagram(const SpectralProfile& p);

std::string render_ascii(const DiagramSpec& d);
/// SVG 1.1, byte-deterministic for a given spec.
std::string render_svg(const DiagramSpec& d);

} // namespace ancl
