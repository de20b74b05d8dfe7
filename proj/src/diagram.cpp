// SPDX-License-Identifier: Apache-2.0
#include "ancl/diagram.hpp"

#include "ancl/classify.hpp"
#include "ancl/errors.hpp"
#include "ancl/tolerance.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>

namespace ancl {

namespace {

const char* kFinite = "Finitely many";
const char* kCountable = "Atmost countable";

std::string fixed(double v, int digits = 4) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

// Display window; a degenerate axis is widened so the markers stay visible.
std::pair<double, double> window(const DiagramSpec& d) {
    const double span = d.axis_max - d.axis_min;
    if (span > 0) return {d.axis_min - 0.05 * span, d.axis_max + 0.05 * span};
    return {d.axis_min - 0.5, d.axis_max + 0.5};
}

} // namespace

DiagramSpec build_diagram(const SpectralProfile& p) {
    if (!p.is_positive()) throw ContractError("diagrams need a positive profile");
    const SpectrumReport rep = spectrum_report(p);
    const MembershipReport cls = classify_positive(p);
    DiagramSpec d;
    d.axis_min = rep.min_modulus;
    d.axis_max = rep.norm;
    d.min_modulus = rep.min_modulus;
    d.ess_min_modulus = rep.ess_min_modulus;
    d.norm = rep.norm;
    const double me = rep.ess_min_modulus;
    d.left_label = side_points(p, me, true).infinite ? kCountable : kFinite;
    d.right_label = side_points(p, me, false).infinite ? kCountable : kFinite;

    std::set<double> left, right, at;
    auto place = [&](double v) {
        if (same_point(v, me)) at.insert(v);
        else if (v < me) { if (left.size() < diagram::kMaxStrokesPerSide) left.insert(v); }
        else if (right.size() < diagram::kMaxStrokesPerSide) right.insert(v);
    };
    for (const Atom& a : p.atoms()) place(a.value);
    const double pixel = (d.axis_max - d.axis_min) / diagram::kPixels;
    for (const Tail& t : p.tails()) {
        for (Index n = t.start(); n < t.start() + 4 * static_cast<Index>(diagram::kMaxStrokesPerSide); ++n) {
            const double v = t.eval(n);
            place(v);
            if (n >= t.mono_from() && std::abs(v - t.limit()) < pixel) break;
        }
        place(t.limit());
    }
    d.strokes.assign(left.begin(), left.end());
    d.strokes.insert(d.strokes.end(), at.begin(), at.end());
    d.strokes.insert(d.strokes.end(), right.begin(), right.end());

    std::ostringstream c;
    c << (cls.in_AN ? "positive AN operator" : cls.in_AN_closure ? "positive operator in the AN closure"
                                                                 : "positive operator outside the AN closure")
      << "; sigma_ess = {";
    for (std::size_t i = 0; i < rep.sigma_ess.size(); ++i) c << (i ? ", " : "") << rep.sigma_ess[i];
    c << "}";
    d.caption = c.str();
    return d;
}

std::string render_ascii(const DiagramSpec& d) {
    constexpr int width = 72;
    const auto [lo, hi] = window(d);
    auto col = [&](double v) {
        return std::clamp(static_cast<int>(std::lround((v - lo) / (hi - lo) * (width - 1))), 0, width - 1);
    };
    std::string strokes(width, ' '), axis(width, '-'), marks(width, ' ');
    for (double v : d.strokes) strokes[col(v)] = '|';
    auto mark = [&](double v, char ch) {
        const int c = col(v);
        marks[c] = marks[c] == ' ' ? ch : '*';
        axis[c] = '+';
    };
    mark(d.min_modulus, 'm');
    mark(d.ess_min_modulus, 'e');
    mark(d.norm, 'N');
    std::ostringstream os;
    os << d.caption << '\n'
       << strokes << '\n'
       << axis << '\n'
       << marks << '\n'
       << "m = m(T) = " << fixed(d.min_modulus) << "   e = m_e(T) = " << fixed(d.ess_min_modulus)
       << "   N = ||T|| = " << fixed(d.norm) << "   * = coincident markers\n"
       << "below m_e(T): " << d.left_label << "   above m_e(T): " << d.right_label << '\n';
    return os.str();
}

std::string render_svg(const DiagramSpec& d) {
    constexpr int left_px = 40, axis_px = diagram::kPixels, height = 170, axis_y = 100;
    const auto [lo, hi] = window(d);
    auto x = [&](double v) { return fixed(left_px + (v - lo) / (hi - lo) * axis_px, 2); };
    std::ostringstream os;
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
       << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << axis_px + 2 * left_px
       << "\" height=\"" << height << "\" font-family=\"sans-serif\" font-size=\"12\">\n"
       << "<title>" << d.caption << "</title>\n"
       << "<line x1=\"" << left_px << "\" y1=\"" << axis_y << "\" x2=\"" << left_px + axis_px << "\" y2=\"" << axis_y
       << "\" stroke=\"black\" stroke-width=\"1.5\"/>\n"
       << "<g stroke=\"black\" stroke-width=\"1\">\n";
    for (double v : d.strokes)
        os << "<line x1=\"" << x(v) << "\" y1=\"" << axis_y - 30 << "\" x2=\"" << x(v) << "\" y2=\"" << axis_y << "\"/>\n";
    os << "</g>\n<g fill=\"#e67e22\" stroke=\"#e67e22\">\n";
    struct Marker {
        double v;
        const char* label;
        int dy;
    };
    for (const Marker& m : {Marker{d.min_modulus, "m(T)", 18}, Marker{d.ess_min_modulus, "m_e(T)", 32},
                            Marker{d.norm, "||T||", 46}}) {
        os << "<circle cx=\"" << x(m.v) << "\" cy=\"" << axis_y << "\" r=\"4\"/>\n"
           << "<text x=\"" << x(m.v) << "\" y=\"" << axis_y + m.dy << "\" text-anchor=\"middle\" stroke=\"none\">"
           << m.label << " = " << fixed(m.v) << "</text>\n";
    }
    os << "</g>\n";
    const std::string me = x(d.ess_min_modulus);
    os << "<text x=\"" << me << "\" y=\"" << axis_y - 45 << "\" text-anchor=\"end\" dx=\"-8\">" << d.left_label
       << "</text>\n"
       << "<text x=\"" << me << "\" y=\"" << axis_y - 45 << "\" text-anchor=\"start\" dx=\"8\">" << d.right_label
       << "</text>\n"
       << "<text x=\"" << left_px << "\" y=\"20\">" << d.caption << "</text>\n"
       << "</svg>\n";
    return os.str();
}

} // namespace ancl
