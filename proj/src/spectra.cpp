// SPDX-License-Identifier: Apache-2.0
#include "ancl/spectra.hpp"

#include "ancl/errors.hpp"
#include "ancl/tolerance.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>

namespace ancl {

namespace {

/// Ten logarithmically spaced indices from 1e3 to 1e6.
const std::array<Index, 10>& large_indices() {
    static const std::array<Index, 10> idx = [] {
        std::array<Index, 10> out{};
        for (std::size_t k = 0; k < out.size(); ++k) {
            out[k] = static_cast<Index>(std::llround(std::pow(10.0, 3.0 + 3.0 * static_cast<double>(k) / 9.0)));
        }
        return out;
    }();
    return idx;
}

double eval_certified(const Expr& e, Index n) {
    try {
        return e.eval(static_cast<double>(n));
    } catch (const ExpressionError& err) {
        throw CertificationError("'" + e.to_string() + "' is not evaluable at n = " + std::to_string(n) + " (" +
                                 err.what() + ")");
    }
}

bool saturated_at(double value, double limit) {
    return std::abs(value - limit) <= certify::kSaturation * std::max(1.0, std::abs(limit));
}

// Steps lost to rounding once the sequence sits next to its limit.
bool flat_step(double prev, double value, double limit) {
    const double scale = std::max(1.0, std::abs(limit));
    return std::abs(prev - limit) <= certify::kFlatZone * scale &&
           std::abs(value - prev) <= certify::kRounding * scale;
}

Expr affine(const Expr& e, double a, double b) {
    Expr out = e;
    if (a != 1.0) out = Expr::constant(a) * out;
    if (b > 0.0) out = out + Expr::constant(b);
    if (b < 0.0) out = out - Expr::constant(-b);
    return out.simplified();
}

Tail negated(const Tail& t) {
    return Tail((Expr::constant(-1.0) * t.expr()).simplified(), t.start(), -t.limit(), flipped(t.direction()), t.mono_from());
}

int sign_of(double v) { return v > 0 ? 1 : (v < 0 ? -1 : 0); }

std::vector<double> merged_points(std::vector<double> pts) {
    std::sort(pts.begin(), pts.end());
    std::vector<double> out;
    for (double v : pts) {
        if (out.empty() || !same_point(out.back(), v)) out.push_back(v);
    }
    return out;
}

struct Extreme {
    double value;
    bool attained;
};

std::pair<Extreme, Extreme> extremes(const SpectralProfile& p) {
    Extreme lo{std::numeric_limits<double>::infinity(), false};
    Extreme hi{-std::numeric_limits<double>::infinity(), false};
    auto consider = [&](double v, bool attained, bool as_low, bool as_high) {
        if (as_low) {
            if (v < lo.value - tolerance()) {
                lo = {v, attained};
            } else if (same_point(v, lo.value)) {
                lo.value = std::min(lo.value, v);
                lo.attained = lo.attained || attained;
            }
        }
        if (as_high) {
            if (v > hi.value + tolerance()) {
                hi = {v, attained};
            } else if (same_point(v, hi.value)) {
                hi.value = std::max(hi.value, v);
                hi.attained = hi.attained || attained;
            }
        }
    };
    for (const Atom& a : p.atoms()) consider(a.value, true, true, true);
    for (const Tail& t : p.tails()) {
        const TailRange r = t.range();
        consider(r.inf, r.inf_attained, true, false);
        consider(r.sup, r.sup_attained, false, true);
    }
    return {lo, hi};
}

} // namespace

// ---------------------------------------------------------------------------
// Multiplicity

Multiplicity Multiplicity::finite(std::uint64_t count) {
    if (count == 0) throw ValidationError("multiplicity must be positive");
    return Multiplicity(count, false);
}

// ---------------------------------------------------------------------------
// Tail

Tail::Tail(Expr expr, Index start, double limit, Direction direction, Index mono_from)
    : expr_(std::move(expr)), start_(start), limit_(limit + 0.0), direction_(direction), mono_from_(mono_from) {
    certify();
}

bool Tail::saturated(double value) const { return saturated_at(value, limit_); }

void Tail::certify() const {
    const std::string name = "tail '" + expr_.to_string() + "'";
    if (start_ < 1) throw CertificationError(name + ": start index must be >= 1");
    if (mono_from_ < start_) throw CertificationError(name + ": mono_from must be >= start");
    if (mono_from_ - start_ > certify::kBound) throw CertificationError(name + ": mono_from too far from start");
    if (!std::isfinite(limit_)) throw CertificationError(name + ": limit must be finite");

    const bool inc = direction_ == Direction::increasing;
    auto side_ok = [&](double v) { return saturated(v) || (inc ? v < limit_ : v > limit_); };
    auto step_ok = [&](double prev, double v) {
        if ((saturated(prev) && saturated(v)) || flat_step(prev, v, limit_)) return true;
        return inc ? v > prev : v < prev;
    };

    for (Index n = start_; n < mono_from_; ++n) {
        if (eval_certified(expr_, n) == limit_) {
            throw CertificationError(name + ": value at n = " + std::to_string(n) + " equals the limit");
        }
    }

    double prev = eval_certified(expr_, mono_from_);
    if (!side_ok(prev)) {
        throw CertificationError(name + ": value at n = " + std::to_string(mono_from_) +
                                 " lies on the wrong side of the declared limit");
    }
    Index last = mono_from_;
    for (Index n = mono_from_ + 1; n <= mono_from_ + certify::kPrefix; ++n) {
        const double v = eval_certified(expr_, n);
        if (!side_ok(v)) {
            throw CertificationError(name + ": value at n = " + std::to_string(n) +
                                     " lies on the wrong side of the declared limit");
        }
        if (!step_ok(prev, v)) {
            throw CertificationError(name + ": not strictly " + (inc ? "increasing" : "decreasing") + " at n = " +
                                     std::to_string(n));
        }
        prev = v;
        last = n;
    }
    for (Index n : large_indices()) {
        if (n <= last) continue;
        const double v = eval_certified(expr_, n);
        if (!side_ok(v) || !step_ok(prev, v)) {
            throw CertificationError(name + ": monotone approach to the limit fails at sampled n = " +
                                     std::to_string(n));
        }
        prev = v;
        last = n;
    }

    double previous_gap = std::numeric_limits<double>::infinity();
    for (Index n : {Index{1'000}, Index{10'000}, Index{100'000}, Index{1'000'000}}) {
        const Index at = std::max(n, mono_from_);
        const double v = eval_certified(expr_, at);
        const double gap = std::abs(v - limit_);
        const bool ok = saturated(v) ? gap <= previous_gap : gap < previous_gap;
        if (!ok) throw CertificationError(name + ": distance to the limit does not decrease at n = " + std::to_string(at));
        previous_gap = gap;
    }
    if (previous_gap > certify::kLimitGap * std::max(1.0, std::abs(limit_))) {
        std::ostringstream msg;
        msg << name << ": value at n = 1e6 is " << previous_gap << " away from the declared limit " << limit_;
        throw CertificationError(msg.str());
    }
}

double Tail::eval(Index n) const {
    if (n < start_) {
        throw DomainError("index " + std::to_string(n) + " below tail start " + std::to_string(start_));
    }
    return expr_.eval(static_cast<double>(n));
}

TailRange Tail::range() const {
    double pre_min = std::numeric_limits<double>::infinity();
    double pre_max = -std::numeric_limits<double>::infinity();
    for (Index n = start_; n < mono_from_; ++n) {
        const double v = eval(n);
        pre_min = std::min(pre_min, v);
        pre_max = std::max(pre_max, v);
    }
    const double first = eval(mono_from_);
    TailRange r{};
    if (direction_ == Direction::increasing) {
        r.inf = std::min(pre_min, first);
        r.inf_attained = true;
        if (pre_max > limit_) {
            r.sup = pre_max;
            r.sup_attained = true;
        } else {
            r.sup = limit_;
            r.sup_attained = false;
        }
    } else {
        r.sup = std::max(pre_max, first);
        r.sup_attained = true;
        if (pre_min < limit_) {
            r.inf = pre_min;
            r.inf_attained = true;
        } else {
            r.inf = limit_;
            r.inf_attained = false;
        }
    }
    return r;
}

std::uint64_t Tail::hits(double v) const {
    if (same_point(v, limit_)) return 0;
    std::uint64_t count = 0;
    const Index end = std::max(start_, mono_from_) + certify::kPrefix;
    for (Index n = start_; n < end; ++n) {
        if (same_point(eval(n), v)) ++count;
    }
    return count;
}

Tail Tail::reanchored(Index new_start) const {
    if (new_start < start_) throw DomainError("cannot move a tail start backwards");
    return Tail(expr_, new_start, limit_, direction_, std::max(mono_from_, new_start));
}

// ---------------------------------------------------------------------------
// Fitting and sign analysis

FittedSequence fit_sequence(const Expr& expr, Index start, double limit) {
    if (start < 1) throw DomainError("sequence start must be >= 1");
    FittedSequence out;
    auto value = [&](Index n) { return eval_certified(expr, n); };

    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    auto note = [&](double v) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    };
    for (Index n = start; n < start + 64; ++n) note(value(n));
    for (Index n : large_indices()) {
        if (n >= start) note(value(n));
    }
    const double scale = std::max(1.0, std::abs(limit));
    if (hi - lo <= 1e-12 * scale) {
        if (std::abs(value(start) - limit) > 1e-9 * scale) {
            throw CertificationError("constant sequence '" + expr.to_string() + "' disagrees with its limit");
        }
        out.constant = limit;
        return out;
    }

    std::optional<Direction> dir;
    for (auto it = large_indices().rbegin(); it != large_indices().rend() && !dir; ++it) {
        if (*it < start) continue;
        const double v = value(*it);
        if (!saturated_at(v, limit)) dir = v < limit ? Direction::increasing : Direction::decreasing;
    }
    for (Index n = start + certify::kPrefix; n >= start && !dir; --n) {
        const double v = value(n);
        if (!saturated_at(v, limit)) dir = v < limit ? Direction::increasing : Direction::decreasing;
    }
    if (!dir) {
        out.constant = limit;
        return out;
    }
    const bool inc = *dir == Direction::increasing;
    auto side_ok = [&](double v) { return saturated_at(v, limit) || (inc ? v < limit : v > limit); };
    auto step_ok = [&](double prev, double v) {
        if ((saturated_at(prev, limit) && saturated_at(v, limit)) || flat_step(prev, v, limit)) return true;
        return inc ? v > prev : v < prev;
    };

    Index last_bad = start - 1;
    double prev = value(start);
    if (!side_ok(prev)) last_bad = start;
    for (Index n = start + 1; n <= start + certify::kPrefix; ++n) {
        const double cur = value(n);
        if (!side_ok(cur)) {
            last_bad = n;
        } else if (!step_ok(prev, cur)) {
            last_bad = std::max(last_bad, n - 1);
        }
        prev = cur;
    }
    const Index mono = last_bad + 1;
    if (mono > start + certify::kPrefix - 64) {
        throw CertificationError("no monotone region found for '" + expr.to_string() + "' within " +
                                 std::to_string(certify::kPrefix) + " indices");
    }
    for (Index n = start; n < mono; ++n) out.leading.push_back(value(n));
    out.tail.emplace(expr, mono, limit, *dir, mono);
    return out;
}

SignStable sign_stable_from(const Tail& tail) {
    const double L = tail.limit();
    int target = 0;
    if (L > tolerance()) {
        target = 1;
    } else if (L < -tolerance()) {
        target = -1;
    } else {
        target = tail.direction() == Direction::increasing ? -1 : 1;
    }
    auto ok = [&](Index n) { return sign_of(tail.eval(n)) == target; };

    const Index m0 = tail.mono_from();
    Index first_ok = m0;
    if (!ok(m0)) {
        Index lo = m0;
        Index step = 1;
        Index hi = m0 + 1;
        while (!ok(hi)) {
            lo = hi;
            step *= 2;
            hi = lo + step;
            if (hi - m0 > certify::kBound) {
                throw CertificationError("tail '" + tail.expr().to_string() +
                                         "' does not settle its sign within the scan cap");
            }
        }
        while (hi - lo > 1) {
            const Index mid = lo + (hi - lo) / 2;
            if (ok(mid)) {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        first_ok = hi;
    }
    if (first_ok > m0) return {first_ok, target};
    Index from = tail.start();
    for (Index n = tail.start(); n < m0; ++n) {
        if (!ok(n)) from = n + 1;
    }
    return {from, target};
}

// ---------------------------------------------------------------------------
// SpectralProfile

SpectralProfile::SpectralProfile(std::vector<Atom> atoms, std::vector<Tail> tails)
    : atoms_(std::move(atoms)), tails_(std::move(tails)) {
    bool infinite = !tails_.empty();
    for (Atom& a : atoms_) a.value += 0.0;  // no negative zeros
    for (const Atom& a : atoms_) {
        if (!std::isfinite(a.value)) throw ValidationError("atom value must be finite");
        if (!a.mult.is_infinite() && a.mult.count() == 0) throw ValidationError("atom multiplicity must be positive");
        infinite = infinite || a.mult.is_infinite();
    }
    if (!infinite) {
        throw ValidationError("profile must carry infinite total multiplicity (an infinite atom or a tail)");
    }
}

double SpectralProfile::inf() const { return extremes(*this).first.value; }
double SpectralProfile::sup() const { return extremes(*this).second.value; }
bool SpectralProfile::is_positive() const { return inf() >= -tolerance(); }

std::vector<double> SpectralProfile::essential_points() const {
    std::vector<double> pts;
    for (const Atom& a : atoms_) {
        if (a.mult.is_infinite()) pts.push_back(a.value);
    }
    for (const Tail& t : tails_) pts.push_back(t.limit());
    return merged_points(std::move(pts));
}

std::optional<Multiplicity> SpectralProfile::multiplicity_at(double v) const {
    std::optional<Multiplicity> total;
    auto add = [&](Multiplicity m) { total = total ? *total + m : m; };
    for (const Atom& a : atoms_) {
        if (same_point(a.value, v)) add(a.mult);
    }
    std::uint64_t extra = 0;
    for (const Tail& t : tails_) extra += t.hits(v);
    if (extra > 0) add(Multiplicity::finite(extra));
    return total;
}

std::vector<double> SpectralProfile::sample(Index bound) const {
    std::vector<double> out;
    for (const Atom& a : atoms_) {
        const std::uint64_t copies = a.mult.is_infinite() ? static_cast<std::uint64_t>(bound) : a.mult.count();
        out.insert(out.end(), copies, a.value);
    }
    for (const Tail& t : tails_) {
        for (Index n = t.start(); n <= bound; ++n) out.push_back(t.eval(n));
    }
    std::sort(out.begin(), out.end());
    return out;
}

// ---------------------------------------------------------------------------
// Reports and transforms

SpectrumReport spectrum_report(const SpectralProfile& p) {
    SpectrumReport r{};
    r.sigma_ess = p.essential_points();

    const SpectralProfile ap = p.is_positive() ? p : abs_profile(p);
    const auto [lo, hi] = extremes(ap);
    r.norm = hi.value;
    r.norm_attained = hi.attained;
    r.min_modulus = lo.value;
    r.min_attained = lo.attained;
    r.ess_min_modulus = ap.essential_points().front();

    std::vector<Atom> discrete;
    for (const Atom& a : p.atoms()) {
        if (a.mult.is_infinite()) continue;
        const bool essential = std::any_of(r.sigma_ess.begin(), r.sigma_ess.end(),
                                           [&](double e) { return same_point(e, a.value); });
        if (essential) continue;
        auto it = std::find_if(discrete.begin(), discrete.end(), [&](const Atom& d) { return same_point(d.value, a.value); });
        if (it == discrete.end()) {
            discrete.push_back(a);
        } else {
            it->mult = it->mult + a.mult;
        }
    }
    std::sort(discrete.begin(), discrete.end(), [](const Atom& x, const Atom& y) { return x.value < y.value; });
    r.sigma_d.explicit_part = std::move(discrete);
    for (std::size_t i = 0; i < p.tails().size(); ++i) r.sigma_d.tail_refs.push_back(i);

    std::vector<double> continuous;
    for (double e : r.sigma_ess) {
        const bool eigen = std::any_of(p.atoms().begin(), p.atoms().end(), [&](const Atom& a) { return same_point(a.value, e); });
        if (!eigen) continuous.push_back(e);
    }
    std::ostringstream note;
    note << "diagonal operator: residual spectrum empty; continuous spectrum {";
    for (std::size_t i = 0; i < continuous.size(); ++i) note << (i ? ", " : "") << continuous[i];
    note << "} (essential points that are not eigenvalues)";
    r.note = note.str();
    return r;
}

SpectralProfile shift_scale(const SpectralProfile& p, double a, double b) {
    if (!(a >= 0.0) || !std::isfinite(a) || !std::isfinite(b)) throw ContractError("shift_scale requires finite a >= 0 and finite b");
    if (a == 0.0) {
        Multiplicity total = p.tails().empty() ? Multiplicity::finite(1) : Multiplicity::infinite();
        bool first = p.tails().empty();
        for (const Atom& at : p.atoms()) {
            total = first ? at.mult : total + at.mult;
            first = false;
        }
        return SpectralProfile({Atom{b, total}}, {});
    }
    std::vector<Atom> atoms;
    for (const Atom& at : p.atoms()) atoms.push_back({a * at.value + b, at.mult});
    std::vector<Tail> tails;
    for (const Tail& t : p.tails()) {
        tails.emplace_back(affine(t.expr(), a, b), t.start(), a * t.limit() + b, t.direction(), t.mono_from());
    }
    return SpectralProfile(std::move(atoms), std::move(tails));
}

SpectralProfile split_signs(const SpectralProfile& p) {
    std::vector<Atom> atoms = p.atoms();
    std::vector<Tail> tails;
    for (const Tail& t : p.tails()) {
        const SignStable s = sign_stable_from(t);
        for (Index n = t.start(); n < s.from; ++n) atoms.push_back({t.eval(n), Multiplicity::finite(1)});
        tails.push_back(t.reanchored(s.from));
    }
    return SpectralProfile(std::move(atoms), std::move(tails));
}

SpectralProfile abs_profile(const SpectralProfile& p) {
    const SpectralProfile s = split_signs(p);
    std::vector<Atom> atoms;
    for (const Atom& a : s.atoms()) atoms.push_back({std::abs(a.value), a.mult});
    std::vector<Tail> tails;
    for (const Tail& t : s.tails()) {
        tails.push_back(t.eval(t.start()) < 0 ? negated(t) : t);
    }
    return SpectralProfile(std::move(atoms), std::move(tails));
}

std::pair<SpectralProfile, SpectralProfile> pos_neg_parts(const SpectralProfile& p) {
    const SpectralProfile s = split_signs(p);
    std::vector<Atom> pos_atoms;
    std::vector<Atom> neg_atoms;
    for (const Atom& a : s.atoms()) {
        pos_atoms.push_back({std::max(a.value, 0.0), a.mult});
        neg_atoms.push_back({std::max(-a.value, 0.0), a.mult});
    }
    std::vector<Tail> pos_tails;
    std::vector<Tail> neg_tails;
    for (const Tail& t : s.tails()) {
        if (t.eval(t.start()) > 0) {
            pos_tails.push_back(t);
            neg_atoms.push_back({0.0, Multiplicity::infinite()});
        } else {
            neg_tails.push_back(negated(t));
            pos_atoms.push_back({0.0, Multiplicity::infinite()});
        }
    }
    return {SpectralProfile(std::move(pos_atoms), std::move(pos_tails)),
            SpectralProfile(std::move(neg_atoms), std::move(neg_tails))};
}

SpectralProfile square_profile(const SpectralProfile& p) {
    const SpectralProfile a = abs_profile(p);
    std::vector<Atom> atoms;
    for (const Atom& at : a.atoms()) atoms.push_back({at.value * at.value, at.mult});
    std::vector<Tail> tails;
    for (const Tail& t : a.tails()) {
        tails.emplace_back(Expr::pow(t.expr(), 2), t.start(), t.limit() * t.limit(), t.direction(), t.mono_from());
    }
    return SpectralProfile(std::move(atoms), std::move(tails));
}

SpectralProfile sqrt_profile(const SpectralProfile& p) {
    if (!p.is_positive()) throw DomainError("square root of a profile with negative spectrum");
    std::vector<Atom> atoms;
    for (const Atom& at : p.atoms()) atoms.push_back({std::sqrt(std::max(at.value, 0.0)), at.mult});
    std::vector<Tail> tails;
    for (const Tail& t : p.tails()) {
        tails.emplace_back(Expr::sqrt(t.expr()), t.start(), std::sqrt(std::max(t.limit(), 0.0)), t.direction(),
                           t.mono_from());
    }
    return SpectralProfile(std::move(atoms), std::move(tails));
}

SpectralProfile polynomial_apply(const SpectralProfile& p, const std::vector<double>& coeffs) {
    if (coeffs.empty()) throw ContractError("polynomial needs at least one coefficient");
    for (double c : coeffs) {
        if (!(c >= 0.0) || !std::isfinite(c)) throw ContractError("polynomial coefficients must be finite and >= 0");
    }
    if (!p.is_positive()) throw ContractError("polynomial_apply requires a positive profile");
    const bool constant = std::all_of(coeffs.begin() + 1, coeffs.end(), [](double c) { return c == 0.0; });
    if (constant) return shift_scale(p, 0.0, coeffs.front());

    auto poly = [&](double t) {
        double acc = 0.0;
        for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * t + *it;
        return acc;
    };
    auto poly_expr = [&](const Expr& x) {
        std::size_t top = coeffs.size() - 1;
        while (coeffs[top] == 0.0) --top;
        Expr acc = Expr::constant(coeffs[top]);
        for (std::size_t k = top; k-- > 0;) {
            acc = acc * x;
            if (coeffs[k] != 0.0) acc = acc + Expr::constant(coeffs[k]);
        }
        return acc;
    };
    std::vector<Atom> atoms;
    for (const Atom& at : p.atoms()) atoms.push_back({poly(at.value), at.mult});
    std::vector<Tail> tails;
    for (const Tail& t : p.tails()) {
        tails.emplace_back(poly_expr(t.expr()), t.start(), poly(t.limit()), t.direction(), t.mono_from());
    }
    return SpectralProfile(std::move(atoms), std::move(tails));
}

SpectralProfile merge_profiles(const SpectralProfile& a, const SpectralProfile& b) {
    std::vector<Atom> atoms = a.atoms();
    atoms.insert(atoms.end(), b.atoms().begin(), b.atoms().end());
    std::vector<Tail> tails = a.tails();
    tails.insert(tails.end(), b.tails().begin(), b.tails().end());
    return SpectralProfile(std::move(atoms), std::move(tails));
}

CompactnessReport compactness_check(const SpectralProfile& p) {
    const auto ess = p.essential_points();
    const bool compact = std::all_of(ess.begin(), ess.end(), [](double e) { return std::abs(e) <= tolerance(); });
    bool finite_rank = p.tails().empty();
    for (const Atom& a : p.atoms()) {
        if (a.mult.is_infinite() && std::abs(a.value) > tolerance()) finite_rank = false;
    }
    return {compact, finite_rank};
}

bool same_multiset(const std::vector<double>& a, const std::vector<double>& b,
                   const std::vector<double>& infinite_values, double tol) {
    auto is_inf = [&](double v) {
        return std::any_of(infinite_values.begin(), infinite_values.end(), [&](double w) { return std::abs(v - w) <= tol; });
    };
    for (double w : infinite_values) {
        auto has = [&](const std::vector<double>& xs) {
            return std::any_of(xs.begin(), xs.end(), [&](double v) { return std::abs(v - w) <= tol; });
        };
        if (has(a) != has(b)) return false;
    }
    std::vector<double> fa;
    std::vector<double> fb;
    for (double v : a) {
        if (!is_inf(v)) fa.push_back(v);
    }
    for (double v : b) {
        if (!is_inf(v)) fb.push_back(v);
    }
    std::sort(fa.begin(), fa.end());
    std::sort(fb.begin(), fb.end());
    if (fa.size() != fb.size()) return false;
    for (std::size_t i = 0; i < fa.size(); ++i) {
        if (std::abs(fa[i] - fb[i]) > tol) return false;
    }
    return true;
}

} // namespace ancl
