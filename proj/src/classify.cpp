// SPDX-License-Identifier: Apache-2.0
#include "ancl/classify.hpp"

#include "ancl/errors.hpp"
#include "ancl/tolerance.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace ancl {

namespace {

std::string point_list(const std::vector<double>& pts) {
    std::ostringstream out;
    out << "{";
    for (std::size_t i = 0; i < pts.size(); ++i) out << (i ? ", " : "") << pts[i];
    out << "}";
    return out.str();
}

Tail negated(const Tail& t) {
    return Tail((Expr::constant(-1.0) * t.expr()).simplified(), t.start(), -t.limit(), flipped(t.direction()), t.mono_from());
}

} // namespace

SideCount side_points(const SpectralProfile& p, double threshold, bool below) {
    SideCount out;
    std::set<double> pts;
    const double tau = tolerance();
    auto on_side = [&](double v) { return below ? v < threshold - tau : v > threshold + tau; };
    for (const Atom& a : p.atoms()) {
        if (!on_side(a.value)) continue;
        if (a.mult.is_infinite()) {
            out.infinite = true;
            if (out.witness.empty()) {
                std::ostringstream w;
                w << "eigenvalue " << a.value << " has infinite multiplicity";
                out.witness = w.str();
            }
        }
        pts.insert(a.value);
    }
    for (std::size_t k = 0; k < p.tails().size(); ++k) {
        const Tail& t = p.tails()[k];
        const bool toward = below ? t.direction() == Direction::increasing : t.direction() == Direction::decreasing;
        const bool limit_inside = on_side(t.limit());
        if (limit_inside || (same_point(t.limit(), threshold) && toward)) {
            out.infinite = true;
            if (out.witness.empty()) {
                std::ostringstream w;
                w << "tail " << k << " (" << t.expr().to_string() << ") accumulates at " << t.limit()
                  << (below ? " from below" : " from above");
                out.witness = w.str();
            }
            continue;
        }
        for (Index n = t.start(); n < t.mono_from(); ++n) {
            const double v = t.eval(n);
            if (on_side(v)) pts.insert(v);
        }
        if (toward) {
            // Monotone part moves toward a limit beyond the threshold: finitely many values remain on this side.
            for (Index n = t.mono_from();; ++n) {
                const double v = t.eval(n);
                if (!on_side(v)) break;
                pts.insert(v);
            }
        }
    }
    out.points.assign(pts.begin(), pts.end());
    return out;
}

namespace {

Certificate closure_certificate(const std::vector<double>& ess, const std::string& label) {
    Certificate c;
    c.criterion = "essential spectrum of " + label + " is a single point";
    c.holds = ess.size() == 1;
    c.points = ess;
    if (c.holds) c.alpha = ess.front();
    c.detail = "sigma_ess(" + label + ") = " + point_list(ess);
    return c;
}

} // namespace

MembershipReport classify_positive(const SpectralProfile& p) {
    if (!p.is_positive()) throw ContractError("classification needs a positive profile (inf sigma = " + std::to_string(p.inf()) + ")");
    const SpectrumReport rep = spectrum_report(p);
    const std::vector<double>& ess = rep.sigma_ess;
    const bool single = ess.size() == 1;
    const double me = rep.ess_min_modulus;

    MembershipReport r;
    r.in_AN_closure = single;
    r.certificates["in_AN_closure"] = closure_certificate(ess, "T");

    const SideCount left = side_points(p, me, true);
    const SideCount right = side_points(p, me, false);
    r.in_AN = single && !left.infinite;
    r.in_AM = single && !right.infinite;
    {
        Certificate c;
        c.criterion = "singleton essential spectrum and finitely many spectral points in [m, m_e)";
        c.holds = r.in_AN;
        c.alpha = me;
        if (!single) {
            c.detail = "essential spectrum " + point_list(ess) + " is not a single point";
            c.points = ess;
        } else if (left.infinite) {
            c.detail = left.witness;
        } else {
            c.points = left.points;
            c.detail = std::to_string(left.points.size()) + " distinct spectral points below m_e";
        }
        r.certificates["in_AN"] = c;
    }
    {
        Certificate c;
        c.criterion = "singleton essential spectrum and finitely many spectral points in (m_e, norm]";
        c.holds = r.in_AM;
        c.alpha = me;
        if (!single) {
            c.detail = "essential spectrum " + point_list(ess) + " is not a single point";
            c.points = ess;
        } else if (right.infinite) {
            c.detail = right.witness;
        } else {
            c.points = right.points;
            c.detail = std::to_string(right.points.size()) + " distinct spectral points above m_e";
        }
        r.certificates["in_AM"] = c;
    }
    {
        // Independent route: (T - beta)^+ and (T - beta)^- must both be compact.
        const double beta = ess.front();
        const auto [pos, neg] = pos_neg_parts(shift_scale(p, 1.0, -beta));
        const CompactnessReport cp = compactness_check(pos);
        const CompactnessReport cn = compactness_check(neg);
        r.in_AM_closure = cp.is_compact && cn.is_compact;
        Certificate c;
        c.criterion = "(T - beta)^+ and (T - beta)^- are compact for beta = min sigma_ess";
        c.holds = r.in_AM_closure;
        c.alpha = beta;
        c.points = ess;
        c.detail = std::string("positive part ") + (cp.is_compact ? "compact" : "not compact") + ", negative part " +
                   (cn.is_compact ? "compact" : "not compact");
        r.certificates["in_AM_closure"] = c;
    }
    {
        Certificate c;
        c.criterion = "norm is an eigenvalue";
        c.holds = rep.norm_attained;
        c.alpha = rep.norm;
        if (c.holds) c.attaining_value = rep.norm;
        c.detail = std::string("sup sigma = ") + std::to_string(rep.norm) + (c.holds ? " is attained" : " is a limit only");
        r.norm_attaining = c.holds;
        r.certificates["norm_attaining"] = c;
    }
    {
        Certificate c;
        c.criterion = "minimum modulus is an eigenvalue";
        c.holds = rep.min_attained;
        c.alpha = rep.min_modulus;
        if (c.holds) c.attaining_value = rep.min_modulus;
        c.detail = std::string("inf sigma = ") + std::to_string(rep.min_modulus) + (c.holds ? " is attained" : " is a limit only");
        r.min_attaining = c.holds;
        r.certificates["min_attaining"] = c;
    }
    const CompactnessReport comp = compactness_check(p);
    r.is_compact = comp.is_compact;
    r.is_finite_rank = comp.is_finite_rank;
    r.certificates["is_compact"] = {"essential spectrum contained in {0}", comp.is_compact, "sigma_ess = " + point_list(ess), std::nullopt, ess, std::nullopt};
    r.certificates["is_finite_rank"] = {"no tails and every infinite-multiplicity eigenvalue is 0", comp.is_finite_rank, "", std::nullopt, {}, std::nullopt};
    r.cross_check = "profile classified directly";
    return r;
}

std::vector<double> PositiveDecomposition::reconstruct(Index bound) const {
    std::vector<double> out;
    auto repeat = [&](double v, Multiplicity m) {
        const std::uint64_t copies = m.is_infinite() ? static_cast<std::uint64_t>(bound) : m.count();
        out.insert(out.end(), copies, v);
    };
    for (const SupportTag& tag : tags) {
        if (tag.side == Side::at) {
            repeat(alpha, tag.mult);
            continue;
        }
        const SpectralProfile& part = tag.side == Side::below ? K1 : K2;
        const double sign = tag.side == Side::below ? -1.0 : 1.0;
        if (tag.is_tail) {
            const Tail& t = part.tails()[tag.part_index];
            for (Index n = t.start(); n <= bound; ++n) out.push_back(alpha + sign * t.eval(n));
        } else {
            const Atom& a = part.atoms()[tag.part_index];
            repeat(alpha + sign * a.value, a.mult);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

PositiveDecomposition an_closure_decomposition(const SpectralProfile& p) {
    const MembershipReport cls = classify_positive(p);
    if (!cls.in_AN_closure) {
        throw NotMemberError("not in the AN-closure: " + cls.certificates.at("in_AN_closure").detail);
    }
    const double alpha = *cls.certificates.at("in_AN_closure").alpha;
    const SpectralProfile q = split_signs(shift_scale(p, 1.0, -alpha));
    std::vector<Atom> k1_atoms;
    std::vector<Atom> k2_atoms;
    std::vector<Tail> k1_tails;
    std::vector<Tail> k2_tails;
    std::optional<Multiplicity> k1_kernel;
    std::optional<Multiplicity> k2_kernel;
    auto grow = [](std::optional<Multiplicity>& k, Multiplicity m) { k = k ? *k + m : m; };
    std::vector<SupportTag> tags;
    const double tau = tolerance();
    for (std::size_t i = 0; i < q.atoms().size(); ++i) {
        const Atom& a = q.atoms()[i];
        SupportTag tag;
        tag.item = i;
        tag.mult = a.mult;
        if (a.value < -tau) {
            tag.side = Side::below;
            tag.part_index = k1_atoms.size();
            k1_atoms.push_back({-a.value, a.mult});
            grow(k2_kernel, a.mult);
        } else if (a.value > tau) {
            tag.side = Side::above;
            tag.part_index = k2_atoms.size();
            k2_atoms.push_back({a.value, a.mult});
            grow(k1_kernel, a.mult);
        } else {
            tag.side = Side::at;
            grow(k1_kernel, a.mult);
            grow(k2_kernel, a.mult);
        }
        tags.push_back(tag);
    }
    for (std::size_t k = 0; k < q.tails().size(); ++k) {
        const Tail& t = q.tails()[k];
        SupportTag tag;
        tag.is_tail = true;
        tag.item = k;
        if (t.eval(t.start()) < 0) {
            tag.side = Side::below;
            tag.part_index = k1_tails.size();
            k1_tails.push_back(negated(t));
            grow(k2_kernel, Multiplicity::infinite());
        } else {
            tag.side = Side::above;
            tag.part_index = k2_tails.size();
            k2_tails.push_back(t);
            grow(k1_kernel, Multiplicity::infinite());
        }
        tags.push_back(tag);
    }
    if (k1_kernel) k1_atoms.push_back({0.0, *k1_kernel});
    if (k2_kernel) k2_atoms.push_back({0.0, *k2_kernel});
    PositiveDecomposition d{alpha, SpectralProfile(std::move(k1_atoms), std::move(k1_tails)),
                            SpectralProfile(std::move(k2_atoms), std::move(k2_tails)), std::move(tags)};
    if (d.K1.sup() > alpha + tau) throw TheoremViolation("decomposition has norm of K1 above alpha");
    return d;
}

namespace {

std::vector<Atom> finite_items(const SpectralProfile& part, const std::string& clause) {
    if (!part.tails().empty()) throw NotMemberError(clause);
    std::vector<Atom> out;
    for (const Atom& a : part.atoms()) {
        if (std::abs(a.value) <= tolerance()) continue;
        if (a.mult.is_infinite()) throw NotMemberError(clause);
        out.push_back(a);
    }
    return out;
}

} // namespace

Triple an_triple(const SpectralProfile& p) {
    const MembershipReport cls = classify_positive(p);
    if (!cls.in_AN) throw NotMemberError("not an AN-operator: " + cls.certificates.at("in_AN").detail);
    PositiveDecomposition d = an_closure_decomposition(p);
    Triple t{d.alpha, d.K2, finite_items(d.K1, "(T - alpha)^- is not of finite rank")};
    if (!compactness_check(t.compact_part).is_compact) throw TheoremViolation("(T - alpha)^+ is not compact");
    for (const Atom& a : t.finite_part) {
        if (a.value > d.alpha + tolerance()) throw TheoremViolation("finite part exceeds alpha");
    }
    return t;
}

Triple am_triple(const SpectralProfile& p) {
    const MembershipReport cls = classify_positive(p);
    if (!cls.in_AM) throw NotMemberError("not an AM-operator: " + cls.certificates.at("in_AM").detail);
    PositiveDecomposition d = an_closure_decomposition(p);
    Triple t{d.alpha, d.K1, finite_items(d.K2, "(T - beta)^+ is not of finite rank")};
    if (!compactness_check(t.compact_part).is_compact) throw TheoremViolation("(T - beta)^- is not compact");
    if (t.compact_part.sup() > d.alpha + tolerance()) throw TheoremViolation("compact part exceeds beta");
    return t;
}

MembershipReport membership_general(const ShiftedDiagonal& t) {
    const SpectralProfile g = gram(t);
    const SpectralProfile m = modulus_profile_direct(t);
    const MembershipReport via_gram = classify_positive(g);
    MembershipReport r = classify_positive(m);
    const bool agree = via_gram.in_AN == r.in_AN && via_gram.in_AM == r.in_AM &&
                       via_gram.in_AN_closure == r.in_AN_closure && via_gram.in_AM_closure == r.in_AM_closure &&
                       via_gram.is_compact == r.is_compact;
    r.in_AN = via_gram.in_AN;
    r.in_AM = via_gram.in_AM;
    r.in_AN_closure = via_gram.in_AN_closure;
    r.in_AM_closure = via_gram.in_AM_closure;
    r.paths_agree = agree;
    const std::vector<double> ess_mod = m.essential_points();
    const std::vector<double> ess_gram = g.essential_points();
    Certificate& c = r.certificates["in_AN_closure"];
    c.criterion = "essential spectrum of T*T (equivalently of |T|) is a single point";
    c.holds = r.in_AN_closure;
    c.detail = "sigma_ess(|T|) = " + point_list(ess_mod) + "; sigma_ess(T*T) = " + point_list(ess_gram);
    r.cross_check = std::string("gram route and modulus route ") + (agree ? "agree" : "DISAGREE") +
                    " on AN, AM, closure and compactness flags";
    return r;
}

AlphaWK structure_alpha_w_k(const ShiftedDiagonal& t) {
    const MembershipReport mr = membership_general(t);
    if (!mr.in_AN_closure) throw NotMemberError("not in the AN-closure: " + mr.certificates.at("in_AN_closure").detail);
    const PolarParts polar = polar_decompose(t);
    const double alpha = spectrum_report(polar.modulus_profile).ess_min_modulus;
    const ShiftedDiagonal deviation = diagonal(WeightSeq::add(polar.modulus_part.weights(), WeightSeq::constant(-alpha)));
    const ShiftedDiagonal k = compose(polar.isometry_part, deviation);
    return {alpha, polar.isometry_part, k, compactness_check(gram(k)).is_compact};
}

namespace {

/// Smallest nonzero value of a nonnegative profile (0 when nonzero values accumulate at 0).
double inf_nonzero(const SpectralProfile& p) {
    double best = std::numeric_limits<double>::infinity();
    for (const Atom& a : p.atoms()) {
        if (a.value > kZeroWeight) best = std::min(best, a.value);
    }
    for (const Tail& t : p.tails()) {
        if (t.direction() == Direction::decreasing) best = std::min(best, t.limit());
        const Index stable = sign_stable_from(t).from;
        const Index end = std::max(t.mono_from(), stable) + 1;
        for (Index n = t.start(); n <= end; ++n) {
            const double v = std::abs(t.eval(n));
            if (v > kZeroWeight) best = std::min(best, v);
        }
    }
    return std::isfinite(best) ? best : 0.0;
}

} // namespace

FredholmReport fredholm_report(const ShiftedDiagonal& t) {
    FredholmReport r{};
    r.kernel_dim = kernel_dimension(t);
    r.inf_nonzero_modulus = inf_nonzero(modulus_profile_direct(t));
    r.range_closed = r.inf_nonzero_modulus > tolerance();
    const bool kernel_finite = !r.kernel_dim || !r.kernel_dim->is_infinite();
    r.left_semi_fredholm = kernel_finite && r.range_closed;
    const MembershipReport mr = membership_general(t);
    r.corollary_applies = mr.in_AN_closure && !mr.is_compact;
    r.corollary_holds = !r.corollary_applies || (kernel_finite && r.range_closed && r.left_semi_fredholm);
    std::ostringstream c;
    c << "kernel dimension " << (r.kernel_dim ? r.kernel_dim->to_string() : "0") << "; inf of nonzero |d_n| = "
      << r.inf_nonzero_modulus << "; ";
    if (r.corollary_applies) {
        c << "member of the AN-closure and not compact, so finite kernel, closed range and left semi-Fredholm are "
          << (r.corollary_holds ? "confirmed" : "VIOLATED");
    } else {
        c << "closure corollary does not apply (" << (mr.in_AN_closure ? "compact" : "not in the AN-closure") << ")";
    }
    r.certificate = c.str();
    return r;
}

DirectSumVerdict direct_sum_membership(const SpectralProfile& a, const SpectralProfile& b) {
    const auto ea = a.essential_points();
    const auto eb = b.essential_points();
    if (!a.is_positive() || !b.is_positive() || ea.size() != 1 || eb.size() != 1) {
        throw ContractError("direct sum test needs two positive profiles with singleton essential spectra");
    }
    const bool same = same_point(ea[0], eb[0]);
    std::ostringstream reason;
    reason << "sigma_ess of the summands: {" << ea[0] << "} and {" << eb[0] << "}; "
           << (same ? "equal, so the sum is in the closure" : "different, so the sum has two essential points");
    return {same, reason.str()};
}

TwoOfThree two_of_three(const ShiftedDiagonal& t) {
    TwoOfThree r{};
    r.in_closure_T = membership_general(t).in_AN_closure;
    r.in_closure_Tstar = membership_general(adjoint(t)).in_AN_closure;
    const auto eg = gram(t).essential_points();
    const auto ec = cogram(t).essential_points();
    r.ess_equal = eg.size() == ec.size() &&
                  std::equal(eg.begin(), eg.end(), ec.begin(), [](double x, double y) { return same_point(x, y); });
    const int count = static_cast<int>(r.in_closure_T) + static_cast<int>(r.in_closure_Tstar) + static_cast<int>(r.ess_equal);
    r.consistent = count != 2;
    return r;
}

bool product_membership(const ShiftedDiagonal& a, const ShiftedDiagonal& b) {
    if (!membership_general(a).in_AN_closure || !membership_general(b).in_AN_closure) {
        throw ContractError("product test needs both factors in the AN-closure");
    }
    const MembershipReport r = membership_general(compose(a, b));
    if (!r.in_AN_closure) {
        throw TheoremViolation("product of two closure members left the closure: " + r.certificates.at("in_AN_closure").detail);
    }
    return true;
}

bool selfadjoint_ess_pair_check(const SpectralProfile& p) {
    const auto ea = abs_profile(p).essential_points();
    if (ea.size() != 1) return false;
    const double alpha = ea[0];
    for (double e : p.essential_points()) {
        if (!same_point(e, alpha) && !same_point(e, -alpha)) return false;
    }
    return true;
}

namespace {

NormalStructure structure_of(const ShiftedDiagonal& t) {
    const SpectralProfile m = modulus_profile_direct(t);
    const auto ess = m.essential_points();
    if (ess.size() != 1) throw NotMemberError("not in the AN-closure: sigma_ess(|T|) = " + point_list(ess));
    const double alpha = ess[0];
    const WeightSeq& w = t.weights();
    const WeightSeq phase = WeightSeq::phase(w);
    const WeightSeq k1 = WeightSeq::mul(phase, WeightSeq::modulus_map(w, WeightSeq::ModulusFn::deficit, alpha));
    const WeightSeq k2 = WeightSeq::mul(phase, WeightSeq::modulus_map(w, WeightSeq::ModulusFn::excess, alpha));
    return {alpha, diagonal(phase), diagonal(k1), diagonal(k2)};
}

} // namespace

NormalStructure selfadjoint_structure(const ShiftedDiagonal& t) {
    if (!t.is_diagonal() || !t.weights().is_real()) throw ContractError("self-adjoint structure needs a real diagonal operator");
    return structure_of(t);
}

NormalStructure normal_structure(const ShiftedDiagonal& t) {
    if (!t.is_diagonal()) throw ContractError("operators with a nontrivial index map are treated as non-normal");
    return structure_of(t);
}

} // namespace ancl
