// SPDX-License-Identifier: Apache-2.0
#include "ancl/verify.hpp"

#include "ancl/classify.hpp"
#include "ancl/errors.hpp"
#include "ancl/tolerance.hpp"
#include "ancl/truncate.hpp"

#include <cmath>
#include <functional>
#include <sstream>

namespace ancl {

namespace {

constexpr Index kDepth = 2000;
constexpr Index kSection = 256;

struct Outcome {
    bool ok;
    std::string detail;
};

class Runner {
public:
    void run(const std::string& name, const std::function<Outcome()>& body) {
        try {
            const Outcome o = body();
            results.push_back({name, o.ok ? CheckStatus::pass : CheckStatus::fail, o.detail});
        } catch (const NotMemberError& e) {
            results.push_back({name, CheckStatus::skipped, std::string("not applicable: ") + e.what()});
        } catch (const Error& e) {
            results.push_back({name, CheckStatus::fail, e.what()});
        }
    }
    void skip(const std::string& name, const std::string& why) { results.push_back({name, CheckStatus::skipped, why}); }

    std::vector<CheckResult> results;
};

std::string num(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

Outcome lattice(const MembershipReport& r) {
    const bool ok = (!r.in_AN || r.in_AN_closure) && (!r.in_AM || r.in_AM_closure) && r.in_AN_closure == r.in_AM_closure;
    return {ok, ok ? "AN => closure, AM => closure, closures equal" : "flag lattice broken"};
}

void profile_checks(Runner& run, const SpectralProfile& p, const std::string& prefix) {
    if (!p.is_positive()) return;
    const MembershipReport r = classify_positive(p);
    run.run(prefix + "flag_lattice", [&] { return lattice(r); });
    if (!r.in_AN_closure) {
        run.skip(prefix + "decomposition", "profile is outside the closure");
        return;
    }
    run.run(prefix + "decomposition", [&] {
        const PositiveDecomposition d = an_closure_decomposition(p);
        const SpectrumReport rep = spectrum_report(p);
        if (!same_point(d.alpha, rep.ess_min_modulus)) return Outcome{false, "alpha differs from m_e"};
        if (d.K1.sup() > d.alpha + tolerance()) return Outcome{false, "||K1|| exceeds alpha"};
        const std::vector<double> inf_vals = rep.sigma_ess;
        const bool same = same_multiset(d.reconstruct(kDepth), p.sample(kDepth), inf_vals, tolerance());
        return Outcome{same, same ? "alpha = " + num(d.alpha) + ", multiset rebuilt on the first " +
                                        std::to_string(kDepth) + " entries"
                                  : "reconstruction differs"};
    });
    run.run(prefix + "triples", [&] {
        const Triple t = r.in_AN ? an_triple(p) : am_triple(p);
        return Outcome{same_point(t.alpha, spectrum_report(p).ess_min_modulus) &&
                           compactness_check(t.compact_part).is_compact,
                       std::string(r.in_AN ? "AN" : "AM") + " triple with compact part"};
    });
}

} // namespace

const char* status_name(CheckStatus s) {
    switch (s) {
    case CheckStatus::pass: return "pass";
    case CheckStatus::fail: return "fail";
    case CheckStatus::skipped: return "skipped";
    }
    return "fail";
}

bool all_passed(const std::vector<CheckResult>& results) {
    for (const CheckResult& r : results)
        if (r.status == CheckStatus::fail) return false;
    return true;
}

std::vector<CheckResult> verify_operator(const ShiftedDiagonal& t) {
    Runner run;
    run.run("weights.normal_form", [&] {
        const WeightNormalForm& nf = t.weights().normal_form();
        for (Index n = 1; n <= kDepth; ++n) {
            const WeightPiece& p = nf.pieces[static_cast<std::size_t>((n - 1) % nf.period)];
            if (n < p.from) continue;
            const Complex v = p.is_expr ? p.phase * p.expr->eval(static_cast<double>(n)) : p.value;
            if (std::abs(v - t.weights().entry(n)) > 1e-9)
                return Outcome{false, "entry " + std::to_string(n) + " differs from the normal form"};
        }
        return Outcome{true, "entries match the normal form up to " + std::to_string(kDepth)};
    });
    run.run("adjoint.involution", [&] {
        const bool ok = actions_agree(adjoint(adjoint(t)), t, kDepth);
        return Outcome{ok, "T** = T on e_1..e_" + std::to_string(kDepth)};
    });
    run.run("polar.factorization", [&] {
        const PolarParts pp = polar_decompose(t);
        const bool ok = actions_agree(compose(pp.isometry_part, pp.modulus_part), t, kDepth);
        return Outcome{ok, "W |T| = T on e_1..e_" + std::to_string(kDepth)};
    });
    MembershipReport m;
    run.run("membership.paths_agree", [&] {
        m = membership_general(t);
        return Outcome{m.paths_agree, m.cross_check};
    });
    run.run("membership.flag_lattice", [&] { return lattice(m); });
    run.run("two_of_three.consistent", [&] {
        const TwoOfThree tt = two_of_three(t);
        return Outcome{tt.consistent, tt.consistent ? "any two of the three conditions imply the third"
                                                    : "pattern violates the two-of-three rule"};
    });
    if (m.in_AN_closure) {
        run.run("structure.alpha_w_k", [&] {
            const AlphaWK s = structure_alpha_w_k(t);
            const bool ok = s.k_compact && actions_agree(add(scale(s.W, s.alpha), s.K), t, kDepth);
            return Outcome{ok, "T = " + num(s.alpha) + " W + K with K compact"};
        });
    } else {
        run.skip("structure.alpha_w_k", "operator is outside the closure");
    }
    run.run("fredholm.corollary", [&] {
        const FredholmReport f = fredholm_report(t);
        if (!f.corollary_applies) return Outcome{true, "corollary does not apply"};
        return Outcome{f.corollary_holds, f.certificate};
    });
    run.run("oracle.section_norm", [&] {
        const double est = singular_values(materialize(t, kSection)).back();
        const double norm = operator_norm(t);
        return Outcome{est <= norm + 1e-9, "section " + std::to_string(kSection) + " max singular value " + num(est) +
                                               " <= ||T|| = " + num(norm)};
    });
    if (t.is_diagonal() && t.weights().is_real()) {
        run.run("weyl.compact_perturbation", [&] {
            const WeightSeq k = WeightSeq::basic({}, Tail(Expr::parse("1/n"), 1, 0.0, Direction::decreasing, 1), 1.0);
            const auto a = t.weights().real_profile().essential_points();
            const auto b = WeightSeq::add(t.weights(), k).real_profile().essential_points();
            bool same = a.size() == b.size();
            for (std::size_t i = 0; same && i < a.size(); ++i) same = same_point(a[i], b[i]);
            return Outcome{same, "sigma_ess unchanged by adding diag(1/n)"};
        });
        if (m.in_AN_closure) {
            run.run("selfadjoint.structure", [&] {
                const NormalStructure s = selfadjoint_structure(t);
                for (Index n = 1; n <= kDepth; ++n) {
                    const Complex k1 = s.K1.weights().entry(n), k2 = s.K2.weights().entry(n);
                    const Complex rebuilt = s.alpha * s.W.weights().entry(n) - k1 + k2;
                    if (std::abs(rebuilt - t.weights().entry(n)) > 1e-9) return Outcome{false, "entry " + std::to_string(n)};
                    if (std::abs(k1) > 0 && std::abs(k2) > 0) return Outcome{false, "K1 K2 != 0 at " + std::to_string(n)};
                }
                return Outcome{selfadjoint_ess_pair_check(t.weights().real_profile()),
                               "T = alpha W - K1 + K2 entrywise, sigma_ess within {alpha, -alpha}"};
            });
        }
    }
    try {
        profile_checks(run, gram(t), "gram.");
    } catch (const Error& e) {
        run.results.push_back({"gram.profile", CheckStatus::fail, e.what()});
    }
    return run.results;
}

std::vector<CheckResult> verify_profile(const SpectralProfile& p) {
    Runner run;
    run.run("profile.square_sqrt", [&] {
        const SpectralProfile a = abs_profile(p);
        const SpectralProfile back = sqrt_profile(square_profile(a));
        const bool ok = same_multiset(back.sample(kDepth), a.sample(kDepth), a.essential_points(), 1e-9);
        return Outcome{ok, "sqrt(square(|p|)) = |p| on the first " + std::to_string(kDepth) + " entries"};
    });
    if (p.is_positive()) {
        profile_checks(run, p, "");
    } else {
        run.run("selfadjoint.ess_pair", [&] {
            const bool single = abs_profile(p).essential_points().size() == 1;
            if (!single) return Outcome{true, "|p| has several essential points"};
            return Outcome{selfadjoint_ess_pair_check(p), "sigma_ess within {alpha, -alpha}"};
        });
        profile_checks(run, abs_profile(p), "abs.");
    }
    return run.results;
}

} // namespace ancl
