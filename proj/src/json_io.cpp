// SPDX-License-Identifier: Apache-2.0
#include "ancl/json_io.hpp"

#include "ancl/errors.hpp"

#include <cmath>
#include <string_view>

namespace ancl::io {

namespace {

[[noreturn]] void fail(const std::string& at, const std::string& msg) {
    throw ParseError((at.empty() ? std::string("/") : at) + ": " + msg);
}

const Json& member(const Json& j, const std::string& at, const char* key) {
    if (!j.is_object()) fail(at, "expected an object");
    const auto it = j.find(key);
    if (it == j.end()) fail(at, std::string("missing member '") + key + "'");
    return *it;
}

const Json* optional_member(const Json& j, const std::string& at, const char* key) {
    if (!j.is_object()) fail(at, "expected an object");
    const auto it = j.find(key);
    return it == j.end() ? nullptr : &*it;
}

std::string child(const std::string& at, std::string_view key) { return at + "/" + std::string(key); }
std::string child(const std::string& at, std::size_t i) { return at + "/" + std::to_string(i); }

double number(const Json& j, const std::string& at) {
    if (!j.is_number()) fail(at, "expected a number");
    const double v = j.get<double>();
    if (!std::isfinite(v)) fail(at, "expected a finite number");
    return v;
}

Index integer(const Json& j, const std::string& at) {
    if (!j.is_number_integer()) fail(at, "expected an integer");
    return j.get<Index>();
}

std::string text(const Json& j, const std::string& at) {
    if (!j.is_string()) fail(at, "expected a string");
    return j.get<std::string>();
}

const Json& array(const Json& j, const std::string& at) {
    if (!j.is_array()) fail(at, "expected an array");
    return j;
}

Complex complex_from(const Json& j, const std::string& at) {
    const double re = number(member(j, at, "re"), child(at, "re"));
    const Json* im = optional_member(j, at, "im");
    return {re, im ? number(*im, child(at, "im")) : 0.0};
}

Multiplicity mult_from(const Json& j, const std::string& at) {
    if (j.is_string()) {
        if (j.get<std::string>() != "inf") fail(at, "multiplicity must be a positive integer or \"inf\"");
        return Multiplicity::infinite();
    }
    const Index k = integer(j, at);
    if (k < 1) fail(at, "multiplicity must be a positive integer or \"inf\"");
    return Multiplicity::finite(static_cast<std::uint64_t>(k));
}

// Contract-level failures while building a value from well-formed JSON are
// reported as input errors at the given pointer.
template <class F>
auto guarded(const std::string& at, F&& build) {
    try {
        return build();
    } catch (const CertificationError& e) {
        std::string w = e.what();
        const std::string prefix = "certification: ";
        if (w.rfind(prefix, 0) == 0) w = w.substr(prefix.size());
        throw CertificationError((at.empty() ? std::string("/") : at) + ": " + w);
    } catch (const Error& e) {
        fail(at, e.what());
    }
}

Json code(WeightSeq::ModulusFn f) {
    switch (f) {
    case WeightSeq::ModulusFn::abs: return "abs";
    case WeightSeq::ModulusFn::square: return "square";
    case WeightSeq::ModulusFn::deficit: return "deficit";
    case WeightSeq::ModulusFn::excess: return "excess";
    }
    return "abs";
}

} // namespace

Json parse_text(const std::string& s) {
    try {
        return Json::parse(s);
    } catch (const Json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
}

Tail tail_from_json(const Json& j, const std::string& at) {
    const std::string expr = text(member(j, at, "expr"), child(at, "expr"));
    const Index start = integer(member(j, at, "start"), child(at, "start"));
    const double limit = number(member(j, at, "limit"), child(at, "limit"));
    const std::string dir = text(member(j, at, "direction"), child(at, "direction"));
    if (dir != "inc" && dir != "dec") fail(child(at, "direction"), "expected \"inc\" or \"dec\"");
    const Json* mono = optional_member(j, at, "mono_from");
    const Index mono_from = mono ? integer(*mono, child(at, "mono_from")) : start;
    const Expr e = guarded(child(at, "expr"), [&] { return Expr::parse(expr); });
    return guarded(at, [&] {
        return Tail(e, start, limit, dir == "inc" ? Direction::increasing : Direction::decreasing, mono_from);
    });
}

SpectralProfile profile_from_json(const Json& j, const std::string& at) {
    std::vector<Atom> atoms;
    std::vector<Tail> tails;
    if (const Json* a = optional_member(j, at, "atoms")) {
        const std::string ap = child(at, "atoms");
        for (std::size_t i = 0; i < array(*a, ap).size(); ++i) {
            const std::string p = child(ap, i);
            atoms.push_back({number(member((*a)[i], p, "value"), child(p, "value")),
                             mult_from(member((*a)[i], p, "mult"), child(p, "mult"))});
        }
    }
    if (const Json* t = optional_member(j, at, "tails")) {
        const std::string tp = child(at, "tails");
        for (std::size_t i = 0; i < array(*t, tp).size(); ++i) tails.push_back(tail_from_json((*t)[i], child(tp, i)));
    }
    return guarded(at, [&] { return SpectralProfile(std::move(atoms), std::move(tails)); });
}

IndexMap map_from_json(const Json& j, const std::string& at) {
    const std::string kind = text(member(j, at, "kind"), child(at, "kind"));
    auto sub = [&](const char* key) { return map_from_json(member(j, at, key), child(at, key)); };
    auto param = [&](const char* key) { return integer(member(j, at, key), child(at, key)); };
    if (kind == "identity") return IndexMap::identity();
    if (kind == "shift") {
        const Index k = param("k");
        return guarded(at, [&] { return IndexMap::shift(k); });
    }
    if (kind == "stretch") {
        const Index k = param("factor");
        return guarded(at, [&] { return IndexMap::stretch(k); });
    }
    if (kind == "table") {
        const Index size = param("size");
        const Json& pj = member(j, at, "pairs");
        const std::string pp = child(at, "pairs");
        std::vector<std::pair<Index, Index>> pairs;
        for (std::size_t i = 0; i < array(pj, pp).size(); ++i) {
            const std::string p = child(pp, i);
            if (!pj[i].is_array() || pj[i].size() != 2) fail(p, "expected a pair [n, image]");
            pairs.emplace_back(integer(pj[i][0], child(p, 0)), integer(pj[i][1], child(p, 1)));
        }
        return guarded(at, [&] { return IndexMap::table(size, std::move(pairs)); });
    }
    if (kind == "inverse") {
        const IndexMap of = sub("of");
        return guarded(at, [&] { return IndexMap::inverse(of); });
    }
    if (kind == "compose") {
        const IndexMap outer = sub("outer");
        const IndexMap inner = sub("inner");
        return guarded(at, [&] { return IndexMap::compose(outer, inner); });
    }
    if (kind == "interleave") {
        const IndexMap odd = sub("odd");
        const IndexMap even = sub("even");
        return guarded(at, [&] { return IndexMap::interleave(odd, even); });
    }
    fail(child(at, "kind"), "unknown map kind '" + kind + "'");
}

WeightSeq weights_from_json(const Json& j, const std::string& at) {
    const Json* kj = optional_member(j, at, "kind");
    const std::string kind = kj ? text(*kj, child(at, "kind")) : "basic";
    auto sub = [&](const char* key) { return weights_from_json(member(j, at, key), child(at, key)); };
    auto map = [&] { return map_from_json(member(j, at, "map"), child(at, "map")); };
    if (kind == "basic") {
        std::vector<Complex> prefix;
        if (const Json* pj = optional_member(j, at, "prefix")) {
            const std::string pp = child(at, "prefix");
            for (std::size_t i = 0; i < array(*pj, pp).size(); ++i) prefix.push_back(complex_from((*pj)[i], child(pp, i)));
        }
        const Json* tj = optional_member(j, at, "tail");
        const Json* cj = optional_member(j, at, "constant");
        if ((tj == nullptr) == (cj == nullptr)) fail(at, "exactly one of 'tail' and 'constant' is required");
        if (cj) {
            const Complex c = complex_from(*cj, child(at, "constant"));
            return guarded(at, [&] { return WeightSeq::basic(std::move(prefix), c); });
        }
        const std::string tp = child(at, "tail");
        const Tail tail = tail_from_json(member(*tj, tp, "modulus"), child(tp, "modulus"));
        const Json* ph = optional_member(*tj, tp, "phase");
        const Complex phase = ph ? complex_from(*ph, child(tp, "phase")) : Complex(1.0);
        return guarded(at, [&] { return WeightSeq::basic(std::move(prefix), tail, phase); });
    }
    if (kind == "interleave") {
        const WeightSeq odd = sub("odd");
        const WeightSeq even = sub("even");
        return guarded(at, [&] { return WeightSeq::interleave(odd, even); });
    }
    if (kind == "reindex" || kind == "mask") {
        const WeightSeq w = sub("weights");
        const IndexMap m = map();
        return guarded(at, [&] { return kind == "reindex" ? WeightSeq::reindex(w, m) : WeightSeq::mask(w, m); });
    }
    if (kind == "mul" || kind == "add") {
        const WeightSeq a = sub("first");
        const WeightSeq b = sub("second");
        return guarded(at, [&] { return kind == "mul" ? WeightSeq::mul(a, b) : WeightSeq::add(a, b); });
    }
    if (kind == "conj" || kind == "phase") {
        const WeightSeq w = sub("weights");
        return guarded(at, [&] { return kind == "conj" ? WeightSeq::conj(w) : WeightSeq::phase(w); });
    }
    if (kind == "modulus") {
        const WeightSeq w = sub("weights");
        const std::string fn = text(member(j, at, "fn"), child(at, "fn"));
        const Json* aj = optional_member(j, at, "alpha");
        const double alpha = aj ? number(*aj, child(at, "alpha")) : 0.0;
        WeightSeq::ModulusFn f;
        if (fn == "abs") f = WeightSeq::ModulusFn::abs;
        else if (fn == "square") f = WeightSeq::ModulusFn::square;
        else if (fn == "deficit") f = WeightSeq::ModulusFn::deficit;
        else if (fn == "excess") f = WeightSeq::ModulusFn::excess;
        else fail(child(at, "fn"), "unknown modulus function '" + fn + "'");
        return guarded(at, [&] { return WeightSeq::modulus_map(w, f, alpha); });
    }
    fail(child(at, "kind"), "unknown weight kind '" + kind + "'");
}

ShiftedDiagonal operator_from_json(const Json& j, const std::string& at) {
    const IndexMap m = map_from_json(member(j, at, "map"), child(at, "map"));
    const WeightSeq w = weights_from_json(member(j, at, "weights"), child(at, "weights"));
    return ShiftedDiagonal(m, w);
}

Input input_from_json(const Json& j) {
    if (!j.is_object()) fail("", "expected an object");
    if (j.contains("map")) return operator_from_json(j);
    return profile_from_json(j);
}

Json to_json(Complex z) { return {{"re", z.real()}, {"im", z.imag()}}; }

Json to_json(const Multiplicity& m) {
    if (m.is_infinite()) return "inf";
    return m.count();
}

Json to_json(const Tail& t) {
    return {{"expr", t.expr().to_string()},
            {"start", t.start()},
            {"limit", t.limit()},
            {"direction", t.direction() == Direction::increasing ? "inc" : "dec"},
            {"mono_from", t.mono_from()}};
}

Json to_json(const SpectralProfile& p) {
    Json atoms = Json::array();
    for (const Atom& a : p.atoms()) atoms.push_back({{"value", a.value}, {"mult", to_json(a.mult)}});
    Json tails = Json::array();
    for (const Tail& t : p.tails()) tails.push_back(to_json(t));
    return {{"atoms", atoms}, {"tails", tails}};
}

Json to_json(const IndexMap& m) {
    switch (m.kind()) {
    case IndexMap::Kind::identity: return {{"kind", "identity"}};
    case IndexMap::Kind::shift: return {{"kind", "shift"}, {"k", m.param()}};
    case IndexMap::Kind::stretch: return {{"kind", "stretch"}, {"factor", m.param()}};
    case IndexMap::Kind::table: {
        Json pairs = Json::array();
        for (const auto& [a, b] : m.pairs()) pairs.push_back({a, b});
        return {{"kind", "table"}, {"size", m.param()}, {"pairs", pairs}};
    }
    case IndexMap::Kind::inverse: return {{"kind", "inverse"}, {"of", to_json(m.first())}};
    case IndexMap::Kind::compose:
        return {{"kind", "compose"}, {"outer", to_json(m.first())}, {"inner", to_json(m.second())}};
    case IndexMap::Kind::interleave:
        return {{"kind", "interleave"}, {"odd", to_json(m.first())}, {"even", to_json(m.second())}};
    }
    return {};
}

Json to_json(const WeightSeq& w) {
    switch (w.kind()) {
    case WeightSeq::Kind::basic: {
        Json prefix = Json::array();
        for (Complex z : w.prefix()) prefix.push_back(to_json(z));
        Json out = {{"prefix", prefix}};
        if (w.tail()) out["tail"] = {{"modulus", to_json(*w.tail())}, {"phase", to_json(w.tail_phase())}};
        else out["constant"] = to_json(w.tail_constant());
        return out;
    }
    case WeightSeq::Kind::interleave:
        return {{"kind", "interleave"}, {"odd", to_json(w.first())}, {"even", to_json(w.second())}};
    case WeightSeq::Kind::reindex: return {{"kind", "reindex"}, {"weights", to_json(w.first())}, {"map", to_json(w.map())}};
    case WeightSeq::Kind::mask: return {{"kind", "mask"}, {"weights", to_json(w.first())}, {"map", to_json(w.map())}};
    case WeightSeq::Kind::mul: return {{"kind", "mul"}, {"first", to_json(w.first())}, {"second", to_json(w.second())}};
    case WeightSeq::Kind::add: return {{"kind", "add"}, {"first", to_json(w.first())}, {"second", to_json(w.second())}};
    case WeightSeq::Kind::conj: return {{"kind", "conj"}, {"weights", to_json(w.first())}};
    case WeightSeq::Kind::phase: return {{"kind", "phase"}, {"weights", to_json(w.first())}};
    case WeightSeq::Kind::modulus_map:
        return {{"kind", "modulus"}, {"fn", code(w.modulus_fn())}, {"alpha", w.alpha()}, {"weights", to_json(w.first())}};
    }
    return {};
}

Json to_json(const ShiftedDiagonal& t) { return {{"map", to_json(t.map())}, {"weights", to_json(t.weights())}}; }

Json to_json(const SpectrumReport& r) {
    Json expl = Json::array();
    for (const Atom& a : r.sigma_d.explicit_part) expl.push_back({{"value", a.value}, {"mult", to_json(a.mult)}});
    return {{"sigma_ess", r.sigma_ess},
            {"sigma_d", {{"explicit", expl}, {"tails", r.sigma_d.tail_refs}}},
            {"norm", r.norm},
            {"min_modulus", r.min_modulus},
            {"ess_min_modulus", r.ess_min_modulus},
            {"norm_attained", r.norm_attained},
            {"min_attained", r.min_attained},
            {"note", r.note}};
}

Json to_json(const Certificate& c) {
    Json out = {{"criterion", c.criterion}, {"holds", c.holds}, {"detail", c.detail}, {"points", c.points}};
    if (c.alpha) out["alpha"] = *c.alpha;
    if (c.attaining_value) out["attaining_value"] = *c.attaining_value;
    return out;
}

Json to_json(const MembershipReport& r) {
    Json certs = Json::object();
    for (const auto& [k, c] : r.certificates) certs[k] = to_json(c);
    return {{"norm_attaining", r.norm_attaining},
            {"min_attaining", r.min_attaining},
            {"in_AN", r.in_AN},
            {"in_AM", r.in_AM},
            {"in_AN_closure", r.in_AN_closure},
            {"in_AM_closure", r.in_AM_closure},
            {"is_compact", r.is_compact},
            {"is_finite_rank", r.is_finite_rank},
            {"certificates", certs},
            {"paths_agree", r.paths_agree},
            {"cross_check", r.cross_check}};
}

Json to_json(const PositiveDecomposition& d) {
    return {{"alpha", d.alpha}, {"K1", to_json(d.K1)}, {"K2", to_json(d.K2)}};
}

Json to_json(const Triple& t) {
    Json fin = Json::array();
    for (const Atom& a : t.finite_part) fin.push_back({{"value", a.value}, {"mult", to_json(a.mult)}});
    return {{"alpha", t.alpha}, {"compact_part", to_json(t.compact_part)}, {"finite_part", fin}};
}

Json to_json(const AlphaWK& s) {
    return {{"alpha", s.alpha}, {"W", to_json(s.W)}, {"K", to_json(s.K)}, {"k_compact", s.k_compact}};
}

Json to_json(const FredholmReport& f) {
    return {{"kernel_dim", f.kernel_dim ? to_json(*f.kernel_dim) : Json(0)},
            {"range_closed", f.range_closed},
            {"left_semi_fredholm", f.left_semi_fredholm},
            {"inf_nonzero_modulus", f.inf_nonzero_modulus},
            {"corollary_applies", f.corollary_applies},
            {"corollary_holds", f.corollary_holds},
            {"certificate", f.certificate}};
}

Json to_json(const TwoOfThree& t) {
    return {{"in_closure_T", t.in_closure_T},
            {"in_closure_Tstar", t.in_closure_Tstar},
            {"ess_equal", t.ess_equal},
            {"consistent", t.consistent}};
}

Json to_json(const NormalStructure& s) {
    return {{"alpha", s.alpha}, {"W", to_json(s.W)}, {"K1", to_json(s.K1)}, {"K2", to_json(s.K2)}};
}

Json to_json(const ConvergenceStudy& s) {
    Json rows = Json::array();
    for (const StudyRow& r : s.rows)
        rows.push_back({{"n", r.n},
                        {"norm_est", r.norm_estimate},
                        {"min_sv_est", r.min_singular_estimate},
                        {"gap_to_symbolic", r.gap_to_symbolic},
                        {"summary", r.summary}});
    return {{"symbolic_norm", s.symbolic_norm}, {"symbolic_min_modulus", s.symbolic_min_modulus}, {"rows", rows},
            {"notes", s.notes}};
}

} // namespace ancl::io
