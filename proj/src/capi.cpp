// SPDX-License-Identifier: Apache-2.0
#include "ancl/ancl.h"

#include "ancl/catalog.hpp"
#include "ancl/diagram.hpp"
#include "ancl/errors.hpp"
#include "ancl/json_io.hpp"
#include "ancl/tolerance.hpp"
#include "ancl/truncate.hpp"
#include "ancl/verify.hpp"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>
#include <variant>

struct ancl_input {
    ancl::io::Input value;
};

namespace {

using ancl::io::Json;
using ancl::io::to_json;

thread_local std::string last_error;

char* duplicate(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (!out) throw std::bad_alloc();
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

template <class F>
ancl_status guard(F&& body) {
    last_error.clear();
    try {
        body();
        return ANCL_OK;
    } catch (const ancl::Error& e) {
        last_error = e.what();
        return static_cast<ancl_status>(e.error_class());
    } catch (const std::exception& e) {
        last_error = std::string("internal: ") + e.what();
    } catch (...) {
        last_error = "internal: unknown failure";
    }
    return ANCL_ERR_INTERNAL;
}

void require(const void* p, const char* what) {
    if (!p) throw ancl::ContractError(std::string(what) + " must not be null");
}

const ancl::ShiftedDiagonal* as_operator(const ancl_input* in) { return std::get_if<ancl::ShiftedDiagonal>(&in->value); }
const ancl::SpectralProfile* as_profile(const ancl_input* in) { return std::get_if<ancl::SpectralProfile>(&in->value); }

Json operator_spectrum(const ancl::ShiftedDiagonal& t) {
    Json out = {{"kind", "operator"},
                {"modulus", to_json(ancl::spectrum_report(ancl::modulus_profile_direct(t)))},
                {"gram", to_json(ancl::spectrum_report(ancl::gram(t)))},
                {"cogram", to_json(ancl::spectrum_report(ancl::cogram(t)))}};
    if (t.is_diagonal() && t.weights().is_real()) {
        const ancl::SpectralProfile p = t.weights().real_profile();
        out["eigenvalues"] = {{"profile", to_json(p)}, {"sigma_ess", p.essential_points()}};
    }
    return out;
}

Json profile_decomposition(const ancl::SpectralProfile& p) {
    const ancl::PositiveDecomposition d = ancl::an_closure_decomposition(p);
    Json out = to_json(d);
    const ancl::MembershipReport r = ancl::classify_positive(p);
    if (r.in_AN) out["an_triple"] = to_json(ancl::an_triple(p));
    if (r.in_AM) out["am_triple"] = to_json(ancl::am_triple(p));
    return out;
}

} // namespace

extern "C" {

const char* ancl_version(void) { return "1.0.0"; }

const char* ancl_last_error(void) { return last_error.c_str(); }

void ancl_string_free(char* s) { std::free(s); }

ancl_status ancl_set_tolerance(double tau) {
    return guard([&] { ancl::set_tolerance(tau); });
}

double ancl_get_tolerance(void) { return ancl::tolerance(); }

ancl_status ancl_input_parse(const char* json, ancl_input** out) {
    return guard([&] {
        require(json, "json");
        require(out, "out");
        *out = new ancl_input{ancl::io::input_from_json(ancl::io::parse_text(json))};
    });
}

ancl_status ancl_input_catalog(const char* name, ancl_input** out) {
    return guard([&] {
        require(name, "name");
        require(out, "out");
        *out = new ancl_input{ancl::catalog_build(name).op};
    });
}

void ancl_input_free(ancl_input* in) { delete in; }

ancl_input_kind ancl_input_get_kind(const ancl_input* in) {
    return in && as_profile(in) ? ANCL_INPUT_PROFILE : ANCL_INPUT_OPERATOR;
}

ancl_status ancl_input_to_json(const ancl_input* in, char** out) {
    return guard([&] {
        require(in, "input");
        require(out, "out");
        const Json j = std::visit([](const auto& v) { return to_json(v); }, in->value);
        *out = duplicate(j.dump(2));
    });
}

int ancl_input_equal(const ancl_input* a, const ancl_input* b) {
    if (!a || !b) return 0;
    if (const auto* x = as_operator(a)) {
        const auto* y = as_operator(b);
        return y && *x == *y ? 1 : 0;
    }
    if (as_operator(b)) return 0;
    return to_json(*as_profile(a)) == to_json(*as_profile(b)) ? 1 : 0;
}

ancl_status ancl_catalog_list(char** out) {
    return guard([&] {
        require(out, "out");
        Json list = Json::array();
        for (const std::string& name : ancl::catalog_names()) {
            const ancl::NamedExample ex = ancl::catalog_build(name);
            list.push_back({{"name", name}, {"summary", ex.summary}, {"expected", ex.expected}});
        }
        *out = duplicate(list.dump(2));
    });
}

ancl_status ancl_spectrum(const ancl_input* in, char** out_json) {
    return guard([&] {
        require(in, "input");
        require(out_json, "out");
        Json j;
        if (const auto* t = as_operator(in)) {
            j = operator_spectrum(*t);
        } else {
            const ancl::SpectralProfile& p = *as_profile(in);
            j = {{"kind", "profile"}, {"report", to_json(ancl::spectrum_report(p))}, {"sigma_ess_signed", p.essential_points()}};
        }
        *out_json = duplicate(j.dump(2));
    });
}

ancl_status ancl_classify(const ancl_input* in, char** out_json) {
    return guard([&] {
        require(in, "input");
        require(out_json, "out");
        Json j;
        if (const auto* t = as_operator(in)) {
            j = to_json(ancl::membership_general(*t));
            j["two_of_three"] = to_json(ancl::two_of_three(*t));
            j["fredholm"] = to_json(ancl::fredholm_report(*t));
        } else {
            const ancl::SpectralProfile& p = *as_profile(in);
            // A signed profile is classified through its modulus.
            j = to_json(ancl::classify_positive(p.is_positive() ? p : ancl::abs_profile(p)));
            if (!p.is_positive()) j["classified_via"] = "modulus of the signed profile";
        }
        *out_json = duplicate(j.dump(2));
    });
}

ancl_status ancl_decompose(const ancl_input* in, char** out_json) {
    return guard([&] {
        require(in, "input");
        require(out_json, "out");
        Json j;
        if (const auto* t = as_operator(in)) {
            j = profile_decomposition(ancl::modulus_profile_direct(*t));
            j["alpha_w_k"] = to_json(ancl::structure_alpha_w_k(*t));
            if (t->is_diagonal()) {
                j["normal_structure"] = to_json(t->weights().is_real() ? ancl::selfadjoint_structure(*t)
                                                                       : ancl::normal_structure(*t));
            }
        } else {
            const ancl::SpectralProfile& p = *as_profile(in);
            if (!p.is_positive()) throw ancl::ContractError("decomposition needs a positive profile");
            j = profile_decomposition(p);
        }
        *out_json = duplicate(j.dump(2));
    });
}

ancl_status ancl_diagram(const ancl_input* in, ancl_diagram_format format, char** out) {
    return guard([&] {
        require(in, "input");
        require(out, "out");
        const auto* t = as_operator(in);
        const ancl::DiagramSpec d = ancl::build_diagram(t ? ancl::modulus_profile_direct(*t) : *as_profile(in));
        *out = duplicate(format == ANCL_DIAGRAM_SVG ? ancl::render_svg(d) : ancl::render_ascii(d));
    });
}

ancl_status ancl_oracle(const ancl_input* in, const int64_t* sizes, size_t count, char** out_csv) {
    return guard([&] {
        require(in, "input");
        require(out_csv, "out");
        if (count > 0) require(sizes, "sizes");
        const auto* t = as_operator(in);
        if (!t) throw ancl::ContractError("the truncation oracle needs an operator, not a profile");
        const std::vector<ancl::Index> s(sizes, sizes + count);
        *out_csv = duplicate(ancl::convergence_study(*t, s).to_csv());
    });
}

ancl_status ancl_verify(const ancl_input* in, char** out_json, int* all_passed) {
    return guard([&] {
        require(in, "input");
        require(out_json, "out");
        const auto* t = as_operator(in);
        const std::vector<ancl::CheckResult> rs = t ? ancl::verify_operator(*t) : ancl::verify_profile(*as_profile(in));
        Json checks = Json::array();
        for (const ancl::CheckResult& r : rs)
            checks.push_back({{"name", r.name}, {"status", ancl::status_name(r.status)}, {"detail", r.detail}});
        const bool ok = ancl::all_passed(rs);
        *out_json = duplicate(Json{{"all_passed", ok}, {"checks", checks}}.dump(2));
        if (all_passed) *all_passed = ok ? 1 : 0;
    });
}

} // extern "C"
