// SPDX-License-Identifier: Apache-2.0
#include "ancl/catalog.hpp"

#include "ancl/errors.hpp"
#include "ancl/tolerance.hpp"

#include <functional>

namespace ancl {

namespace {

WeightSeq tail_weights(const char* expr, double limit, Direction dir) {
    return WeightSeq::basic({}, Tail(Expr::parse(expr), 1, limit, dir, 1), Complex(1.0));
}

ShiftedDiagonal alternating_sign() {
    return diagonal(WeightSeq::interleave(WeightSeq::constant(1.0), WeightSeq::constant(-1.0)));
}

ShiftedDiagonal stretch_isometry() { return ShiftedDiagonal(IndexMap::stretch(2), WeightSeq::constant(1.0)); }

struct Entry {
    std::function<ShiftedDiagonal()> build;
    std::map<std::string, bool> expected;
    std::vector<double> closure_points;
    std::string summary;
};

const std::map<std::string, Entry>& entries() {
    static const std::map<std::string, Entry> table = {
        {"limit-diagonal",
         {[] { return diagonal(tail_weights("1 - 1/n", 1.0, Direction::increasing)); },
          {{"in_AN_closure", true}, {"in_AM_closure", true}, {"in_AN", false}, {"norm_attaining", false}},
          {1.0},
          "diag(1 - 1/n): essential spectrum {1} approached from below, norm 1 never attained"}},
        {"alternating-sign",
         {alternating_sign,
          {{"in_AN_closure", true}, {"in_AN", true}, {"in_AM", true}, {"norm_attaining", true}},
          {1.0},
          "diag(1, -1, 1, -1, ...): a self-adjoint unitary, so |T| = I"}},
        {"stretch-isometry",
         {stretch_isometry,
          {{"in_AN_closure", true}, {"in_AN", true}, {"norm_attaining", true}},
          {1.0},
          "e_n -> e_{2n-1}: an isometry with infinite-dimensional cokernel"}},
        {"adjoint-stretch",
         {[] { return adjoint(stretch_isometry()); },
          {{"in_AN_closure", false}, {"in_AM_closure", false}, {"in_AN", false}},
          {0.0, 1.0},
          "adjoint of the stretch isometry: |T| is the projection onto odd indices"}},
        {"infinite-projection",
         {[] { return diagonal(WeightSeq::interleave(WeightSeq::constant(1.0), WeightSeq::constant(0.0))); },
          {{"in_AN_closure", false}, {"in_AM_closure", false}, {"in_AN", false}, {"in_AM", false}},
          {0.0, 1.0},
          "diag(1, 0, 1, 0, ...): projection with infinite rank and infinite nullity"}},
        {"sum-counterexample",
         {[] { return add(alternating_sign(), diagonal(WeightSeq::constant(1.0))); },
          {{"in_AN_closure", false}, {"in_AM_closure", false}},
          {0.0, 2.0},
          "alternating-sign plus identity: diag(2, 0, 2, 0, ...), a sum of two closure members outside the closure"}},
        {"compact-diagonal",
         {[] { return diagonal(tail_weights("1/n", 0.0, Direction::decreasing)); },
          {{"in_AN_closure", true}, {"in_AN", true}, {"is_compact", true}, {"norm_attaining", true},
           {"is_finite_rank", false}},
          {0.0},
          "diag(1/n): compact with trivial kernel"}},
        {"identity",
         {[] { return diagonal(WeightSeq::constant(1.0)); },
          {{"norm_attaining", true}, {"min_attaining", true}, {"in_AN", true}, {"in_AM", true},
           {"in_AN_closure", true}, {"in_AM_closure", true}},
          {1.0},
          "the identity"}},
    };
    return table;
}

} // namespace

const std::vector<std::string>& catalog_names() {
    static const std::vector<std::string> names = {"limit-diagonal",   "alternating-sign",    "stretch-isometry",
                                                   "adjoint-stretch",  "infinite-projection", "sum-counterexample",
                                                   "compact-diagonal", "identity"};
    return names;
}

NamedExample catalog_build(const std::string& name) {
    const auto it = entries().find(name);
    if (it == entries().end()) throw LookupError("unknown catalog entry '" + name + "'");
    const Entry& e = it->second;
    return NamedExample{name, e.build(), e.expected, e.closure_points, e.summary};
}

bool report_flag(const MembershipReport& r, const std::string& flag) {
    static const std::map<std::string, bool MembershipReport::*> fields = {
        {"norm_attaining", &MembershipReport::norm_attaining}, {"min_attaining", &MembershipReport::min_attaining},
        {"in_AN", &MembershipReport::in_AN},                   {"in_AM", &MembershipReport::in_AM},
        {"in_AN_closure", &MembershipReport::in_AN_closure},   {"in_AM_closure", &MembershipReport::in_AM_closure},
        {"is_compact", &MembershipReport::is_compact},         {"is_finite_rank", &MembershipReport::is_finite_rank},
    };
    const auto it = fields.find(flag);
    if (it == fields.end()) throw LookupError("unknown flag '" + flag + "'");
    return r.*(it->second);
}

std::vector<std::string> catalog_mismatches(const NamedExample& ex, const MembershipReport& r) {
    std::vector<std::string> out;
    for (const auto& [flag, want] : ex.expected) {
        if (report_flag(r, flag) != want)
            out.push_back(ex.name + ": " + flag + " expected " + (want ? "true" : "false"));
    }
    const auto cert = r.certificates.find("in_AN_closure");
    const std::vector<double> got = cert == r.certificates.end() ? std::vector<double>{} : cert->second.points;
    bool same = got.size() == ex.closure_points.size();
    for (std::size_t i = 0; same && i < got.size(); ++i) same = same_point(got[i], ex.closure_points[i]);
    if (!same) out.push_back(ex.name + ": closure certificate points differ");
    if (!r.paths_agree) out.push_back(ex.name + ": derivation paths disagree: " + r.cross_check);
    return out;
}

} // namespace ancl
