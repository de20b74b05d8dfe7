// SPDX-License-Identifier: Apache-2.0
#include "ancl/weights.hpp"

#include "ancl/errors.hpp"
#include "ancl/tolerance.hpp"
#include "detail.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <map>
#include <numeric>

namespace ancl {

std::string format_double(double v) {
    std::array<char, 64> buf{};
    auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), end);
}

struct WeightSeq::Node {
    Kind kind = Kind::basic;
    std::vector<Complex> prefix;
    std::optional<Tail> tail;
    Complex tail_constant{0.0, 0.0};
    Complex tail_phase{1.0, 0.0};
    std::optional<WeightSeq> a;
    std::optional<WeightSeq> b;
    std::optional<IndexMap> map;
    ModulusFn fn = ModulusFn::abs;
    double alpha = 0.0;
    WeightNormalForm nf;
    std::string canonical;
};

namespace {

using detail::ceil_div;
using detail::first_in_class;

const double kPhaseTol = 1e-12;

std::string format_complex(Complex c) { return format_double(c.real()) + (c.imag() < 0 ? "" : "+") + format_double(c.imag()) + "i"; }

Expr linear(Index a, Index b) {
    Expr e = Expr::var();
    if (a != 1) e = Expr::constant(static_cast<double>(a)) * e;
    if (b > 0) e = e + Expr::constant(static_cast<double>(b));
    if (b < 0) e = e - Expr::constant(static_cast<double>(-b));
    return e;
}

/// m = S(n - r1)/P + T as an expression in n.
Expr index_affine(Index S, Index P, Index r1, Index T) {
    if (S % P == 0) {
        const Index a = S / P;
        return linear(a, T - a * r1);
    }
    Expr e = Expr::constant(static_cast<double>(S)) * linear(1, -r1) / Expr::constant(static_cast<double>(P));
    if (T > 0) e = e + Expr::constant(static_cast<double>(T));
    if (T < 0) e = e - Expr::constant(static_cast<double>(-T));
    return e;
}

Expr scaled(const Expr& e, double k) { return k == 1.0 ? e : (Expr::constant(k) * e).simplified(); }

Expr shifted(const Expr& e, double b) {
    if (b > 0) return (e + Expr::constant(b)).simplified();
    if (b < 0) return (e - Expr::constant(-b)).simplified();
    return e;
}

Expr substituted(const Expr& e, const Expr& index) { return e.substitute(index); }

bool same_phase(Complex a, Complex b) { return std::abs(a - b) <= kPhaseTol; }

Complex unit(Complex c) { return c / std::abs(c); }

WeightPiece constant_piece(Complex v, Index from) {
    WeightPiece p;
    p.value = v;
    p.from = from;
    return p;
}

WeightPiece expr_piece(Complex phase, Expr e, double limit, Index from) {
    WeightPiece p;
    p.is_expr = true;
    p.phase = phase;
    p.expr = std::move(e);
    p.limit = limit;
    p.from = from;
    return p;
}

void check_period(Index p) {
    if (p > kMaxPeriod) throw ContractError("weight sequence too irregular for symbolic analysis");
}

/// Sign behaviour of a real expression along one residue class.
struct ClassSign {
    Index from;
    int sign;
    std::optional<double> constant;
};

ClassSign class_sign(const Expr& e, double limit, Index from, Index P, Index r1) {
    const Expr ej = (P == 1 && r1 == 1) ? e : substituted(e, linear(P, r1 - P));
    const Index j0 = std::max<Index>(1, ceil_div(from - r1, P) + 1);
    const FittedSequence fs = fit_sequence(ej, j0, limit);
    if (fs.constant) {
        const double k = *fs.constant;
        const int s = std::abs(k) <= kZeroWeight ? 0 : (k > 0 ? 1 : -1);
        return {from, s, k};
    }
    const SignStable ss = sign_stable_from(*fs.tail);
    return {std::max(from, P * (ss.from - 1) + r1), ss.sign, std::nullopt};
}

/// |phase * e| on its class: either a constant or a nonnegative expression.
WeightPiece abs_piece(const WeightPiece& p, Index P, Index r1) {
    if (!p.is_expr) return constant_piece(std::abs(p.value), p.from);
    const ClassSign s = class_sign(*p.expr, p.limit, p.from, P, r1);
    if (s.constant) return constant_piece(std::abs(*s.constant), p.from);
    if (s.sign == 0) return constant_piece(0.0, s.from);
    return expr_piece(1.0, s.sign > 0 ? *p.expr : (Expr::constant(-1.0) * *p.expr).simplified(), std::abs(p.limit), s.from);
}

/// max(sign * (a - alpha), 0) for a nonnegative piece a.
WeightPiece clipped_piece(const WeightPiece& a, double alpha, int sign, Index P, Index r1) {
    if (!a.is_expr) return constant_piece(std::max(sign * (a.value.real() - alpha), 0.0), a.from);
    double limit = sign * (a.limit - alpha);
    if (std::abs(limit) <= tolerance() * std::max(1.0, std::abs(alpha))) limit = 0.0;
    const Expr g = sign > 0 ? shifted(*a.expr, -alpha) : (Expr::constant(alpha) - *a.expr).simplified();
    const ClassSign s = class_sign(g, limit, a.from, P, r1);
    if (s.constant) return constant_piece(std::max(*s.constant, 0.0), a.from);
    if (s.sign <= 0) return constant_piece(0.0, s.from);
    return expr_piece(1.0, g, limit, s.from);
}

WeightNormalForm combine(const WeightNormalForm& x, const WeightNormalForm& y,
                         const std::function<WeightPiece(const WeightPiece&, const WeightPiece&)>& op) {
    const Index L = std::lcm(x.period, y.period);
    check_period(L);
    const WeightNormalForm xr = x.refined(L / x.period);
    const WeightNormalForm yr = y.refined(L / y.period);
    WeightNormalForm out;
    out.period = L;
    for (Index c = 0; c < L; ++c) {
        const auto& px = xr.pieces[static_cast<std::size_t>(c)];
        const auto& py = yr.pieces[static_cast<std::size_t>(c)];
        WeightPiece r = op(px, py);
        r.from = std::max({r.from, px.from, py.from});
        out.pieces.push_back(std::move(r));
    }
    return out;
}

WeightPiece mul_pieces(const WeightPiece& x, const WeightPiece& y) {
    if (!x.is_expr && !y.is_expr) return constant_piece(x.value * y.value, 1);
    if (!x.is_expr || !y.is_expr) {
        const WeightPiece& c = x.is_expr ? y : x;
        const WeightPiece& e = x.is_expr ? x : y;
        const double m = std::abs(c.value);
        if (m <= kZeroWeight) return constant_piece(0.0, 1);
        return expr_piece(unit(e.phase * c.value), scaled(*e.expr, m), m * e.limit, 1);
    }
    return expr_piece(unit(x.phase * y.phase), *x.expr * *y.expr, x.limit * y.limit, 1);
}

WeightPiece add_pieces(const WeightPiece& x, const WeightPiece& y) {
    if (!x.is_expr && !y.is_expr) return constant_piece(x.value + y.value, 1);
    if (!x.is_expr || !y.is_expr) {
        const WeightPiece& c = x.is_expr ? y : x;
        const WeightPiece& e = x.is_expr ? x : y;
        if (std::abs(c.value) <= kZeroWeight) return e;
        const Complex r = c.value / e.phase;
        if (std::abs(r.imag()) > kPhaseTol * std::max(1.0, std::abs(r))) {
            throw UnsupportedSumError("weights with independent phases cannot be added symbolically");
        }
        return expr_piece(e.phase, shifted(*e.expr, r.real()), e.limit + r.real(), 1);
    }
    if (same_phase(x.phase, y.phase)) return expr_piece(x.phase, *x.expr + *y.expr, x.limit + y.limit, 1);
    if (same_phase(x.phase, -y.phase)) return expr_piece(x.phase, *x.expr - *y.expr, x.limit - y.limit, 1);
    throw UnsupportedSumError("weights with independent phases cannot be added symbolically");
}

} // namespace

Index WeightNormalForm::max_from() const {
    Index m = 1;
    for (const WeightPiece& p : pieces) m = std::max(m, p.from);
    return m;
}

WeightNormalForm WeightNormalForm::refined(Index k) const {
    if (k == 1) return *this;
    check_period(period * k);
    WeightNormalForm out;
    out.period = period * k;
    for (Index c = 0; c < out.period; ++c) out.pieces.push_back(pieces[static_cast<std::size_t>(c % period)]);
    return out;
}

WeightSeq::WeightSeq(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

WeightSeq WeightSeq::constant(Complex c) { return basic({}, c); }

WeightSeq WeightSeq::basic(std::vector<Complex> prefix, Complex tail_constant) {
    for (Complex v : prefix) {
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) throw ValidationError("weight prefix entries must be finite");
    }
    if (!std::isfinite(tail_constant.real()) || !std::isfinite(tail_constant.imag())) {
        throw ValidationError("weight constant must be finite");
    }
    auto nd = std::make_shared<Node>();
    nd->kind = Kind::basic;
    nd->prefix = std::move(prefix);
    nd->tail_constant = tail_constant;
    nd->nf.pieces.push_back(constant_piece(tail_constant, static_cast<Index>(nd->prefix.size()) + 1));
    std::string c = "basic([";
    for (Complex v : nd->prefix) c += format_complex(v) + ",";
    c += "];const=" + format_complex(tail_constant) + ")";
    nd->canonical = std::move(c);
    return WeightSeq(nd);
}

WeightSeq WeightSeq::basic(std::vector<Complex> prefix, Tail tail, Complex phase) {
    for (Complex v : prefix) {
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) throw ValidationError("weight prefix entries must be finite");
    }
    if (std::abs(std::abs(phase) - 1.0) > 1e-9) throw ValidationError("tail phase must have modulus 1");
    if (tail.start() > static_cast<Index>(prefix.size()) + 1) {
        throw ValidationError("weight tail starts at " + std::to_string(tail.start()) + " but the prefix covers only " +
                              std::to_string(prefix.size()) + " entries");
    }
    auto nd = std::make_shared<Node>();
    nd->kind = Kind::basic;
    nd->prefix = std::move(prefix);
    const Index from = static_cast<Index>(nd->prefix.size()) + 1;
    nd->nf.pieces.push_back(expr_piece(phase, tail.expr(), tail.limit(), from));
    std::string c = "basic([";
    for (Complex v : nd->prefix) c += format_complex(v) + ",";
    c += "];tail=" + tail.expr().to_string() + "@" + std::to_string(tail.start()) + "->" + format_double(tail.limit()) +
         (tail.direction() == Direction::increasing ? "/inc/" : "/dec/") + std::to_string(tail.mono_from()) +
         ";phase=" + format_complex(phase) + ")";
    nd->canonical = std::move(c);
    nd->tail = std::move(tail);
    nd->tail_phase = phase;
    return WeightSeq(nd);
}

WeightSeq WeightSeq::interleave(const WeightSeq& odd, const WeightSeq& even) {
    const WeightNormalForm& f = odd.normal_form();
    const WeightNormalForm& g = even.normal_form();
    const Index L = std::lcm(f.period, g.period);
    check_period(2 * L);
    const WeightNormalForm fr = f.refined(L / f.period);
    const WeightNormalForm gr = g.refined(L / g.period);
    auto nd = std::make_shared<Node>();
    nd->kind = Kind::interleave;
    nd->a = odd;
    nd->b = even;
    nd->nf.period = 2 * L;
    const Expr half_odd = linear(1, 1) / Expr::constant(2.0);
    const Expr half_even = Expr::var() / Expr::constant(2.0);
    for (Index c = 0; c < 2 * L; ++c) {
        const Index r1 = c + 1;
        const bool is_odd = r1 % 2 == 1;
        WeightPiece p = is_odd ? fr.pieces[static_cast<std::size_t>((r1 + 1) / 2 - 1)]
                               : gr.pieces[static_cast<std::size_t>(r1 / 2 - 1)];
        p.from = is_odd ? 2 * p.from - 1 : 2 * p.from;
        if (p.is_expr) p.expr = substituted(*p.expr, is_odd ? half_odd : half_even);
        nd->nf.pieces.push_back(std::move(p));
    }
    nd->canonical = "interleave(" + odd.canonical() + "," + even.canonical() + ")";
    return WeightSeq(nd);
}

WeightSeq WeightSeq::reindex(const WeightSeq& w, const IndexMap& map) {
    if (map.kind() == IndexMap::Kind::identity) return w;
    const WeightNormalForm& wn = w.normal_form();
    const MapNormalForm fr = map.normal_form().refined(wn.period);
    auto nd = std::make_shared<Node>();
    nd->kind = Kind::reindex;
    nd->a = w;
    nd->map = map;
    nd->nf.period = fr.period;
    for (Index c = 0; c < fr.period; ++c) {
        const MapPiece& fp = fr.pieces[static_cast<std::size_t>(c)];
        const Index r1 = c + 1;
        if (!fp.defined) {
            nd->nf.pieces.push_back(constant_piece(0.0, fp.from));
            continue;
        }
        WeightPiece p = wn.pieces[static_cast<std::size_t>(detail::mod(fp.offset - 1, wn.period))];
        const Index j = std::max<Index>(0, ceil_div(p.from - fp.offset, fp.step));
        p.from = std::max(fp.from, fr.period * j + r1);
        if (p.is_expr) p.expr = substituted(*p.expr, index_affine(fp.step, fr.period, r1, fp.offset));
        nd->nf.pieces.push_back(std::move(p));
    }
    nd->canonical = "reindex(" + w.canonical() + "," + map.canonical() + ")";
    return WeightSeq(nd);
}

WeightSeq WeightSeq::mask(const WeightSeq& w, const IndexMap& map) {
    if (map.kind() != IndexMap::Kind::table && map.domain_complement().empty()) return w;
    const WeightNormalForm& wn = w.normal_form();
    const MapNormalForm& mn = map.normal_form();
    const Index L = std::lcm(wn.period, mn.period);
    check_period(L);
    const WeightNormalForm wr = wn.refined(L / wn.period);
    const MapNormalForm mr = mn.refined(L / mn.period);
    auto nd = std::make_shared<Node>();
    nd->kind = Kind::mask;
    nd->a = w;
    nd->map = map;
    nd->nf.period = L;
    for (Index c = 0; c < L; ++c) {
        const MapPiece& mp = mr.pieces[static_cast<std::size_t>(c)];
        WeightPiece p = mp.defined ? wr.pieces[static_cast<std::size_t>(c)] : constant_piece(0.0, 1);
        p.from = std::max(p.from, mp.from);
        nd->nf.pieces.push_back(std::move(p));
    }
    nd->canonical = "mask(" + w.canonical() + "," + map.canonical() + ")";
    return WeightSeq(nd);
}

WeightSeq WeightSeq::mul(const WeightSeq& a, const WeightSeq& b) {
    auto nd = std::make_shared<Node>();
    nd->kind = Kind::mul;
    nd->a = a;
    nd->b = b;
    nd->nf = combine(a.normal_form(), b.normal_form(), mul_pieces);
    nd->canonical = "mul(" + a.canonical() + "," + b.canonical() + ")";
    return WeightSeq(nd);
}

WeightSeq WeightSeq::add(const WeightSeq& a, const WeightSeq& b) {
    auto nd = std::make_shared<Node>();
    nd->kind = Kind::add;
    nd->a = a;
    nd->b = b;
    nd->nf = combine(a.normal_form(), b.normal_form(), add_pieces);
    nd->canonical = "add(" + a.canonical() + "," + b.canonical() + ")";
    return WeightSeq(nd);
}

WeightSeq WeightSeq::scale(const WeightSeq& w, Complex c) {
    if (c == Complex(1.0, 0.0)) return w;
    return mul(constant(c), w);
}

WeightSeq WeightSeq::conj(const WeightSeq& w) {
    if (w.kind() == Kind::conj) return w.first();
    auto nd = std::make_shared<Node>();
    nd->kind = Kind::conj;
    nd->a = w;
    nd->nf = w.normal_form();
    for (WeightPiece& p : nd->nf.pieces) {
        p.value = std::conj(p.value);
        p.phase = std::conj(p.phase);
    }
    nd->canonical = "conj(" + w.canonical() + ")";
    return WeightSeq(nd);
}

WeightSeq WeightSeq::phase(const WeightSeq& w) {
    const WeightNormalForm& wn = w.normal_form();
    auto nd = std::make_shared<Node>();
    nd->kind = Kind::phase;
    nd->a = w;
    nd->nf.period = wn.period;
    for (Index c = 0; c < wn.period; ++c) {
        const WeightPiece& p = wn.pieces[static_cast<std::size_t>(c)];
        if (!p.is_expr) {
            const double m = std::abs(p.value);
            nd->nf.pieces.push_back(constant_piece(m <= kZeroWeight ? Complex(0.0) : p.value / m, p.from));
            continue;
        }
        const ClassSign s = class_sign(*p.expr, p.limit, p.from, wn.period, c + 1);
        const double sign = s.constant ? (std::abs(*s.constant) <= kZeroWeight ? 0.0 : (*s.constant > 0 ? 1.0 : -1.0))
                                       : static_cast<double>(s.sign);
        nd->nf.pieces.push_back(constant_piece(p.phase * sign, s.from));
    }
    nd->canonical = "phase(" + w.canonical() + ")";
    return WeightSeq(nd);
}

WeightSeq WeightSeq::modulus_map(const WeightSeq& w, ModulusFn fn, double alpha) {
    if ((fn == ModulusFn::deficit || fn == ModulusFn::excess) && !(alpha >= 0.0 && std::isfinite(alpha))) {
        throw ContractError("modulus threshold must be finite and >= 0");
    }
    const WeightNormalForm& wn = w.normal_form();
    auto nd = std::make_shared<Node>();
    nd->kind = Kind::modulus_map;
    nd->a = w;
    nd->fn = fn;
    nd->alpha = alpha;
    nd->nf.period = wn.period;
    for (Index c = 0; c < wn.period; ++c) {
        const WeightPiece& p = wn.pieces[static_cast<std::size_t>(c)];
        const Index r1 = c + 1;
        WeightPiece out;
        switch (fn) {
        case ModulusFn::square:
            out = p.is_expr ? expr_piece(1.0, Expr::pow(*p.expr, 2), p.limit * p.limit, p.from)
                            : constant_piece(std::norm(p.value), p.from);
            break;
        case ModulusFn::abs:
            out = abs_piece(p, wn.period, r1);
            break;
        case ModulusFn::deficit:
            out = clipped_piece(abs_piece(p, wn.period, r1), alpha, -1, wn.period, r1);
            break;
        case ModulusFn::excess:
            out = clipped_piece(abs_piece(p, wn.period, r1), alpha, 1, wn.period, r1);
            break;
        }
        nd->nf.pieces.push_back(std::move(out));
    }
    static const char* names[] = {"abs", "square", "deficit", "excess"};
    nd->canonical = std::string("modulus(") + names[static_cast<int>(fn)] + "," + format_double(alpha) + "," +
                    w.canonical() + ")";
    return WeightSeq(nd);
}

Complex WeightSeq::entry(Index n) const {
    if (n < 1) throw DomainError("weight index must be >= 1");
    const Node& nd = *node_;
    switch (nd.kind) {
    case Kind::basic:
        if (n <= static_cast<Index>(nd.prefix.size())) return nd.prefix[static_cast<std::size_t>(n - 1)];
        if (nd.tail) return nd.tail_phase * nd.tail->eval(n);
        return nd.tail_constant;
    case Kind::interleave:
        return n % 2 == 1 ? nd.a->entry((n + 1) / 2) : nd.b->entry(n / 2);
    case Kind::reindex: {
        const auto m = nd.map->eval(n);
        return m ? nd.a->entry(*m) : Complex(0.0);
    }
    case Kind::mask:
        return nd.map->eval(n) ? nd.a->entry(n) : Complex(0.0);
    case Kind::mul:
        return nd.a->entry(n) * nd.b->entry(n);
    case Kind::add:
        return nd.a->entry(n) + nd.b->entry(n);
    case Kind::conj:
        return std::conj(nd.a->entry(n));
    case Kind::phase: {
        const Complex v = nd.a->entry(n);
        const double m = std::abs(v);
        return m <= kZeroWeight ? Complex(0.0) : v / m;
    }
    case Kind::modulus_map: {
        const double t = std::abs(nd.a->entry(n));
        switch (nd.fn) {
        case ModulusFn::abs:
            return t;
        case ModulusFn::square:
            return t * t;
        case ModulusFn::deficit:
            return std::max(nd.alpha - t, 0.0);
        case ModulusFn::excess:
            return std::max(t - nd.alpha, 0.0);
        }
    }
    }
    return 0.0;
}

const WeightNormalForm& WeightSeq::normal_form() const { return node_->nf; }

bool WeightSeq::is_real() const {
    const WeightNormalForm& nf = node_->nf;
    for (const WeightPiece& p : nf.pieces) {
        if (p.is_expr && std::abs(p.phase.imag()) > kPhaseTol) return false;
        if (!p.is_expr && std::abs(p.value.imag()) > kPhaseTol * std::max(1.0, std::abs(p.value))) return false;
    }
    for (Index n = 1; n < nf.max_from(); ++n) {
        const Complex v = entry(n);
        if (std::abs(v.imag()) > kPhaseTol * std::max(1.0, std::abs(v))) return false;
    }
    return true;
}

SpectralProfile WeightSeq::real_profile() const {
    if (!is_real()) throw ContractError("eigenvalue profile requires real weights");
    const WeightNormalForm& nf = node_->nf;
    const Index F = nf.max_from();
    std::vector<Atom> atoms;
    std::map<double, std::size_t> slot;
    auto add_atom = [&](double v, Multiplicity m) {
        if (v == 0.0) v = 0.0;  // fold -0
        auto it = slot.find(v);
        if (it == slot.end()) {
            slot.emplace(v, atoms.size());
            atoms.push_back({v, m});
        } else {
            atoms[it->second].mult = atoms[it->second].mult + m;
        }
    };
    for (Index n = 1; n < F; ++n) add_atom(entry(n).real(), Multiplicity::finite(1));
    std::vector<Tail> tails;
    const Index P = nf.period;
    for (Index c = 0; c < P; ++c) {
        const WeightPiece& p = nf.pieces[static_cast<std::size_t>(c)];
        const Index r1 = c + 1;
        if (!p.is_expr) {
            add_atom(p.value.real(), Multiplicity::infinite());
            continue;
        }
        const double sign = p.phase.real() > 0 ? 1.0 : -1.0;
        const Index n0 = first_in_class(F, r1, P);
        const Expr e = scaled(*p.expr, sign);
        const Expr ej = (P == 1 && r1 == 1) ? e : substituted(e, linear(P, r1 - P));
        const Index j0 = (n0 - r1) / P + 1;
        FittedSequence fs = fit_sequence(ej, j0, sign * p.limit);
        for (double v : fs.leading) add_atom(v, Multiplicity::finite(1));
        if (fs.constant) {
            add_atom(*fs.constant, Multiplicity::infinite());
        } else {
            tails.push_back(std::move(*fs.tail));
        }
    }
    std::sort(atoms.begin(), atoms.end(), [](const Atom& x, const Atom& y) { return x.value < y.value; });
    return SpectralProfile(std::move(atoms), std::move(tails));
}

WeightSeq::Kind WeightSeq::kind() const { return node_->kind; }
const std::vector<Complex>& WeightSeq::prefix() const { return node_->prefix; }
const std::optional<Tail>& WeightSeq::tail() const { return node_->tail; }
Complex WeightSeq::tail_constant() const { return node_->tail_constant; }
Complex WeightSeq::tail_phase() const { return node_->tail_phase; }

WeightSeq WeightSeq::first() const {
    if (!node_->a) throw ContractError("weight sequence has no first operand");
    return *node_->a;
}

WeightSeq WeightSeq::second() const {
    if (!node_->b) throw ContractError("weight sequence has no second operand");
    return *node_->b;
}

const IndexMap& WeightSeq::map() const {
    if (!node_->map) throw ContractError("weight sequence has no index map");
    return *node_->map;
}

WeightSeq::ModulusFn WeightSeq::modulus_fn() const { return node_->fn; }
double WeightSeq::alpha() const { return node_->alpha; }
const std::string& WeightSeq::canonical() const { return node_->canonical; }

} // namespace ancl
