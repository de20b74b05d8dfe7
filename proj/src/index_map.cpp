// SPDX-License-Identifier: Apache-2.0
#include "ancl/index_map.hpp"

#include "ancl/errors.hpp"
#include "detail.hpp"

#include <algorithm>
#include <numeric>

namespace ancl {

namespace {

using detail::ceil_div;
using detail::first_in_class;
using detail::mod;

void check_period(Index p) {
    if (p > kMaxPeriod) throw ContractError("index map too irregular for symbolic analysis (period " + std::to_string(p) + ")");
}

bool same_piece(const MapPiece& a, const MapPiece& b) {
    if (a.defined != b.defined) return false;
    return !a.defined || (a.step == b.step && a.offset == b.offset);
}

/// Shrinks the period when the pieces repeat with a smaller one.
MapNormalForm compressed(const MapNormalForm& nf) {
    const Index P = nf.period;
    for (Index d = 1; d < P; ++d) {
        if (P % d != 0) continue;
        const Index k = P / d;
        MapNormalForm cand;
        cand.period = d;
        bool ok = true;
        for (Index c = 0; c < d && ok; ++c) {
            MapPiece p = nf.pieces[static_cast<std::size_t>(c)];
            if (p.defined) {
                if (p.step % k != 0) {
                    ok = false;
                    break;
                }
                p.step /= k;
            }
            cand.pieces.push_back(p);
        }
        if (!ok) continue;
        const MapNormalForm back = cand.refined(k);
        for (Index c = 0; c < P && ok; ++c) ok = same_piece(back.pieces[static_cast<std::size_t>(c)], nf.pieces[static_cast<std::size_t>(c)]);
        if (!ok) continue;
        for (Index c = 0; c < P; ++c) {
            MapPiece& target = cand.pieces[static_cast<std::size_t>(c % d)];
            target.from = std::max(target.from, nf.pieces[static_cast<std::size_t>(c)].from);
        }
        return cand;
    }
    return nf;
}

} // namespace

std::optional<Multiplicity> IndexSet::size() const {
    if (infinite) return Multiplicity::infinite();
    if (elements.empty()) return std::nullopt;
    return Multiplicity::finite(elements.size());
}

Index MapNormalForm::max_from() const {
    Index m = 1;
    for (const MapPiece& p : pieces) m = std::max(m, p.from);
    return m;
}

MapNormalForm MapNormalForm::refined(Index k) const {
    if (k == 1) return *this;
    check_period(period * k);
    MapNormalForm out;
    out.period = period * k;
    out.pieces.reserve(static_cast<std::size_t>(out.period));
    for (Index c = 0; c < out.period; ++c) {
        MapPiece p = pieces[static_cast<std::size_t>(c % period)];
        const Index t = c / period;
        if (p.defined) {
            p.offset = p.step * t + p.offset;
            p.step *= k;
        }
        out.pieces.push_back(p);
    }
    return out;
}

struct IndexMap::Node {
    Kind kind = Kind::identity;
    Index param = 0;
    std::vector<std::pair<Index, Index>> pairs;
    std::vector<Index> forward;  // table lookups, 0 = undefined
    std::vector<Index> backward;
    std::shared_ptr<const Node> a;
    std::shared_ptr<const Node> b;
    std::string canonical;
    std::optional<MapNormalForm> nf;
    std::string nf_error;
};

namespace {

using NodePtr = std::shared_ptr<const IndexMap::Node>;

std::optional<Index> node_eval(const IndexMap::Node& nd, Index n);
std::optional<Index> node_inverse_eval(const IndexMap::Node& nd, Index m);

std::optional<Index> ast_eval(const IndexMap::Node& nd, Index n) {
    using K = IndexMap::Kind;
    switch (nd.kind) {
    case K::identity:
        return n;
    case K::shift:
        return n + nd.param;
    case K::stretch:
        return nd.param * (n - 1) + 1;
    case K::table:
        if (n > nd.param) return n;
        if (nd.forward[static_cast<std::size_t>(n)] == 0) return std::nullopt;
        return nd.forward[static_cast<std::size_t>(n)];
    case K::inverse:
        return node_inverse_eval(*nd.a, n);
    case K::compose: {
        const auto mid = node_eval(*nd.b, n);
        if (!mid) return std::nullopt;
        return node_eval(*nd.a, *mid);
    }
    case K::interleave:
        if (n % 2 == 1) {
            const auto v = node_eval(*nd.a, (n + 1) / 2);
            if (!v) return std::nullopt;
            return 2 * *v - 1;
        } else {
            const auto v = node_eval(*nd.b, n / 2);
            if (!v) return std::nullopt;
            return 2 * *v;
        }
    }
    return std::nullopt;
}

std::optional<Index> node_eval(const IndexMap::Node& nd, Index n) {
    if (n < 1) return std::nullopt;
    if (nd.nf && nd.kind != IndexMap::Kind::identity && nd.kind != IndexMap::Kind::shift &&
        nd.kind != IndexMap::Kind::stretch) {
        const MapNormalForm& f = *nd.nf;
        const Index c = (n - 1) % f.period;
        const MapPiece& p = f.pieces[static_cast<std::size_t>(c)];
        if (n >= p.from) {
            if (!p.defined) return std::nullopt;
            return p.step * ((n - 1 - c) / f.period) + p.offset;
        }
    }
    return ast_eval(nd, n);
}

std::optional<Index> node_inverse_eval(const IndexMap::Node& nd, Index m) {
    using K = IndexMap::Kind;
    if (m < 1) return std::nullopt;
    switch (nd.kind) {
    case K::identity:
        return m;
    case K::shift:
        if (m <= nd.param) return std::nullopt;
        return m - nd.param;
    case K::stretch:
        if ((m - 1) % nd.param != 0) return std::nullopt;
        return (m - 1) / nd.param + 1;
    case K::table:
        if (m > nd.param) return m;
        if (nd.backward[static_cast<std::size_t>(m)] == 0) return std::nullopt;
        return nd.backward[static_cast<std::size_t>(m)];
    case K::inverse:
        return node_eval(*nd.a, m);
    case K::compose: {
        const auto mid = node_inverse_eval(*nd.a, m);
        if (!mid) return std::nullopt;
        return node_inverse_eval(*nd.b, *mid);
    }
    case K::interleave:
        if (m % 2 == 1) {
            const auto v = node_inverse_eval(*nd.a, (m + 1) / 2);
            if (!v) return std::nullopt;
            return 2 * *v - 1;
        } else {
            const auto v = node_inverse_eval(*nd.b, m / 2);
            if (!v) return std::nullopt;
            return 2 * *v;
        }
    }
    return std::nullopt;
}

MapNormalForm single(Index step, Index offset, Index from) {
    MapNormalForm nf;
    nf.pieces.push_back({true, step, offset, from});
    return nf;
}

MapNormalForm inverse_form(const IndexMap::Node& f_node, const MapNormalForm& f) {
    const Index F = f.max_from();
    Index early_max = 0;
    for (Index n = 1; n < F; ++n) {
        if (const auto v = ast_eval(f_node, n)) early_max = std::max(early_max, *v);
    }
    Index Q = 1;
    for (const MapPiece& p : f.pieces) {
        if (p.defined) {
            Q = std::lcm(Q, p.step);
            check_period(Q);
        }
    }
    MapNormalForm out;
    out.period = Q;
    for (Index d = 0; d < Q; ++d) {
        const Index rd = d + 1;
        MapPiece piece;
        piece.from = first_in_class(early_max + 1, rd, Q);
        for (Index c = 0; c < f.period; ++c) {
            const MapPiece& p = f.pieces[static_cast<std::size_t>(c)];
            if (!p.defined || mod(rd - p.offset, p.step) != 0) continue;
            const Index r1 = c + 1;
            piece.defined = true;
            piece.step = f.period * Q / p.step;
            piece.offset = f.period * ((rd - p.offset) / p.step) + r1;
            const Index j0 = std::max<Index>(0, ceil_div(p.from - r1, f.period));
            const Index lower = std::max(p.offset + p.step * j0, early_max + 1);
            piece.from = first_in_class(lower, rd, Q);
            break;
        }
        out.pieces.push_back(piece);
    }
    return compressed(out);
}

MapNormalForm compose_form(const MapNormalForm& f, const MapNormalForm& g) {
    const MapNormalForm gr = g.refined(f.period);
    MapNormalForm out;
    out.period = gr.period;
    for (Index c = 0; c < gr.period; ++c) {
        const MapPiece& gp = gr.pieces[static_cast<std::size_t>(c)];
        const Index r1 = c + 1;
        MapPiece piece;
        piece.from = gp.from;
        if (gp.defined) {
            const Index e = mod(gp.offset - 1, f.period);
            const MapPiece& fp = f.pieces[static_cast<std::size_t>(e)];
            const Index jf = std::max<Index>(0, ceil_div(fp.from - gp.offset, gp.step));
            piece.from = std::max(gp.from, gr.period * jf + r1);
            if (fp.defined) {
                piece.defined = true;
                piece.step = fp.step * (gp.step / f.period);
                piece.offset = fp.step * ((gp.offset - (e + 1)) / f.period) + fp.offset;
            }
        }
        out.pieces.push_back(piece);
    }
    return compressed(out);
}

MapNormalForm interleave_form(const MapNormalForm& f, const MapNormalForm& g) {
    const Index L = std::lcm(f.period, g.period);
    check_period(2 * L);
    const MapNormalForm fr = f.refined(L / f.period);
    const MapNormalForm gr = g.refined(L / g.period);
    MapNormalForm out;
    out.period = 2 * L;
    for (Index c = 0; c < 2 * L; ++c) {
        const Index r1 = c + 1;
        MapPiece piece;
        if (r1 % 2 == 1) {
            const MapPiece& p = fr.pieces[static_cast<std::size_t>((r1 + 1) / 2 - 1)];
            piece = p;
            piece.from = 2 * p.from - 1;
            if (p.defined) {
                piece.step = 2 * p.step;
                piece.offset = 2 * p.offset - 1;
            }
        } else {
            const MapPiece& p = gr.pieces[static_cast<std::size_t>(r1 / 2 - 1)];
            piece = p;
            piece.from = 2 * p.from;
            if (p.defined) {
                piece.step = 2 * p.step;
                piece.offset = 2 * p.offset;
            }
        }
        out.pieces.push_back(piece);
    }
    return compressed(out);
}

void finish(IndexMap::Node& nd) {
    using K = IndexMap::Kind;
    try {
        switch (nd.kind) {
        case K::identity:
            nd.nf = single(1, 1, 1);
            break;
        case K::shift:
            nd.nf = single(1, 1 + nd.param, 1);
            break;
        case K::stretch:
            nd.nf = single(nd.param, 1, 1);
            break;
        case K::table:
            nd.nf = single(1, 1, nd.param + 1);
            break;
        case K::inverse:
            if (!nd.a->nf) throw ContractError(nd.a->nf_error);
            nd.nf = inverse_form(*nd.a, *nd.a->nf);
            break;
        case K::compose:
            if (!nd.a->nf) throw ContractError(nd.a->nf_error);
            if (!nd.b->nf) throw ContractError(nd.b->nf_error);
            nd.nf = compose_form(*nd.a->nf, *nd.b->nf);
            break;
        case K::interleave:
            if (!nd.a->nf) throw ContractError(nd.a->nf_error);
            if (!nd.b->nf) throw ContractError(nd.b->nf_error);
            nd.nf = interleave_form(*nd.a->nf, *nd.b->nf);
            break;
        }
    } catch (const ContractError& e) {
        nd.nf.reset();
        nd.nf_error = e.what();
    }
}

NodePtr make(IndexMap::Kind kind, Index param, NodePtr a, NodePtr b, std::string canonical) {
    auto nd = std::make_shared<IndexMap::Node>();
    nd->kind = kind;
    nd->param = param;
    nd->a = std::move(a);
    nd->b = std::move(b);
    nd->canonical = std::move(canonical);
    finish(*nd);
    return nd;
}

} // namespace

IndexMap::IndexMap(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

IndexMap IndexMap::identity() { return IndexMap(make(Kind::identity, 0, nullptr, nullptr, "identity")); }

IndexMap IndexMap::shift(Index k) {
    if (k < 1) throw ValidationError("shift requires k >= 1");
    return IndexMap(make(Kind::shift, k, nullptr, nullptr, "shift(" + std::to_string(k) + ")"));
}

IndexMap IndexMap::stretch(Index k) {
    if (k < 2) throw ValidationError("stretch requires k >= 2");
    return IndexMap(make(Kind::stretch, k, nullptr, nullptr, "stretch(" + std::to_string(k) + ")"));
}

IndexMap IndexMap::table(Index size, std::vector<std::pair<Index, Index>> pairs) {
    if (size < 1 || size > certify::kBound) throw ValidationError("table size must lie in [1, 1e6]");
    std::sort(pairs.begin(), pairs.end());
    auto nd = std::make_shared<Node>();
    nd->kind = Kind::table;
    nd->param = size;
    nd->forward.assign(static_cast<std::size_t>(size + 1), 0);
    nd->backward.assign(static_cast<std::size_t>(size + 1), 0);
    std::string canon = "table(" + std::to_string(size) + ";";
    for (const auto& [n, v] : pairs) {
        if (n < 1 || n > size || v < 1 || v > size) {
            throw ValidationError("table pair (" + std::to_string(n) + ", " + std::to_string(v) + ") outside 1.." +
                                  std::to_string(size));
        }
        if (nd->forward[static_cast<std::size_t>(n)] != 0) throw ValidationError("table lists index " + std::to_string(n) + " twice");
        if (nd->backward[static_cast<std::size_t>(v)] != 0) throw ValidationError("table is not injective at value " + std::to_string(v));
        nd->forward[static_cast<std::size_t>(n)] = v;
        nd->backward[static_cast<std::size_t>(v)] = n;
        canon += std::to_string(n) + ">" + std::to_string(v) + ",";
    }
    canon += ")";
    nd->pairs = std::move(pairs);
    nd->canonical = std::move(canon);
    finish(*nd);
    return IndexMap(nd);
}

IndexMap IndexMap::inverse(const IndexMap& f) {
    switch (f.kind()) {
    case Kind::identity:
        return f;
    case Kind::inverse:
        return f.first();
    case Kind::table: {
        std::vector<std::pair<Index, Index>> swapped;
        for (const auto& [n, v] : f.pairs()) swapped.emplace_back(v, n);
        return table(f.param(), std::move(swapped));
    }
    case Kind::interleave:
        return interleave(inverse(f.first()), inverse(f.second()));
    default:
        break;
    }
    return IndexMap(make(Kind::inverse, 0, f.node_, nullptr, "inverse(" + f.canonical() + ")"));
}

IndexMap IndexMap::compose(const IndexMap& outer, const IndexMap& inner) {
    if (outer.kind() == Kind::identity) return inner;
    if (inner.kind() == Kind::identity) return outer;
    if (outer.kind() == Kind::shift && inner.kind() == Kind::shift) return shift(outer.param() + inner.param());
    if (outer.kind() == Kind::stretch && inner.kind() == Kind::stretch) return stretch(outer.param() * inner.param());
    if (outer.kind() == Kind::inverse && outer.first() == inner && inner.is_total()) return identity();
    if (inner.kind() == Kind::inverse && inner.first() == outer && outer.range_complement().empty()) return identity();
    if (outer.kind() == Kind::interleave && inner.kind() == Kind::interleave) {
        return interleave(compose(outer.first(), inner.first()), compose(outer.second(), inner.second()));
    }
    return IndexMap(make(Kind::compose, 0, outer.node_, inner.node_,
                         "compose(" + outer.canonical() + "," + inner.canonical() + ")"));
}

IndexMap IndexMap::interleave(const IndexMap& odd, const IndexMap& even) {
    if (odd.kind() == Kind::identity && even.kind() == Kind::identity) return identity();
    if (odd.kind() == Kind::shift && even.kind() == Kind::shift && odd.param() == even.param()) {
        return shift(2 * odd.param());
    }
    return IndexMap(make(Kind::interleave, 0, odd.node_, even.node_,
                         "interleave(" + odd.canonical() + "," + even.canonical() + ")"));
}

IndexMap::Kind IndexMap::kind() const { return node_->kind; }
Index IndexMap::param() const { return node_->param; }
const std::vector<std::pair<Index, Index>>& IndexMap::pairs() const { return node_->pairs; }

IndexMap IndexMap::first() const {
    if (!node_->a) throw ContractError("index map has no first operand");
    return IndexMap(node_->a);
}

IndexMap IndexMap::second() const {
    if (!node_->b) throw ContractError("index map has no second operand");
    return IndexMap(node_->b);
}

std::optional<Index> IndexMap::eval(Index n) const { return node_eval(*node_, n); }
std::optional<Index> IndexMap::inverse_eval(Index m) const { return node_inverse_eval(*node_, m); }

const MapNormalForm& IndexMap::normal_form() const {
    if (!node_->nf) throw ContractError(node_->nf_error);
    return *node_->nf;
}

IndexSet IndexMap::domain_complement() const {
    const MapNormalForm& nf = normal_form();
    IndexSet out;
    const bool gaps = std::any_of(nf.pieces.begin(), nf.pieces.end(), [](const MapPiece& p) { return !p.defined; });
    const IndexMap self = *this;
    out.contains = [self](Index n) { return n >= 1 && !self.eval(n).has_value(); };
    if (gaps) {
        out.infinite = true;
        return out;
    }
    for (Index n = 1; n < nf.max_from(); ++n) {
        if (!eval(n)) out.elements.push_back(n);
    }
    return out;
}

IndexSet IndexMap::range_complement() const { return inverse(*this).domain_complement(); }

const std::string& IndexMap::canonical() const { return node_->canonical; }

} // namespace ancl
