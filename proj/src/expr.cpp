// SPDX-License-Identifier: Apache-2.0
#include "ancl/expr.hpp"

#include "ancl/errors.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <numeric>

namespace ancl {

namespace {

using NodePtr = std::shared_ptr<const Expr::Node>;

NodePtr make_node(Expr::Kind kind, NodePtr lhs = nullptr, NodePtr rhs = nullptr) {
    auto node = std::make_shared<Expr::Node>();
    node->kind = kind;
    node->lhs = std::move(lhs);
    node->rhs = std::move(rhs);
    return node;
}

NodePtr make_constant(double c) {
    auto node = std::make_shared<Expr::Node>();
    node->kind = Expr::Kind::constant;
    node->value = c;
    return node;
}

std::string format_number(double v) {
    std::array<char, 64> buf{};
    auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), end);
}

int precedence(const Expr::Node& node) {
    switch (node.kind) {
    case Expr::Kind::add:
    case Expr::Kind::sub:
        return 1;
    case Expr::Kind::mul:
    case Expr::Kind::div:
        return 2;
    case Expr::Kind::int_pow:
    case Expr::Kind::exp:
        return 3;
    case Expr::Kind::rat_pow:
        return node.num == 1 && node.den == 2 ? 4 : 3;
    case Expr::Kind::constant:
    case Expr::Kind::var:
    case Expr::Kind::abs:
        return 4;
    }
    return 4;
}

void print(const Expr::Node& node, std::string& out);

void print_wrapped(const Expr::Node& node, bool wrap, std::string& out) {
    if (wrap) out += '(';
    print(node, out);
    if (wrap) out += ')';
}

void print(const Expr::Node& node, std::string& out) {
    using K = Expr::Kind;
    switch (node.kind) {
    case K::constant:
        if (node.value < 0 || std::signbit(node.value)) {
            out += "(-" + format_number(-node.value) + ")";
        } else {
            out += format_number(node.value);
        }
        return;
    case K::var:
        out += 'n';
        return;
    case K::add:
    case K::sub:
    case K::mul:
    case K::div: {
        const int p = precedence(node);
        print_wrapped(*node.lhs, precedence(*node.lhs) < p, out);
        out += node.kind == K::add ? " + " : node.kind == K::sub ? " - " : node.kind == K::mul ? " * " : " / ";
        print_wrapped(*node.rhs, precedence(*node.rhs) <= p, out);
        return;
    }
    case K::int_pow:
        print_wrapped(*node.lhs, precedence(*node.lhs) < 4, out);
        out += '^';
        if (node.num < 0) {
            out += "(-" + std::to_string(-node.num) + ")";
        } else {
            out += std::to_string(node.num);
        }
        return;
    case K::rat_pow:
        if (node.num == 1 && node.den == 2) {
            out += "sqrt(";
            print(*node.lhs, out);
            out += ')';
            return;
        }
        print_wrapped(*node.lhs, precedence(*node.lhs) < 4, out);
        out += "^(" + std::to_string(node.num) + "/" + std::to_string(node.den) + ")";
        return;
    case K::abs:
        out += "abs(";
        print(*node.lhs, out);
        out += ')';
        return;
    case K::exp:
        print_wrapped(*node.lhs, precedence(*node.lhs) < 4, out);
        out += '^';
        print_wrapped(*node.rhs, node.rhs->kind != K::var, out);
        return;
    }
}

bool has_var(const Expr::Node& node) {
    if (node.kind == Expr::Kind::var) return true;
    if (node.lhs && has_var(*node.lhs)) return true;
    if (node.rhs && has_var(*node.rhs)) return true;
    return false;
}

NodePtr substitute_node(const NodePtr& node, const NodePtr& replacement) {
    if (node->kind == Expr::Kind::var) return replacement;
    if (!has_var(*node)) return node;
    auto copy = std::make_shared<Expr::Node>(*node);
    if (node->lhs) copy->lhs = substitute_node(node->lhs, replacement);
    if (node->rhs) copy->rhs = substitute_node(node->rhs, replacement);
    return copy;
}

double rational_root(double base, int num, int den) {
    if (den == 2 && num == 1) {
        if (base < 0) throw ExpressionError("square root of a negative value");
        return std::sqrt(base);
    }
    if (base < 0) {
        if (den % 2 == 0) throw ExpressionError("even root of a negative value");
        const double root = -std::pow(-base, 1.0 / den);
        return std::pow(root, num);
    }
    if (base == 0 && num < 0) throw ExpressionError("division by zero in negative power");
    return std::pow(base, static_cast<double>(num) / den);
}

double int_power(double base, int k) {
    if (k < 0) {
        if (base == 0) throw ExpressionError("division by zero in negative power");
        return 1.0 / int_power(base, -k);
    }
    double result = 1.0;
    double b = base;
    while (k > 0) {
        if (k & 1) result *= b;
        b *= b;
        k >>= 1;
    }
    return result;
}

double eval_constant(const Expr::Node& node) {
    using K = Expr::Kind;
    switch (node.kind) {
    case K::constant:
        return node.value;
    case K::add:
        return eval_constant(*node.lhs) + eval_constant(*node.rhs);
    case K::sub:
        return eval_constant(*node.lhs) - eval_constant(*node.rhs);
    case K::mul:
        return eval_constant(*node.lhs) * eval_constant(*node.rhs);
    case K::div: {
        const double d = eval_constant(*node.rhs);
        if (d == 0.0) throw ExpressionError("division by zero in constant exponent");
        return eval_constant(*node.lhs) / d;
    }
    case K::int_pow:
        return int_power(eval_constant(*node.lhs), node.num);
    case K::rat_pow:
        return rational_root(eval_constant(*node.lhs), node.num, node.den);
    case K::abs:
        return std::abs(eval_constant(*node.lhs));
    case K::exp:
        return std::pow(eval_constant(*node.lhs), eval_constant(*node.rhs));
    case K::var:
        break;
    }
    throw ExpressionError("variable in constant context");
}

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    NodePtr parse() {
        NodePtr e = expr();
        skip_ws();
        if (pos_ != text_.size()) fail("unexpected trailing input");
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError("expression '" + std::string(text_) + "' at offset " + std::to_string(pos_) + ": " + msg);
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    bool accept_word(std::string_view word) {
        skip_ws();
        if (text_.substr(pos_, word.size()) == word) {
            pos_ += word.size();
            return true;
        }
        return false;
    }

    NodePtr expr() {
        NodePtr lhs = term();
        for (;;) {
            if (accept('+')) {
                lhs = make_node(Expr::Kind::add, lhs, term());
            } else if (accept('-')) {
                lhs = make_node(Expr::Kind::sub, lhs, term());
            } else {
                return lhs;
            }
        }
    }

    NodePtr term() {
        NodePtr lhs = unary();
        for (;;) {
            if (accept('*')) {
                lhs = make_node(Expr::Kind::mul, lhs, unary());
            } else if (accept('/')) {
                lhs = make_node(Expr::Kind::div, lhs, unary());
            } else {
                return lhs;
            }
        }
    }

    NodePtr unary() {
        if (accept('-')) {
            skip_ws();
            if (pos_ < text_.size() && (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.')) {
                NodePtr lit = number();
                auto neg = make_constant(-lit->value);
                return power_suffix(neg);
            }
            return make_node(Expr::Kind::mul, make_constant(-1.0), unary());
        }
        return power();
    }

    NodePtr power() { return power_suffix(primary()); }

    NodePtr power_suffix(NodePtr base) {
        if (!accept('^')) return base;
        const std::size_t at = pos_;
        NodePtr exponent = unary();
        if (has_var(*exponent)) {
            if (has_var(*base) || !(eval_constant(*base) > 0.0)) {
                pos_ = at;
                fail("exponent depending on n needs a positive constant base");
            }
            return make_node(Expr::Kind::exp, make_constant(eval_constant(*base)), exponent);
        }
        return make_power(base, eval_constant(*exponent));
    }

    NodePtr make_power(NodePtr base, double e) {
        if (!std::isfinite(e)) fail("non-finite exponent");
        const double rounded = std::round(e);
        if (std::abs(e - rounded) < 1e-12 && std::abs(rounded) < 1e6) {
            auto node = std::make_shared<Expr::Node>();
            node->kind = Expr::Kind::int_pow;
            node->num = static_cast<int>(rounded);
            node->lhs = std::move(base);
            return node;
        }
        for (int den = 2; den <= 1000; ++den) {
            const double scaled = e * den;
            const double r = std::round(scaled);
            if (std::abs(scaled - r) < 1e-9) {
                int num = static_cast<int>(r);
                const int g = std::gcd(std::abs(num), den);
                auto node = std::make_shared<Expr::Node>();
                node->kind = Expr::Kind::rat_pow;
                node->num = num / g;
                node->den = den / g;
                node->lhs = std::move(base);
                return node;
            }
        }
        fail("exponent is not a small rational");
    }

    NodePtr primary() {
        skip_ws();
        if (pos_ >= text_.size()) fail("unexpected end of input");
        const char c = text_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
        if (accept_word("sqrt")) {
            if (!accept('(')) fail("expected '(' after sqrt");
            NodePtr inner = expr();
            if (!accept(')')) fail("expected ')'");
            auto node = std::make_shared<Expr::Node>();
            node->kind = Expr::Kind::rat_pow;
            node->num = 1;
            node->den = 2;
            node->lhs = inner;
            return node;
        }
        if (accept_word("abs")) {
            if (!accept('(')) fail("expected '(' after abs");
            NodePtr inner = expr();
            if (!accept(')')) fail("expected ')'");
            return make_node(Expr::Kind::abs, inner);
        }
        if (accept('n')) return make_node(Expr::Kind::var);
        if (accept('(')) {
            NodePtr inner = expr();
            if (!accept(')')) fail("expected ')'");
            return inner;
        }
        fail(std::string("unexpected character '") + c + "'");
    }

    NodePtr number() {
        skip_ws();
        double value = 0.0;
        const char* begin = text_.data() + pos_;
        const char* end = text_.data() + text_.size();
        auto [ptr, ec] = std::from_chars(begin, end, value);
        if (ec != std::errc{} || ptr == begin) fail("malformed number");
        pos_ += static_cast<std::size_t>(ptr - begin);
        return make_constant(value);
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

} // namespace

Expr::Expr(std::shared_ptr<const Node> root) : root_(std::move(root)) {
    auto code = std::make_shared<std::vector<Instr>>();
    int depth = 0;
    int max_depth = 0;
    // Post-order emission with an explicit stack to avoid deep recursion limits.
    struct Frame {
        const Node* node;
        bool expanded;
    };
    std::vector<Frame> work{{root_.get(), false}};
    while (!work.empty()) {
        Frame f = work.back();
        work.pop_back();
        const Node& nd = *f.node;
        const bool binary = nd.kind == Kind::add || nd.kind == Kind::sub || nd.kind == Kind::mul ||
                            nd.kind == Kind::div || nd.kind == Kind::exp;
        const bool unary_op = nd.kind == Kind::int_pow || nd.kind == Kind::rat_pow || nd.kind == Kind::abs;
        if (!f.expanded && (binary || unary_op)) {
            work.push_back({f.node, true});
            if (binary) work.push_back({nd.rhs.get(), false});
            work.push_back({nd.lhs.get(), false});
            continue;
        }
        code->push_back({nd.kind, nd.value, nd.num, nd.den});
        if (nd.kind == Kind::constant || nd.kind == Kind::var) {
            ++depth;
        } else if (binary) {
            --depth;
        }
        max_depth = std::max(max_depth, depth);
    }
    code_ = std::move(code);
    stack_depth_ = max_depth;
}

Expr Expr::constant(double c) {
    if (!std::isfinite(c)) throw ExpressionError("non-finite constant");
    return Expr(make_constant(c));
}
Expr Expr::var() { return Expr(make_node(Kind::var)); }
Expr Expr::parse(std::string_view text) { return Expr(Parser(text).parse()); }

Expr operator+(const Expr& a, const Expr& b) { return Expr(make_node(Expr::Kind::add, a.root_, b.root_)); }
Expr operator-(const Expr& a, const Expr& b) { return Expr(make_node(Expr::Kind::sub, a.root_, b.root_)); }
Expr operator*(const Expr& a, const Expr& b) { return Expr(make_node(Expr::Kind::mul, a.root_, b.root_)); }
Expr operator/(const Expr& a, const Expr& b) { return Expr(make_node(Expr::Kind::div, a.root_, b.root_)); }
Expr operator-(const Expr& a) { return Expr::constant(-1.0) * a; }

Expr Expr::pow(const Expr& base, int exponent) {
    auto node = std::make_shared<Node>();
    node->kind = Kind::int_pow;
    node->num = exponent;
    node->lhs = base.root_;
    return Expr(node);
}

Expr Expr::rat_pow(const Expr& base, int num, int den) {
    if (den <= 0) throw ExpressionError("non-positive root order");
    const int g = std::gcd(std::abs(num), den);
    num /= g;
    den /= g;
    if (den == 1) return pow(base, num);
    auto node = std::make_shared<Node>();
    node->kind = Kind::rat_pow;
    node->num = num;
    node->den = den;
    node->lhs = base.root_;
    return Expr(node);
}

Expr Expr::sqrt(const Expr& a) { return rat_pow(a, 1, 2); }
Expr Expr::abs(const Expr& a) { return Expr(make_node(Kind::abs, a.root_)); }

double Expr::eval(double n) const {
    std::array<double, 64> small{};
    std::vector<double> big;
    double* stack = small.data();
    if (stack_depth_ > static_cast<int>(small.size())) {
        big.resize(static_cast<std::size_t>(stack_depth_));
        stack = big.data();
    }
    int top = 0;
    for (const Instr& in : *code_) {
        switch (in.op) {
        case Kind::constant:
            stack[top++] = in.value;
            break;
        case Kind::var:
            stack[top++] = n;
            break;
        case Kind::add:
            --top;
            stack[top - 1] += stack[top];
            break;
        case Kind::sub:
            --top;
            stack[top - 1] -= stack[top];
            break;
        case Kind::mul:
            --top;
            stack[top - 1] *= stack[top];
            break;
        case Kind::div:
            --top;
            if (stack[top] == 0.0) throw ExpressionError("division by zero in '" + to_string() + "'");
            stack[top - 1] /= stack[top];
            break;
        case Kind::int_pow:
            stack[top - 1] = int_power(stack[top - 1], in.a);
            break;
        case Kind::rat_pow:
            stack[top - 1] = rational_root(stack[top - 1], in.a, in.b);
            break;
        case Kind::abs:
            stack[top - 1] = std::abs(stack[top - 1]);
            break;
        case Kind::exp:
            --top;
            stack[top - 1] = std::pow(stack[top - 1], stack[top]);
            break;
        }
    }
    const double result = stack[0];
    if (!std::isfinite(result)) throw ExpressionError("non-finite value of '" + to_string() + "'");
    return result;
}

namespace {

// Linear combination sum(coef * term) + constant over structurally distinct terms.
struct Linear {
    double constant = 0.0;
    std::vector<std::pair<NodePtr, double>> terms;
    std::vector<std::string> keys;
};

NodePtr simplify_node(const NodePtr& node);

NodePtr simplify_children(const NodePtr& node) {
    if (!node->lhs) return node;
    auto copy = std::make_shared<Expr::Node>(*node);
    copy->lhs = simplify_node(node->lhs);
    if (node->rhs) copy->rhs = simplify_node(node->rhs);
    return copy;
}

bool folds(const Expr::Node& node, double& value) {
    if (has_var(node)) return false;
    try {
        value = eval_constant(node);
    } catch (const Error&) {
        return false;
    }
    return std::isfinite(value);
}

void add_term(Linear& lin, const NodePtr& term, double coef) {
    std::string key;
    print(*term, key);
    for (std::size_t i = 0; i < lin.keys.size(); ++i) {
        if (lin.keys[i] == key) {
            lin.terms[i].second += coef;
            return;
        }
    }
    lin.keys.push_back(std::move(key));
    lin.terms.emplace_back(term, coef);
}

void collect(const NodePtr& node, double scale, Linear& lin) {
    using K = Expr::Kind;
    double v = 0.0;
    if (folds(*node, v)) {
        lin.constant += scale * v;
        return;
    }
    switch (node->kind) {
    case K::add:
        collect(node->lhs, scale, lin);
        collect(node->rhs, scale, lin);
        return;
    case K::sub:
        collect(node->lhs, scale, lin);
        collect(node->rhs, -scale, lin);
        return;
    case K::mul:
        if (folds(*node->lhs, v)) return collect(node->rhs, scale * v, lin);
        if (folds(*node->rhs, v)) return collect(node->lhs, scale * v, lin);
        break;
    case K::div:
        if (folds(*node->rhs, v) && v != 0.0) return collect(node->lhs, scale / v, lin);
        if (folds(*node->lhs, v)) {
            add_term(lin, make_node(K::div, make_constant(1.0), simplify_node(node->rhs)), scale * v);
            return;
        }
        break;
    default:
        break;
    }
    add_term(lin, simplify_children(node), scale);
}

NodePtr scaled_term(const NodePtr& term, double coef) {
    if (coef == 1.0) return term;
    if (term->kind == Expr::Kind::div && term->lhs->kind == Expr::Kind::constant)
        return make_node(Expr::Kind::div, make_constant(coef * term->lhs->value), term->rhs);
    return make_node(Expr::Kind::mul, make_constant(coef), term);
}

NodePtr simplify_node(const NodePtr& node) {
    using K = Expr::Kind;
    if (node->kind == K::add || node->kind == K::sub || node->kind == K::mul || node->kind == K::div) {
        Linear lin;
        collect(node, 1.0, lin);
        // positive items first so the result reads as a difference
        std::vector<std::pair<NodePtr, double>> items;
        for (const auto& t : lin.terms)
            if (t.second != 0.0) items.push_back(t);
        if (lin.constant != 0.0 || items.empty()) items.emplace_back(nullptr, lin.constant);
        std::stable_partition(items.begin(), items.end(), [](const auto& t) { return t.second > 0.0; });
        NodePtr out;
        for (const auto& [term, coef] : items) {
            if (!out) {
                out = term ? scaled_term(term, coef) : make_constant(coef);
            } else if (coef > 0.0) {
                out = make_node(K::add, out, term ? scaled_term(term, coef) : make_constant(coef));
            } else {
                out = make_node(K::sub, out, term ? scaled_term(term, -coef) : make_constant(-coef));
            }
        }
        return out;
    }
    return simplify_children(node);
}

} // namespace

Expr Expr::simplified() const { return Expr(simplify_node(root_)); }

Expr Expr::substitute(const Expr& replacement) const { return Expr(substitute_node(root_, replacement.root_)); }

std::string Expr::to_string() const {
    std::string out;
    print(*root_, out);
    return out;
}

bool Expr::is_constant() const { return !has_var(*root_); }

} // namespace ancl
