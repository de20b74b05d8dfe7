// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace ancl {

/// Closed-form real expression in one integer variable `n`.
///
/// Grammar accepted by Expr::parse (whitespace ignored):
///
///     expr    := term (('+' | '-') term)*
///     term    := unary (('*' | '/') unary)*
///     unary   := '-' unary | power
///     power   := primary ('^' unary)?          right associative
///     primary := number | 'n' | '(' expr ')' | 'sqrt(' expr ')' | 'abs(' expr ')'
///
/// A constant exponent of '^' gives an integer power or, for other values, a
/// rational power p/q with q <= 1000. An exponent depending on n requires a
/// positive constant base (geometric sequences such as (1/2)^n).
///
/// Values are immutable and cheap to copy; evaluation runs a compiled
/// postfix program so tight sampling loops stay fast.
class Expr {
public:
    enum class Kind { constant, var, add, sub, mul, div, int_pow, rat_pow, abs, exp };

    struct Node;

    static Expr constant(double c);
    static Expr var();
    static Expr parse(std::string_view text);

    friend Expr operator+(const Expr& a, const Expr& b);
    friend Expr operator-(const Expr& a, const Expr& b);
    friend Expr operator*(const Expr& a, const Expr& b);
    friend Expr operator/(const Expr& a, const Expr& b);
    friend Expr operator-(const Expr& a);
    static Expr pow(const Expr& base, int exponent);
    static Expr rat_pow(const Expr& base, int num, int den);
    static Expr sqrt(const Expr& a);
    static Expr abs(const Expr& a);

    /// Evaluates at n. Throws ExpressionError on division by zero, an even
    /// root of a negative number, or a non-finite result.
    [[nodiscard]] double eval(double n) const;

    /// Replaces every occurrence of `n` by `replacement`.
    [[nodiscard]] Expr substitute(const Expr& replacement) const;

    /// Collects sums of constant multiples of like terms and folds constants.
    /// Same values up to rounding.
    [[nodiscard]] Expr simplified() const;

    [[nodiscard]] std::string to_string() const;
    [[nodiscard]] bool is_constant() const;
    [[nodiscard]] const Node& root() const { return *root_; }

private:
    explicit Expr(std::shared_ptr<const Node> root);

    struct Instr {
        Kind op;
        double value;
        int a;
        int b;
    };

    std::shared_ptr<const Node> root_;
    std::shared_ptr<const std::vector<Instr>> code_;
    int stack_depth_ = 0;
};

struct Expr::Node {
    Kind kind;
    double value = 0.0;  // constant
    int num = 0;         // int_pow exponent, rat_pow numerator
    int den = 1;         // rat_pow denominator
    std::shared_ptr<const Node> lhs;
    std::shared_ptr<const Node> rhs;
};

} // namespace ancl
