// SPDX-License-Identifier: Apache-2.0
#include "ancl/errors.hpp"
#include "ancl/expr.hpp"

#include "doctest.h"

#include <cmath>

using ancl::Expr;

TEST_CASE("expression evaluation") {
    CHECK(Expr::parse("1 - 1/n").eval(10) == doctest::Approx(0.9).epsilon(1e-15));
    CHECK(Expr::parse("2 + 3*(1/2)^n").eval(2) == doctest::Approx(2.75).epsilon(1e-15));
    CHECK(Expr::parse("sqrt(n)").eval(16) == 4.0);
    CHECK(Expr::parse("n^(1/3)").eval(27) == doctest::Approx(3.0));
    CHECK(Expr::parse("-n^2").eval(3) == -9.0);
    CHECK(Expr::parse("abs(1 - n)").eval(5) == 4.0);
    CHECK(Expr::parse("2^-1").eval(1) == 0.5);
}

TEST_CASE("expression errors") {
    CHECK_THROWS_AS((void)Expr::parse("1/(n-1)").eval(1), ancl::ExpressionError);
    CHECK_THROWS_AS((void)Expr::parse("sqrt(1 - n)").eval(3), ancl::ExpressionError);
    CHECK_THROWS_AS(Expr::parse("1 +"), ancl::ParseError);
    CHECK_THROWS_AS(Expr::parse("n^n"), ancl::ParseError);
    CHECK_THROWS_AS(Expr::parse("(-2)^n"), ancl::ParseError);
    CHECK_THROWS_AS(Expr::parse("x"), ancl::ParseError);
}

TEST_CASE("printing round-trips") {
    for (const char* text : {"1 - 1/n", "2 + 3*(1/2)^n", "-(1 - 2/n)", "(-2)*n", "n^(2/3) - 4", "abs(n - 3)/(n + 1)",
                             "1 - (n - 2)", "1/(n*n)", "(n^2)^3", "0.5^(n - 1)", "2^n/3^n"}) {
        const Expr e = Expr::parse(text);
        const Expr back = Expr::parse(e.to_string());
        CHECK(back.to_string() == e.to_string());
        for (double n : {1.0, 2.0, 7.0, 1000.0}) CHECK(back.eval(n) == e.eval(n));
    }
}

TEST_CASE("substitution") {
    const Expr e = Expr::parse("n^2 + 1").substitute(Expr::parse("2*n - 1"));
    CHECK(e.eval(3) == 26.0);
}

TEST_CASE("simplification collects like terms") {
    auto simp = [](const char* s) { return Expr::parse(s).simplified().to_string(); };
    CHECK(simp("(-1) * (1 - 1/n - 1)") == "1 / n");
    CHECK(simp("-(1 - 1/n)") == "1 / n - 1");
    CHECK(simp("2 * (1/n) + 3/n") == "5 / n");
    CHECK(simp("1 + 2*3") == "7");
    CHECK(simp("n - n") == "0");
    CHECK(simp("sqrt(1 + 1/n - 1)") == "sqrt(1 / n)");
    CHECK(simp("1 / (2*n - 1 + 1)") == "1 / (2 * n)");
    CHECK(simp("-1/n") == "(-1) / n");
    const Expr e = Expr::parse("3 - (1 - 1/n^2)*2 + 0.5^n");
    for (int n = 1; n < 50; ++n) CHECK(e.simplified().eval(n) == doctest::Approx(e.eval(n)).epsilon(1e-14));
}
