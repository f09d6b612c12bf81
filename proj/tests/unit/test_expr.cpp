#include "confrac/errors.hpp"
#include "confrac/expr.hpp"
#include "support/generators.hpp"

#include <doctest.h>

#include <cmath>

using namespace confrac;
using confrac::testing::Rng;

TEST_SUITE("expr") {

TEST_CASE("parse atoms and precedence") {
    CHECK(parse("t") == Expr::variable());
    CHECK(parse("  alpha ") == Expr::alpha());

    const Expr sum = parse("sin(t) + t^2");
    REQUIRE(sum.kind() == NodeKind::Add);
    CHECK(sum.lhs() == Expr::call(Func::Sin, Expr::variable()));
    CHECK(sum.rhs() == Expr::binary(NodeKind::Pow, Expr::variable(), Expr::number(2)));

    // ^ is right-associative and binds tighter than unary minus
    CHECK(parse("2^3^2") == Expr::binary(NodeKind::Pow, Expr::number(2),
                                         Expr::binary(NodeKind::Pow, Expr::number(3), Expr::number(2))));
    CHECK(parse("-t^2") == Expr::neg(Expr::binary(NodeKind::Pow, Expr::variable(), Expr::number(2))));
    CHECK(parse("t^-1") == Expr::binary(NodeKind::Pow, Expr::variable(), Expr::neg(Expr::number(1))));
    CHECK(parse("1-2-3") == Expr::binary(NodeKind::Sub,
                                         Expr::binary(NodeKind::Sub, Expr::number(1), Expr::number(2)),
                                         Expr::number(3)));
    CHECK(parse("2.5e-3") == Expr::number(2.5e-3));
    CHECK(parse(".5") == Expr::number(0.5));
}

TEST_CASE("parse errors carry offsets") {
    try {
        parse("2 +");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.offset() == 3);
    }
    CHECK_THROWS_AS(parse(""), ParseError);
    CHECK_THROWS_AS(parse("   "), ParseError);
    CHECK_THROWS_AS(parse("foo(t)"), ParseError);
    CHECK_THROWS_AS(parse("sin t"), ParseError);
    CHECK_THROWS_AS(parse("(t"), ParseError);
    CHECK_THROWS_AS(parse("t)"), ParseError);
    CHECK_THROWS_AS(parse("2e"), ParseError);
    try {
        parse("t + x");
    } catch (const ParseError& e) {
        CHECK(e.offset() == 4);
    }
}

TEST_CASE("to_text") {
    CHECK(to_text(parse("t^2")) == "(t^2)");
    CHECK(to_text(Expr::neg(Expr::variable())) == "(-t)");
    CHECK(to_text(Expr::number(-1.5)) == "(-1.5)");
    CHECK(parse(to_text(parse("-(t+1)*sin(pi*t)/e"))) == parse("-(t+1)*sin(pi*t)/e"));
}

TEST_CASE("round trip over random trees") {
    Rng rng(20240601);
    for (int i = 0; i < 1000; ++i) {
        const Expr e = confrac::testing::random_parseable(rng, 5);
        const std::string text = to_text(e);
        INFO(text);
        CHECK(parse(text) == e);
    }
}

TEST_CASE("eval") {
    CHECK(eval(parse("t^2"), {3.0, 1.0}) == 9.0);
    CHECK(eval(parse("t^alpha/alpha"), {4.0, 0.5}) == doctest::Approx(4.0).epsilon(1e-15));
    CHECK(eval(parse("pi"), {0.0, 1.0}) == doctest::Approx(M_PI));
    CHECK_THROWS_AS(eval(parse("1/t"), {0.0, 1.0}), DomainError);
    CHECK_THROWS_AS(eval(parse("ln(t)"), {0.0, 1.0}), DomainError);
    CHECK_THROWS_AS(eval(parse("sqrt(t)"), {-1.0, 1.0}), DomainError);
    CHECK_THROWS_AS(eval(parse("t^0.5"), {-4.0, 1.0}), DomainError);
    CHECK(eval(parse("t^3"), {-2.0, 1.0}) == -8.0);
    CHECK_THROWS_AS(eval(parse("t"), {1.0, 1.5}), InvalidArgument);
    CHECK_THROWS_AS(eval(parse("t"), {1.0, 0.0}), InvalidArgument);
}

TEST_CASE("diff_classical table rules and examples") {
    CHECK(diff_classical(parse("sin(t)")) == parse("cos(t)"));

    const Expr d = diff_classical(parse("t*exp(t)"));
    const Expr manual = parse("exp(t) + t*exp(t)");
    for (double t : {-1.0, 0.3, 1.0, 2.5}) {
        CHECK(eval(d, {t, 1.0}) == doctest::Approx(eval(manual, {t, 1.0})).epsilon(1e-14));
    }
    const double fd = confrac::testing::central_fd(parse("t*exp(t)"), 1.0, 1.0);
    CHECK(std::fabs(eval(d, {1.0, 1.0}) - fd) / std::fabs(fd) < 1e-8);

    const Expr dp = diff_classical(parse("t^alpha"));
    CHECK(eval(dp, {2.0, 0.5}) == doctest::Approx(0.5 * std::pow(2.0, -0.5)).epsilon(1e-15));
    const double fd2 = confrac::testing::central_fd(parse("t^alpha"), 2.0, 0.5);
    CHECK(std::fabs(eval(dp, {2.0, 0.5}) - fd2) < 1e-8);
}

TEST_CASE("diff_with places the weight on the leaves") {
    using build::power;
    const double a = 0.3;
    const Expr w = power(Expr::variable(), Expr::number(1.0 - a));
    // D_alpha (t^alpha/alpha) is exactly 1, with no leftover power of t
    CHECK(diff_with(bind_alpha(parse("t^alpha/alpha"), a), w).is_number(1.0));
    CHECK(!depends_on_t(diff_with(diff_with(bind_alpha(parse("(t^alpha/alpha)^2/2"), a), w), w)));
    CHECK(diff_with(parse("t^3"), Expr::number(1.0)) == diff_classical(parse("t^3")));
}

TEST_CASE("near-integer powers of t snap") {
    using build::power;
    using build::product;
    CHECK(power(Expr::variable(), Expr::number(1e-17)).is_number(1.0));
    CHECK(product(power(Expr::variable(), Expr::number(0.7 - 1.0)),
                  power(Expr::variable(), Expr::number(0.3))).is_number(1.0));
    CHECK(power(Expr::variable(), Expr::number(2.0 + 1e-15)) == power(Expr::variable(), Expr::number(2.0)));
    CHECK(power(Expr::variable(), Expr::number(1e-6)) != Expr::number(1.0));
}

TEST_CASE("diff_classical of every primitive") {
    const char* cases[] = {"cos(t^2)", "ln(1+t^2)", "sqrt(t+1)", "2^t",        "t^t",
                           "abs(t-1)", "1/(t+2)",   "exp(-t)/t", "-(t^3)",     "alpha*t^(alpha+1)",
                           "e^t",      "pi*t",      "t/3",       "(t+1)^-2.5", "ln(t)*sin(t)"};
    for (const char* text : cases) {
        const Expr e = parse(text);
        const Expr d = diff_classical(e);
        for (double t : {0.6, 1.7, 2.9}) {
            INFO(text << " at t=" << t);
            const double exact = eval(d, {t, 0.7});
            const double fd = confrac::testing::central_fd(e, t, 0.7);
            CHECK(std::fabs(exact - fd) / (1.0 + std::fabs(exact)) < 1e-7);
        }
    }
    // abs has no derivative at its kink
    CHECK_THROWS_AS(eval(diff_classical(parse("abs(t-1)")), {1.0, 1.0}), DomainError);
}

TEST_CASE("derivative property over random smooth expressions") {
    Rng rng(7);
    int checked = 0;
    for (int i = 0; i < 500; ++i) {
        const Expr e = confrac::testing::random_smooth(rng, 3);
        const double t = confrac::testing::uniform(rng, 0.5, 3.0);
        const double alpha = confrac::testing::uniform(rng, 0.1, 1.0);
        const Expr d = diff_classical(e);
        const double exact = eval(d, {t, alpha});
        const double fd = confrac::testing::central_fd(e, t, alpha);
        INFO(to_text(e) << " t=" << t << " alpha=" << alpha);
        CHECK(std::fabs(exact - fd) / (1.0 + std::fabs(exact)) < 1e-6);
        ++checked;
    }
    CHECK(checked == 500);
}

TEST_CASE("linearity of the derivative") {
    Rng rng(11);
    for (int i = 0; i < 100; ++i) {
        const Expr e1 = confrac::testing::random_smooth(rng, 2);
        const Expr e2 = confrac::testing::random_smooth(rng, 2);
        const double a = confrac::testing::uniform(rng, -2, 2);
        const double b = confrac::testing::uniform(rng, -2, 2);
        const Expr combo = Expr::binary(
            NodeKind::Add, Expr::binary(NodeKind::Mul, Expr::number(a), e1),
            Expr::binary(NodeKind::Mul, Expr::number(b), e2));
        const double t = confrac::testing::uniform(rng, 0.5, 3.0);
        const EvalEnv env{t, 0.5};
        const double lhs = eval(diff_classical(combo), env);
        const double rhs = a * eval(diff_classical(e1), env) + b * eval(diff_classical(e2), env);
        CHECK(std::fabs(lhs - rhs) <= 1e-12 * (1.0 + std::fabs(rhs)));
    }
}

TEST_CASE("bind_alpha folds powers of t") {
    // d/dt of t^alpha/alpha times t^(1-alpha) collapses to the constant 1
    const Expr bound = bind_alpha(parse("t^alpha/alpha"), 0.5);
    const Expr weighted =
        build::product(build::power(Expr::variable(), Expr::number(0.5)), diff_classical(bound));
    CHECK(weighted.is_number(1.0));

    const Expr e2 = bind_alpha(parse("(t^alpha/alpha)^2/2"), 0.5);
    CHECK(eval(e2, {3.0, 1.0}) == doctest::Approx(2.0 * 3.0).epsilon(1e-15));
    CHECK(!depends_on_alpha(e2));
    CHECK(constant_value(parse("2*pi")).value() == doctest::Approx(2 * M_PI));
    CHECK(!constant_value(parse("alpha")).has_value());
    CHECK(!constant_value(parse("ln(0-1)")).has_value());
}

}  // TEST_SUITE
