#include "confrac/errors.hpp"
#include "confrac/taylor.hpp"
#include "support/families.hpp"
#include "support/generators.hpp"

#include <doctest.h>

#include <cmath>

using namespace confrac;
using confrac::testing::Rng;
using confrac::testing::uniform;

namespace {

ConformableFn fn(const std::string& text, double alpha) {
    return ConformableFn::from_text(text, Alpha(alpha));
}

}  // namespace

TEST_SUITE("taylor") {

TEST_CASE("cauchy kernel closed form") {
    CHECK(cauchy_kernel(1, Alpha(0.3), 2.0, 0.7) == 1.0);
    for (int n = 2; n <= 5; ++n) CHECK(cauchy_kernel(n, Alpha(0.5), 1.7, 1.7) == 0.0);
    CHECK(cauchy_kernel(3, Alpha(0.5), 4.0, 1.0) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK_THROWS_AS(cauchy_kernel(0, Alpha(0.5), 1.0, 1.0), InvalidArgument);
    CHECK(eval(cauchy_kernel_expr(3, 1.0), {4.0, 0.5}) == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("kernel solves the initial value problem at t = s") {
    for (double alpha : {0.25, 0.5, 1.0}) {
        for (double s : {0.5, 1.3}) {
            for (int n = 1; n <= 5; ++n) {
                const auto y = ConformableFn::from_expr(cauchy_kernel_expr(n, s), Alpha(alpha));
                for (int i = 0; i < n; ++i) {
                    const double expected = i == n - 1 ? 1.0 : 0.0;
                    CHECK(frac_deriv_n(y, Alpha(alpha), i, s) == doctest::Approx(expected).epsilon(1e-12));
                }
                // and D^n annihilates it
                CHECK(std::fabs(frac_deriv_n(y, Alpha(alpha), n, s + 0.4)) < 1e-12);
            }
        }
    }
}

TEST_CASE("taylor_poly") {
    const auto f = fn("sin(t) + t", 0.5);
    CHECK(taylor_poly(f, Alpha(0.5), 3, 1.2, 1.2) == doctest::Approx(f(1.2)).epsilon(1e-15));

    const auto e2 = fn(confrac::testing::e_k(2), 0.5);
    for (auto [s, t] : {std::pair{0.5, 2.0}, {2.0, 0.3}, {1.0, 1.0}}) {
        CHECK(taylor_poly(e2, Alpha(0.5), 2, s, t) == doctest::Approx(e2(t)).epsilon(1e-13));
    }
    CHECK(taylor_poly(fn("exp(t)", 1.0), Alpha(1.0), 4, 0.0, 1.0) ==
          doctest::Approx(65.0 / 24.0).epsilon(1e-14));

    const TaylorExpansion ex(fn("exp(t^alpha/alpha)", 0.25), Alpha(0.25), 4, 1.0);
    CHECK(ex.coefficients().size() == 5);
    CHECK(ex.degree() == 4);
    CHECK(ex(1.0) == doctest::Approx(std::exp(4.0)));
}

TEST_CASE("taylor_remainder") {
    const auto f = fn("cos(t)*exp(-t)", 0.5);
    CHECK(taylor_remainder(f, Alpha(0.5), -1, 0.3, 1.7) == f(1.7));
    for (int n = 0; n <= 4; ++n) {
        const auto en = fn(confrac::testing::e_k(n == 0 ? 0 : n), 0.5);
        if (n > 0) CHECK(std::fabs(taylor_remainder(en, Alpha(0.5), n, 0.4, 2.2)) < 1e-14);
        const double integral = taylor_remainder(f, Alpha(0.5), n, 0.6, 2.1);
        const double direct = taylor_remainder_direct(f, Alpha(0.5), n, 0.6, 2.1);
        CHECK(std::fabs(f(2.1) - taylor_poly(f, Alpha(0.5), n, 0.6, 2.1) - integral) < 1e-8);
        CHECK(std::fabs(integral - direct) < 1e-8);
        // reversed orientation
        const double back = taylor_remainder(f, Alpha(0.5), n, 2.1, 0.6);
        CHECK(std::fabs(f(0.6) - taylor_poly(f, Alpha(0.5), n, 2.1, 0.6) - back) < 1e-8);
    }
}

TEST_CASE("Taylor reconstruction over the family") {
    Rng rng(3);
    for (const auto& nf : confrac::testing::taylor_family()) {
        for (double alpha : {0.25, 0.5, 1.0}) {
            const auto f = fn(nf.text, alpha);
            for (int n = 0; n <= 4; ++n) {
                const double s = uniform(rng, 0.5, 3.0);
                const double t = uniform(rng, 0.5, 3.0);
                const double gap = f(t) - taylor_poly(f, Alpha(alpha), n, s, t) -
                                   taylor_remainder(f, Alpha(alpha), n, s, t);
                INFO(nf.name << " alpha=" << alpha << " n=" << n << " s=" << s << " t=" << t);
                CHECK(std::fabs(gap) < 1e-7);
            }
        }
    }
}

TEST_CASE("remainder split identity") {
    const Interval win(1.0, 2.0);
    const auto g = fn("exp(t^alpha/alpha)", 0.5);
    CHECK(std::fabs(remainder_split_residual(g, Alpha(0.5), 1, win, 1.5)) < 1e-7);
    CHECK(std::fabs(remainder_split_residual(g, Alpha(0.5), -1, win, 1.5)) < 1e-10);
    const auto c = ConformableFn::constant(3.0);
    for (int n = 0; n <= 3; ++n) {
        CHECK(std::fabs(remainder_split_residual(c, Alpha(0.7), n, win, 1.2)) < 1e-12);
    }
    for (double t : {1.0, 2.0}) {
        CHECK(std::fabs(remainder_split_residual(fn("sin(t)", 0.3), Alpha(0.3), 2, win, t)) < 1e-7);
    }
    CHECK_THROWS_AS(remainder_split_residual(g, Alpha(0.5), 1, win, 2.5), InvalidArgument);
}

TEST_CASE("remainder endpoint identities") {
    const Interval unit(0.0, 1.0);
    const auto c = ConformableFn::constant(-2.0);
    for (auto which : {Endpoint::A, Endpoint::B}) {
        const auto sides = remainder_endpoint_integral(c, Alpha(0.5), 1, unit, which);
        CHECK(std::fabs(sides.value()) < 1e-14);
        CHECK(std::fabs(sides.residual()) < 1e-14);

        const auto sin1 = remainder_endpoint_integral(fn("sin(t)", 1.0), Alpha(1.0), 0, unit, which);
        CHECK(std::fabs(sin1.residual()) < 1e-9);

        const auto base = remainder_endpoint_integral(fn("exp(t)", 0.5), Alpha(0.5), -1, Interval(0.5, 2), which);
        const double plain = frac_integral(fn("exp(t)", 0.5), Alpha(0.5), 0.5, 2.0);
        CHECK(sides.kernel_side == doctest::Approx(0.0));
        CHECK(base.kernel_side == doctest::Approx(plain).epsilon(1e-12));
        CHECK(base.remainder_side == doctest::Approx(plain).epsilon(1e-12));
    }
    // sin on [0,1], alpha = 1, n = 0: B side equals int_0^1 (sin s - sin 0) ds = 1 - cos 1
    const auto b = remainder_endpoint_integral(fn("sin(t)", 1.0), Alpha(1.0), 0, unit, Endpoint::B);
    CHECK(b.remainder_side == doctest::Approx(1.0 - std::cos(1.0)).epsilon(1e-12));
}

TEST_CASE("binomial identity") {
    CHECK(binomial_identity_residual(4, Alpha(0.5), 3.0, 1.0, 1.0) == 0.0);
    CHECK(std::fabs(binomial_identity_residual(1, Alpha(0.3), 3.0, 2.0, 0.5)) < 1e-15);
    CHECK(std::fabs(binomial_identity_residual(3, Alpha(0.5), 4.0, 2.0, 1.0)) < 1e-12);
    Rng rng(5);
    for (int i = 0; i < 200; ++i) {
        const int n = confrac::testing::uniform_int(rng, 1, 6);
        const Alpha a(uniform(rng, 0.1, 1.0));
        const double t = uniform(rng, 0, 5), s = uniform(rng, 0, 5), r = uniform(rng, 0, 5);
        const double x = (std::pow(t, a.value()) - std::pow(r, a.value())) / a.value();
        const double lhs = std::pow(x, n) / std::tgamma(n + 1);
        CHECK(std::fabs(binomial_identity_residual(n, a, t, s, r)) <= 1e-12 * (1 + std::fabs(lhs)));
    }
}

}  // TEST_SUITE
