#include "confrac/taylor.hpp"

#include "confrac/errors.hpp"

#include <cmath>
#include <string>

namespace confrac {

namespace {

double factorial(int n) { return std::tgamma(n + 1.0); }

// ((x^alpha - y^alpha)/alpha)
double u_gap(Alpha alpha, double x, double y) { return alpha.to_u(x) - alpha.to_u(y); }

double int_pow(double base, int k) { return k == 0 ? 1.0 : std::pow(base, k); }

void check_point(double t, const char* what) {
    if (!(t >= 0.0) || !std::isfinite(t)) {
        throw InvalidArgument(std::string(what) + " must be a finite point >= 0");
    }
}

void check_order(int n, int min) {
    if (n < min) {
        throw InvalidArgument("order " + std::to_string(n) + " below minimum " + std::to_string(min));
    }
}

ConformableFn lambda_fn(ConformableFn::Scalar g) { return ConformableFn::from_function(std::move(g)); }

}  // namespace

double cauchy_kernel(int n, Alpha alpha, double t, double s) {
    check_order(n, 1);
    check_point(t, "t");
    check_point(s, "s");
    return int_pow(u_gap(alpha, t, s), n - 1) / factorial(n - 1);
}

Expr cauchy_kernel_expr(int n, double s) {
    check_order(n, 1);
    check_point(s, "s");
    const Expr a = Expr::alpha();
    const Expr gap = Expr::binary(
        NodeKind::Div,
        Expr::binary(NodeKind::Sub, Expr::binary(NodeKind::Pow, Expr::variable(), a),
                     Expr::binary(NodeKind::Pow, Expr::number(s), a)),
        a);
    return Expr::binary(NodeKind::Div,
                        Expr::binary(NodeKind::Pow, gap, Expr::number(n - 1)),
                        Expr::number(factorial(n - 1)));
}

// ---------------------------------------------------------------------------

TaylorExpansion::TaylorExpansion(const ConformableFn& f, Alpha alpha, int degree, double center)
    : alpha_(alpha), center_(center) {
    check_order(degree, 0);
    check_point(center, "center");
    coefficients_.reserve(degree + 1);
    for (int k = 0; k <= degree; ++k) {
        coefficients_.push_back(frac_deriv_n(f, alpha, k, center));
    }
}

double TaylorExpansion::operator()(double at) const {
    check_point(at, "evaluation point");
    const double gap = u_gap(alpha_, at, center_);
    // Horner in the gap with 1/k! folded in.
    double acc = 0.0;
    for (int k = degree(); k >= 0; --k) acc = acc * gap / (k + 1) + coefficients_[k];
    return acc;
}

double taylor_poly(const ConformableFn& f, Alpha alpha, int n, double center, double at) {
    return TaylorExpansion(f, alpha, n, center)(at);
}

double taylor_remainder(const ConformableFn& f, Alpha alpha, int n, double center, double at,
                        const QuadratureConfig& cfg) {
    check_order(n, -1);
    check_point(center, "center");
    check_point(at, "evaluation point");
    if (n == -1) return f(at);
    const ConformableFn top = frac_derivative(f, alpha, n + 1);
    const double at_u = alpha.to_u(at);
    const double scale = 1.0 / factorial(n);
    auto integrand = lambda_fn([&](double tau) {
        return scale * int_pow(at_u - alpha.to_u(tau), n) * top(tau);
    });
    return frac_integral(integrand, alpha, center, at, cfg);
}

double taylor_remainder_direct(const ConformableFn& f, Alpha alpha, int n, double center,
                               double at) {
    check_order(n, -1);
    if (n == -1) return f(at);
    return f(at) - taylor_poly(f, alpha, n, center, at);
}

namespace {

// int_from^to R_{n,f}(center, s) d_alpha s with R from its definition.
double integrate_remainder(const ConformableFn& f, Alpha alpha, int n, double center, double from,
                           double to, const QuadratureConfig& cfg) {
    if (n == -1) return frac_integral(f, alpha, from, to, cfg);
    const TaylorExpansion poly(f, alpha, n, center);
    auto r = lambda_fn([&](double s) { return f(s) - poly(s); });
    return frac_integral(r, alpha, from, to, cfg);
}

// int_a^b D^{n+1}f(s)/(n+1)! ((pivot^alpha - s^alpha)/alpha)^{n+1} d_alpha s
double kernel_integral(const ConformableFn& f, Alpha alpha, int n, const Interval& win,
                       double pivot, const QuadratureConfig& cfg) {
    const ConformableFn top = frac_derivative(f, alpha, n + 1);
    const double pivot_u = alpha.to_u(pivot);
    const double scale = 1.0 / factorial(n + 1);
    auto integrand = lambda_fn([&](double s) {
        return scale * int_pow(pivot_u - alpha.to_u(s), n + 1) * top(s);
    });
    return frac_integral(integrand, alpha, win, cfg);
}

}  // namespace

double integrated_remainder_at_a(const ConformableFn& f, Alpha alpha, int n, const Interval& win,
                                 const QuadratureConfig& cfg) {
    check_order(n, -1);
    return integrate_remainder(f, alpha, n, win.a(), win.a(), win.b(), cfg);
}

double remainder_split_residual(const ConformableFn& f, Alpha alpha, int n, const Interval& win,
                                double t, const QuadratureConfig& cfg) {
    check_order(n, -1);
    if (!win.contains(t)) throw InvalidArgument("split point must lie in the window");
    const double lhs = kernel_integral(f, alpha, n, win, t, cfg);
    const double left = integrate_remainder(f, alpha, n, win.a(), win.a(), t, cfg);
    const double right = integrate_remainder(f, alpha, n, win.b(), t, win.b(), cfg);
    return lhs - left - right;
}

IdentitySides remainder_endpoint_integral(const ConformableFn& f, Alpha alpha, int n,
                                          const Interval& win, Endpoint which,
                                          const QuadratureConfig& cfg) {
    check_order(n, -1);
    const double pivot = which == Endpoint::A ? win.a() : win.b();
    const double other = which == Endpoint::A ? win.b() : win.a();
    IdentitySides sides;
    sides.kernel_side = kernel_integral(f, alpha, n, win, pivot, cfg);
    sides.remainder_side = integrate_remainder(f, alpha, n, other, win.a(), win.b(), cfg);
    return sides;
}

double binomial_identity_residual(int n, Alpha alpha, double t, double s, double r) {
    check_order(n, 1);
    check_point(t, "t");
    check_point(s, "s");
    check_point(r, "r");
    using LD = long double;
    const LD a = alpha.value();
    auto u = [a](double x) { return std::pow(static_cast<LD>(x), a) / a; };
    const LD x = u(t) - u(r);
    const LD y = u(t) - u(s);
    const LD z = u(s) - u(r);
    auto fact = [](int k) {
        LD v = 1;
        for (int i = 2; i <= k; ++i) v *= i;
        return v;
    };
    const LD lhs = std::pow(x, n) / fact(n);
    LD rhs = 0;
    for (int k = 0; k <= n; ++k) {
        const LD yk = k == 0 ? LD{1} : std::pow(y, k);
        const LD zk = n - k == 0 ? LD{1} : std::pow(z, n - k);
        rhs += yk * zk / (fact(k) * fact(n - k));
    }
    return static_cast<double>(lhs - rhs);
}

}  // namespace confrac
