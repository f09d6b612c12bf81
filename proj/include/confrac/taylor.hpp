#pragma once

#include "confrac/calculus.hpp"

#include <vector>

namespace confrac {

/// Cauchy function of D^n_alpha y = 0:  ((t^alpha - s^alpha)/alpha)^(n-1) / (n-1)!.
double cauchy_kernel(int n, Alpha alpha, double t, double s);

/// The same kernel as an expression in t (alpha left symbolic) for a fixed s.
Expr cauchy_kernel_expr(int n, double s);

/// Degree-n fractional Taylor polynomial of f about `center`:
///   sum_k ((t^alpha - center^alpha)/alpha)^k D^k_alpha f(center) / k!,
/// with 0^0 = 1 so that evaluation at the center returns f(center).
class TaylorExpansion {
public:
    TaylorExpansion(const ConformableFn& f, Alpha alpha, int degree, double center);

    double operator()(double at) const;

    double center() const noexcept { return center_; }
    int degree() const noexcept { return static_cast<int>(coefficients_.size()) - 1; }
    Alpha alpha() const noexcept { return alpha_; }
    /// D^k_alpha f(center) for k = 0..degree.
    const std::vector<double>& coefficients() const noexcept { return coefficients_; }

private:
    Alpha alpha_;
    double center_;
    std::vector<double> coefficients_;
};

double taylor_poly(const ConformableFn& f, Alpha alpha, int n, double center, double at);

/// R_{n,f}(center, at) in integral form,
///   (1/n!) int_center^at ((at^alpha - tau^alpha)/alpha)^n D^{n+1}_alpha f(tau) d_alpha tau,
/// orientation-signed when at < center. n = -1 returns f(at).
double taylor_remainder(const ConformableFn& f, Alpha alpha, int n, double center, double at,
                        const QuadratureConfig& cfg = {});

/// R_{n,f}(center, at) from its definition f(at) - taylor_poly(center, at).
double taylor_remainder_direct(const ConformableFn& f, Alpha alpha, int n, double center,
                               double at);

/// Residual of the remainder split identity on [a, b] at t in [a, b]:
///   int_a^b D^{n+1}f(s)/(n+1)! ((t^a-s^a)/a)^{n+1} d_a s
///     - int_a^t R_{n,f}(a,s) d_a s - int_t^b R_{n,f}(b,s) d_a s.
double remainder_split_residual(const ConformableFn& f, Alpha alpha, int n, const Interval& win,
                                double t, const QuadratureConfig& cfg = {});

enum class Endpoint { A, B };

/// The two sides of an endpoint remainder identity.
///   Endpoint::A:  int_a^b D^{n+1}f(s)/(n+1)! ((a^a-s^a)/a)^{n+1} d_a s = int_a^b R_{n,f}(b,s) d_a s
///   Endpoint::B:  int_a^b D^{n+1}f(s)/(n+1)! ((b^a-s^a)/a)^{n+1} d_a s = int_a^b R_{n,f}(a,s) d_a s
struct IdentitySides {
    double kernel_side = 0.0;
    double remainder_side = 0.0;

    double value() const noexcept { return kernel_side; }
    double residual() const noexcept { return kernel_side - remainder_side; }
};

IdentitySides remainder_endpoint_integral(const ConformableFn& f, Alpha alpha, int n,
                                          const Interval& win, Endpoint which,
                                          const QuadratureConfig& cfg = {});

/// (1/n!) X^n - sum_k Y^k Z^(n-k) / (k!(n-k)!) with X = (t^a - r^a)/a, Y = (t^a - s^a)/a,
/// Z = (s^a - r^a)/a, evaluated in extended precision.
double binomial_identity_residual(int n, Alpha alpha, double t, double s, double r);

/// int_a^b R_{n,f}(a, s) d_alpha s, with R taken from its definition. Shared by the
/// remainder inequalities.
double integrated_remainder_at_a(const ConformableFn& f, Alpha alpha, int n, const Interval& win,
                                 const QuadratureConfig& cfg = {});

}  // namespace confrac
