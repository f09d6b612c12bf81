#pragma once

#include "confrac/expr.hpp"
#include "confrac/quadrature.hpp"

#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <vector>

namespace confrac {

/// Order of the conformable derivative, validated to lie in (0, 1].
class Alpha {
public:
    explicit Alpha(double value);
    double value() const noexcept { return value_; }

    /// u = t^alpha / alpha; maps [0, inf) monotonically onto itself and turns D_alpha into d/du.
    double to_u(double t) const;
    /// Inverse of to_u: t = (alpha u)^(1/alpha).
    double from_u(double u) const;

private:
    double value_;
};

/// Window [a, b] with 0 <= a < b.
class Interval {
public:
    Interval(double a, double b);
    double a() const noexcept { return a_; }
    double b() const noexcept { return b_; }
    double length() const noexcept { return b_ - a_; }
    bool contains(double t) const noexcept { return a_ <= t && t <= b_; }

private:
    double a_;
    double b_;
};

/// A real function of t >= 0 together with whatever is known about its derivatives.
///
/// Built from an expression, the function carries its (alpha-bound) tree and every
/// fractional derivative is constructed symbolically. Built from a callable, it may carry
/// exact classical derivatives f', f'', ...; anything beyond those falls back to finite
/// differences, capped at order 3.
class ConformableFn {
public:
    using Scalar = std::function<double(double)>;
    static constexpr int kUnlimited = std::numeric_limits<int>::max();

    /// Binds `alpha` inside the expression to the given order.
    static ConformableFn from_expr(const Expr& e, Alpha alpha);
    /// For expressions that do not mention `alpha`; throws InvalidArgument otherwise.
    static ConformableFn from_expr(const Expr& e);
    static ConformableFn from_text(std::string_view text, Alpha alpha);

    /// `classical` holds f', f'', ... in order. `smoothness` defaults to the number of
    /// supplied derivatives; a larger declared order enables the finite-difference fallback.
    static ConformableFn from_function(Scalar f, std::vector<Scalar> classical = {},
                                       std::optional<int> smoothness = std::nullopt);

    static ConformableFn constant(double c);

    double operator()(double t) const;

    /// The alpha-bound expression, when the function was built from one.
    const std::optional<Expr>& expr() const noexcept { return expr_; }
    int smoothness() const noexcept { return smoothness_; }
    int exact_orders() const noexcept { return static_cast<int>(classical_.size()); }
    const Scalar& classical_derivative(int k) const { return classical_.at(k - 1); }

    /// True when evaluation at t = 0 is defined as the right limit (derived functions).
    bool limit_at_zero() const noexcept { return limit_at_zero_; }

    /// Returns a copy whose value at t = 0 is the right limit of its values for t > 0.
    ConformableFn with_limit_at_zero() const;

private:
    ConformableFn() = default;

    Scalar eval_;
    std::optional<Expr> expr_;
    std::vector<Scalar> classical_;
    int smoothness_ = 0;
    bool limit_at_zero_ = false;
};

/// Right limit of g at 0, estimated from g(t_k), t_k = 1e-2 * 2^-k, k = 0..20, by
/// repeated Aitken extrapolation (Richardson with an estimated error exponent).
/// Converged when successive estimates differ by less than 1e-8; throws NumericError
/// when the samples grow or fail to settle.
double right_limit_at_zero(const std::function<double(double)>& g);

/// D_alpha f(t) = t^(1-alpha) f'(t) for t > 0; the right limit at t = 0.
/// Throws InvalidArgument for t < 0 and NumericError when the limit does not exist.
double frac_deriv(const ConformableFn& f, Alpha alpha, double t);

/// D^n_alpha f(t); n = 0 returns f(t).
double frac_deriv_n(const ConformableFn& f, Alpha alpha, int n, double t);

/// A finite-difference derivative value with its step-halving error estimate.
struct DerivativeEstimate {
    double value = 0.0;
    double error_estimate = 0.0;
    bool unstable = false;  // error_estimate > 1e-4 * max(|value|, 1)
};

/// D^n_alpha f(t) by finite differences in u = t^alpha/alpha, ignoring any exact
/// derivatives. Requires 1 <= n <= 3 and t > 0.
DerivativeEstimate frac_deriv_fd(const ConformableFn& f, Alpha alpha, int n, double t);

/// The function t -> D^n_alpha f(t). Symbolic for expression-backed f, assembled from
/// exact classical derivatives when enough are supplied, finite differences otherwise.
/// Throws InvalidArgument when n exceeds f's smoothness (or 3 on the fallback path).
ConformableFn frac_derivative(const ConformableFn& f, Alpha alpha, int n);

/// The alpha-bound expression of D^n_alpha e, built by n rounds of t^(1-alpha) * d/dt.
Expr frac_derivative_expr(const Expr& e, Alpha alpha, int n);

/// Orientation-signed  int_from^to f(t) t^(alpha-1) dt  with from, to >= 0.
double frac_integral(const ConformableFn& f, Alpha alpha, double from, double to,
                     const QuadratureConfig& cfg = {});
double frac_integral(const ConformableFn& f, Alpha alpha, const Interval& win,
                     const QuadratureConfig& cfg = {});

/// Closed form  int_from^to 1 d_alpha t = (to^alpha - from^alpha)/alpha.
double frac_measure(Alpha alpha, double from, double to);

}  // namespace confrac
