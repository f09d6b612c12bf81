#pragma once

#include "confrac/calculus.hpp"

#include <vector>

namespace confrac {

/// L y = D^n_alpha y + sum_{i=1..n} p_i D^{n-i}_alpha y.
/// An empty coefficient list means L = D^n_alpha.
class LinearOperator {
public:
    LinearOperator(int order, std::vector<ConformableFn> coefficients, Alpha alpha);
    /// L = D^n_alpha.
    LinearOperator(int order, Alpha alpha);

    int order() const noexcept { return order_; }
    Alpha alpha() const noexcept { return alpha_; }
    const std::vector<ConformableFn>& coefficients() const noexcept { return coefficients_; }

    /// True when every p_i is identically zero (or none were given).
    bool coefficient_free() const noexcept { return coefficient_free_; }

private:
    int order_;
    std::vector<ConformableFn> coefficients_;
    Alpha alpha_;
    bool coefficient_free_;
};

/// L y = f with D^i_alpha y(s) = initial[i], i = 0..n-1.
struct IvpSpec {
    LinearOperator op;
    ConformableFn forcing;
    double s = 0.0;
    std::vector<double> initial;

    void validate() const;
};

/// Pass as `steps` to pick max(16, ceil(512 |u(t) - u(s)|)).
inline constexpr int kAutoSteps = 0;
inline constexpr int kMinSteps = 16;

/// The step count actually used for a solve from s to t.
int resolve_steps(Alpha alpha, double s, double t, int steps);

/// The Cauchy function y(t, s) of L: L y = 0, D^i y(s) = 0 for i <= n-2, D^{n-1} y(s) = 1.
/// Closed form when L has no coefficients; otherwise classical RK4 in u = t^alpha/alpha.
double cauchy_function(const LinearOperator& op, double s, double t, int steps = kAutoSteps);

/// The full state (D^0 y, ..., D^{n-1} y)(t) of the Cauchy function.
std::vector<double> cauchy_state(const LinearOperator& op, double s, double t,
                                 int steps = kAutoSteps);

/// int_s^t y(t, tau) f(tau) d_alpha tau. Requires all initial values to be zero.
/// Every sub-solve y(t, tau) uses the same step count as the outer solve.
double solve_voc(const IvpSpec& spec, double t, int steps = kAutoSteps,
                 const QuadratureConfig& cfg = {});

/// Homogeneous part matching the initial data plus solve_voc of the forcing.
/// The homogeneous part is the exact Taylor sum for coefficient-free L and a combination
/// of n numerically integrated fundamental solutions otherwise; a singular fundamental
/// matrix at t is reported as NumericError.
double solve_full(const IvpSpec& spec, double t, int steps = kAutoSteps,
                  const QuadratureConfig& cfg = {});

}  // namespace confrac
