#include "confrac/calculus.hpp"

#include "confrac/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>

namespace confrac {

Alpha::Alpha(double value) : value_(value) {
    if (!(value > 0.0 && value <= 1.0)) {
        throw InvalidArgument("alpha must lie in (0, 1], got " + std::to_string(value));
    }
}

double Alpha::to_u(double t) const {
    if (value_ == 1.0) return t;
    return std::pow(t, value_) / value_;
}

double Alpha::from_u(double u) const {
    if (value_ == 1.0) return u;
    return std::pow(value_ * u, 1.0 / value_);
}

Interval::Interval(double a, double b) : a_(a), b_(b) {
    if (!std::isfinite(a) || !std::isfinite(b) || !(0.0 <= a && a < b)) {
        throw InvalidArgument("window must satisfy 0 <= a < b, got [" + std::to_string(a) + ", " +
                              std::to_string(b) + "]");
    }
}

// ---------------------------------------------------------------------------
// ConformableFn

ConformableFn ConformableFn::from_expr(const Expr& e, Alpha alpha) {
    ConformableFn f;
    Expr bound = bind_alpha(e, alpha.value());
    f.eval_ = [bound](double t) { return eval(bound, EvalEnv{t, 1.0}); };
    f.expr_ = std::move(bound);
    f.smoothness_ = kUnlimited;
    return f;
}

ConformableFn ConformableFn::from_expr(const Expr& e) {
    if (depends_on_alpha(e)) {
        throw InvalidArgument("expression mentions alpha; bind it with from_expr(e, alpha)");
    }
    return from_expr(e, Alpha(1.0));
}

ConformableFn ConformableFn::from_text(std::string_view text, Alpha alpha) {
    return from_expr(parse(text), alpha);
}

ConformableFn ConformableFn::from_function(Scalar fn, std::vector<Scalar> classical,
                                           std::optional<int> smoothness) {
    if (!fn) throw InvalidArgument("ConformableFn needs a callable");
    ConformableFn f;
    f.eval_ = std::move(fn);
    f.smoothness_ = smoothness.value_or(static_cast<int>(classical.size()));
    if (f.smoothness_ < 0) throw InvalidArgument("smoothness must be nonnegative");
    f.classical_ = std::move(classical);
    return f;
}

ConformableFn ConformableFn::constant(double c) { return from_expr(Expr::number(c)); }

double ConformableFn::operator()(double t) const {
    if (limit_at_zero_ && t == 0.0) {
        // A finite value at 0 of a continuous representation is its right limit.
        try {
            const double direct = eval_(0.0);
            if (std::isfinite(direct)) return direct;
        } catch (const Error&) {
        }
        return right_limit_at_zero(eval_);
    }
    return eval_(t);
}

ConformableFn ConformableFn::with_limit_at_zero() const {
    ConformableFn copy = *this;
    copy.limit_at_zero_ = true;
    return copy;
}

// ---------------------------------------------------------------------------
// Limit at zero

namespace {

constexpr double kLimitTol = 1e-8;

// One round of Aitken's delta-squared process.
std::vector<double> aitken(const std::vector<double>& s) {
    std::vector<double> out;
    for (std::size_t k = 0; k + 2 < s.size(); ++k) {
        const double d1 = s[k + 1] - s[k];
        const double d2 = s[k + 2] - s[k + 1];
        const double den = d2 - d1;
        if (den == 0.0 || !std::isfinite(den)) {
            out.push_back(s[k + 2]);
        } else {
            out.push_back(s[k + 2] - d2 * d2 / den);
        }
    }
    return out;
}

}  // namespace

double right_limit_at_zero(const std::function<double(double)>& g) {
    constexpr int kSamples = 21;
    std::vector<double> d;
    d.reserve(kSamples);
    double t = 1e-2;
    for (int k = 0; k < kSamples; ++k, t *= 0.5) {
        double v = 0.0;
        try {
            v = g(t);
        } catch (const DomainError& e) {
            throw NumericError(std::string("limit at t = 0 does not exist: ") + e.what());
        }
        if (!std::isfinite(v)) throw NumericError("limit at t = 0 does not exist (non-finite samples)");
        d.push_back(v);
    }
    const double last_step = std::fabs(d[20] - d[19]);
    const double prev_step = std::fabs(d[19] - d[18]);
    if (last_step < kLimitTol && prev_step < kLimitTol) return d[20];
    if (last_step >= prev_step * (1.0 - 1e-3)) {
        throw NumericError("limit at t = 0 does not exist (samples do not settle)");
    }
    std::vector<double> level = d;
    for (int round = 0; round < 4 && level.size() >= 5; ++round) {
        level = aitken(level);
        const std::size_t n = level.size();
        if (std::fabs(level[n - 1] - level[n - 2]) < kLimitTol &&
            std::fabs(level[n - 2] - level[n - 3]) < kLimitTol) {
            return level[n - 1];
        }
    }
    throw NumericError("limit at t = 0 did not converge to 1e-8");
}

// ---------------------------------------------------------------------------
// Derivatives

Expr frac_derivative_expr(const Expr& e, Alpha alpha, int n) {
    if (n < 0) throw InvalidArgument("derivative order must be nonnegative");
    const double a = alpha.value();
    Expr current = bind_alpha(e, a);
    const Expr weight = build::power(Expr::variable(), Expr::number(1.0 - a));
    for (int k = 0; k < n; ++k) current = diff_with(current, weight);
    return current;
}

namespace {

// Weights of the derivative of order `order` at 0 from samples at `offsets`
// (Fornberg's recursion).
std::vector<double> fd_weights(const std::vector<double>& offsets, int order) {
    const std::size_t n = offsets.size();
    std::vector<std::vector<double>> c(n, std::vector<double>(order + 1, 0.0));
    double c1 = 1.0;
    double c4 = offsets[0];
    c[0][0] = 1.0;
    for (std::size_t i = 1; i < n; ++i) {
        const int mn = std::min(static_cast<int>(i), order);
        double c2 = 1.0;
        const double c5 = c4;
        c4 = offsets[i];
        for (std::size_t j = 0; j < i; ++j) {
            const double c3 = offsets[i] - offsets[j];
            c2 *= c3;
            if (j == i - 1) {
                for (int k = mn; k >= 1; --k) {
                    c[i][k] = c1 * (k * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
                }
                c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
            }
            for (int k = mn; k >= 1; --k) c[j][k] = (c4 * c[j][k] - k * c[j][k - 1]) / c3;
            c[j][0] = c4 * c[j][0] / c3;
        }
        c1 = c2;
    }
    std::vector<double> w(n);
    for (std::size_t i = 0; i < n; ++i) w[i] = c[i][order];
    return w;
}

double fd_in_u(const ConformableFn& f, Alpha alpha, int n, double u, double h) {
    const int half = (n + 1) / 2;
    std::vector<double> offsets;
    if (u - half * h > 0.0) {
        for (int k = -half; k <= half; ++k) offsets.push_back(k);
    } else {
        for (int k = 0; k <= n + 1; ++k) offsets.push_back(k);
    }
    const auto w = fd_weights(offsets, n);
    double acc = 0.0;
    for (std::size_t i = 0; i < offsets.size(); ++i) {
        acc += w[i] * f(alpha.from_u(u + offsets[i] * h));
    }
    return acc / std::pow(h, n);
}

struct OperatorTerm {
    double coef;
    double t_power;
    int order;  // classical derivative order
};

// (t^(1-alpha) d/dt)^n expanded as sum coef * t^p * f^(j)(t).
std::vector<OperatorTerm> expand_operator(double alpha, int n) {
    std::vector<OperatorTerm> terms{{1.0, 0.0, 0}};
    for (int k = 0; k < n; ++k) {
        std::vector<OperatorTerm> next;
        for (const auto& term : terms) {
            if (term.t_power != 0.0) {
                next.push_back({term.coef * term.t_power, term.t_power - alpha, term.order});
            }
            next.push_back({term.coef, term.t_power + 1.0 - alpha, term.order + 1});
        }
        terms = std::move(next);
    }
    return terms;
}

}  // namespace

DerivativeEstimate frac_deriv_fd(const ConformableFn& f, Alpha alpha, int n, double t) {
    if (n < 1 || n > 3) throw InvalidArgument("finite-difference fallback supports 1 <= n <= 3");
    if (!(t > 0.0)) throw InvalidArgument("finite-difference fallback needs t > 0");
    const double u = alpha.to_u(t);
    const double eps = std::numeric_limits<double>::epsilon();
    const double h = std::pow(eps, 1.0 / (n + 2)) * std::max(1.0, std::fabs(u));
    const double coarse = fd_in_u(f, alpha, n, u, h);
    const double fine = fd_in_u(f, alpha, n, u, 0.5 * h);
    DerivativeEstimate est;
    est.value = fine + (fine - coarse) / 3.0;
    est.error_estimate = std::fabs(fine - coarse);
    est.unstable = !std::isfinite(est.value) ||
                   est.error_estimate > 1e-4 * std::max(std::fabs(est.value), 1.0);
    return est;
}

ConformableFn frac_derivative(const ConformableFn& f, Alpha alpha, int n) {
    if (n < 0) throw InvalidArgument("derivative order must be nonnegative");
    if (n == 0) return f;
    if (n > f.smoothness()) {
        throw InvalidArgument("derivative order " + std::to_string(n) + " exceeds smoothness " +
                              std::to_string(f.smoothness()));
    }
    if (f.expr()) {
        Expr d = frac_derivative_expr(*f.expr(), alpha, n);
        return ConformableFn::from_expr(d).with_limit_at_zero();
    }

    const int remaining =
        f.smoothness() == ConformableFn::kUnlimited ? ConformableFn::kUnlimited : f.smoothness() - n;
    const double a = alpha.value();
    ConformableFn::Scalar eval;
    if (f.exact_orders() >= n) {
        std::vector<ConformableFn::Scalar> derivs;
        derivs.push_back([f](double t) { return f(t); });
        for (int k = 1; k <= n; ++k) derivs.push_back(f.classical_derivative(k));
        eval = [terms = expand_operator(a, n), derivs](double t) {
            double acc = 0.0;
            for (const auto& term : terms) {
                const double w = term.t_power == 0.0 ? 1.0 : std::pow(t, term.t_power);
                acc += term.coef * w * derivs[term.order](t);
            }
            return acc;
        };
    } else {
        if (n > 3) {
            throw InvalidArgument("finite-difference fallback is capped at order 3, requested " +
                                  std::to_string(n));
        }
        eval = [f, alpha, n](double t) {
            const auto est = frac_deriv_fd(f, alpha, n, t);
            if (est.unstable) {
                throw NumericError("finite-difference derivative unstable (estimated error " +
                                   std::to_string(est.error_estimate) + ")");
            }
            return est.value;
        };
    }
    return ConformableFn::from_function(std::move(eval), {}, remaining).with_limit_at_zero();
}

double frac_deriv_n(const ConformableFn& f, Alpha alpha, int n, double t) {
    if (!(t >= 0.0) || !std::isfinite(t)) {
        throw InvalidArgument("fractional derivative needs a finite t >= 0");
    }
    if (n == 0) return f(t);
    return frac_derivative(f, alpha, n)(t);
}

double frac_deriv(const ConformableFn& f, Alpha alpha, double t) {
    return frac_deriv_n(f, alpha, 1, t);
}

// ---------------------------------------------------------------------------
// Integral

double frac_measure(Alpha alpha, double from, double to) {
    const double a = alpha.value();
    if (a == 1.0) return to - from;
    return (std::pow(to, a) - std::pow(from, a)) / a;
}

double frac_integral(const ConformableFn& f, Alpha alpha, double from, double to,
                     const QuadratureConfig& cfg) {
    if (!(from >= 0.0) || !(to >= 0.0) || !std::isfinite(from) || !std::isfinite(to)) {
        throw InvalidArgument("integration window must lie in [0, inf)");
    }
    if (from == to) return 0.0;
    const double a = alpha.value();
    const bool touches_zero = std::min(from, to) == 0.0;
    if (cfg.mode == QuadratureMode::Direct && !(touches_zero && a < 1.0)) {
        auto weighted = [&f, a](double t) { return a == 1.0 ? f(t) : f(t) * std::pow(t, a - 1.0); };
        return integrate(weighted, from, to, cfg).value;
    }
    auto transformed = [&f, alpha](double u) { return f(alpha.from_u(u)); };
    return integrate(transformed, alpha.to_u(from), alpha.to_u(to), cfg).value;
}

double frac_integral(const ConformableFn& f, Alpha alpha, const Interval& win,
                     const QuadratureConfig& cfg) {
    return frac_integral(f, alpha, win.a(), win.b(), cfg);
}

}  // namespace confrac
