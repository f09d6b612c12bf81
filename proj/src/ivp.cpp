#include "confrac/ivp.hpp"

#include "confrac/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace confrac {

namespace {

bool is_zero_fn(const ConformableFn& p) {
    if (!p.expr()) return false;
    const auto c = constant_value(*p.expr());
    return c && *c == 0.0;
}

void check_point(double t, const char* what) {
    if (!(t >= 0.0) || !std::isfinite(t)) {
        throw InvalidArgument(std::string(what) + " must be a finite point >= 0");
    }
}

using State = std::vector<double>;

// z' = A(u) z for the companion system in u; z_i = D^i_alpha y.
void rhs(const LinearOperator& op, double u, const State& z, State& dz) {
    const int n = op.order();
    for (int i = 0; i + 1 < n; ++i) dz[i] = z[i + 1];
    double top = 0.0;
    if (!op.coefficient_free()) {
        const double t = op.alpha().from_u(std::max(u, 0.0));
        const auto& p = op.coefficients();
        for (int i = 1; i <= n; ++i) top -= p[i - 1](t) * z[n - i];
    }
    dz[n - 1] = top;
}

State rk4(const LinearOperator& op, State z, double u0, double u1, int steps) {
    const std::size_t n = z.size();
    if (u0 == u1) return z;
    const double h = (u1 - u0) / steps;
    State k1(n), k2(n), k3(n), k4(n), tmp(n);
    for (int k = 0; k < steps; ++k) {
        // last node lands exactly on u1
        const double u = k + 1 == steps ? u1 - h : u0 + k * h;
        rhs(op, u, z, k1);
        for (std::size_t i = 0; i < n; ++i) tmp[i] = z[i] + 0.5 * h * k1[i];
        rhs(op, u + 0.5 * h, tmp, k2);
        for (std::size_t i = 0; i < n; ++i) tmp[i] = z[i] + 0.5 * h * k2[i];
        rhs(op, u + 0.5 * h, tmp, k3);
        for (std::size_t i = 0; i < n; ++i) tmp[i] = z[i] + h * k3[i];
        rhs(op, u + h, tmp, k4);
        for (std::size_t i = 0; i < n; ++i) {
            z[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
            if (!std::isfinite(z[i])) {
                throw NumericError("RK4 step " + std::to_string(k) + " produced a non-finite state");
            }
        }
    }
    return z;
}

double factorial(int n) { return std::tgamma(n + 1.0); }

// Closed-form state of the coefficient-free kernel: D^i y = gap^(n-1-i)/(n-1-i)!.
State closed_state(int n, double gap) {
    State z(n);
    for (int i = 0; i < n; ++i) {
        const int k = n - 1 - i;
        z[i] = (k == 0 ? 1.0 : std::pow(gap, k)) / factorial(k);
    }
    return z;
}

double determinant(std::vector<std::vector<double>> m) {
    const std::size_t n = m.size();
    double det = 1.0;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        for (std::size_t r = c + 1; r < n; ++r) {
            if (std::fabs(m[r][c]) > std::fabs(m[piv][c])) piv = r;
        }
        if (m[piv][c] == 0.0) return 0.0;
        if (piv != c) {
            std::swap(m[piv], m[c]);
            det = -det;
        }
        det *= m[c][c];
        for (std::size_t r = c + 1; r < n; ++r) {
            const double f = m[r][c] / m[c][c];
            for (std::size_t k = c; k < n; ++k) m[r][k] -= f * m[c][k];
        }
    }
    return det;
}

}  // namespace

LinearOperator::LinearOperator(int order, std::vector<ConformableFn> coefficients, Alpha alpha)
    : order_(order), coefficients_(std::move(coefficients)), alpha_(alpha) {
    if (order_ < 1) throw InvalidArgument("operator order must be >= 1");
    if (!coefficients_.empty() && static_cast<int>(coefficients_.size()) != order_) {
        throw InvalidArgument("expected " + std::to_string(order_) + " coefficients, got " +
                              std::to_string(coefficients_.size()));
    }
    coefficient_free_ = std::all_of(coefficients_.begin(), coefficients_.end(), is_zero_fn);
}

LinearOperator::LinearOperator(int order, Alpha alpha) : LinearOperator(order, {}, alpha) {}

void IvpSpec::validate() const {
    check_point(s, "base point");
    if (static_cast<int>(initial.size()) != op.order()) {
        throw InvalidArgument("expected " + std::to_string(op.order()) + " initial values, got " +
                              std::to_string(initial.size()));
    }
    for (double v : initial) {
        if (!std::isfinite(v)) throw InvalidArgument("initial values must be finite");
    }
}

int resolve_steps(Alpha alpha, double s, double t, int steps) {
    if (steps == kAutoSteps) {
        const double du = std::fabs(alpha.to_u(t) - alpha.to_u(s));
        return std::max(kMinSteps, static_cast<int>(std::ceil(512.0 * du)));
    }
    if (steps < kMinSteps) {
        throw InvalidArgument("steps must be >= " + std::to_string(kMinSteps));
    }
    return steps;
}

std::vector<double> cauchy_state(const LinearOperator& op, double s, double t, int steps) {
    check_point(s, "s");
    check_point(t, "t");
    const Alpha a = op.alpha();
    const int n_steps = resolve_steps(a, s, t, steps);
    const int n = op.order();
    if (op.coefficient_free()) return closed_state(n, a.to_u(t) - a.to_u(s));
    State z(n, 0.0);
    z[n - 1] = 1.0;
    return rk4(op, std::move(z), a.to_u(s), a.to_u(t), n_steps);
}

double cauchy_function(const LinearOperator& op, double s, double t, int steps) {
    return cauchy_state(op, s, t, steps)[0];
}

double solve_voc(const IvpSpec& spec, double t, int steps, const QuadratureConfig& cfg) {
    spec.validate();
    check_point(t, "t");
    for (double v : spec.initial) {
        if (v != 0.0) throw InvalidArgument("solve_voc needs zero initial values; use solve_full");
    }
    if (is_zero_fn(spec.forcing)) return 0.0;
    const Alpha a = spec.op.alpha();
    const int n_steps = resolve_steps(a, spec.s, t, steps);
    const auto integrand = ConformableFn::from_function([&](double tau) {
        const double f = spec.forcing(tau);
        if (f == 0.0) return 0.0;
        return cauchy_state(spec.op, tau, t, n_steps)[0] * f;
    });
    return frac_integral(integrand, a, spec.s, t, cfg);
}

double solve_full(const IvpSpec& spec, double t, int steps, const QuadratureConfig& cfg) {
    spec.validate();
    check_point(t, "t");
    const Alpha a = spec.op.alpha();
    const int n = spec.op.order();
    const int n_steps = resolve_steps(a, spec.s, t, steps);

    double homogeneous = 0.0;
    if (spec.op.coefficient_free()) {
        const double gap = a.to_u(t) - a.to_u(spec.s);
        for (int k = 0; k < n; ++k) {
            homogeneous += spec.initial[k] * (k == 0 ? 1.0 : std::pow(gap, k)) / factorial(k);
        }
    } else {
        // Column j: the solution with D^i y(s) = delta_ij.
        std::vector<std::vector<double>> fundamental(n, std::vector<double>(n));
        for (int j = 0; j < n; ++j) {
            State z(n, 0.0);
            z[j] = 1.0;
            const State end = rk4(spec.op, std::move(z), a.to_u(spec.s), a.to_u(t), n_steps);
            for (int i = 0; i < n; ++i) fundamental[i][j] = end[i];
        }
        const double wronskian = determinant(fundamental);
        if (!std::isfinite(wronskian) || std::fabs(wronskian) < 1e-300) {
            throw NumericError("fundamental system is singular at t (Wronskian " +
                               std::to_string(wronskian) + ")");
        }
        for (int j = 0; j < n; ++j) homogeneous += spec.initial[j] * fundamental[0][j];
    }

    IvpSpec forced{spec.op, spec.forcing, spec.s, std::vector<double>(n, 0.0)};
    return homogeneous + solve_voc(forced, t, n_steps, cfg);
}

}  // namespace confrac
