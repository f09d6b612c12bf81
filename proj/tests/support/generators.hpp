#pragma once

// Random expression generators shared by the unit and acceptance suites.

#include "confrac/expr.hpp"

#include <array>
#include <cmath>
#include <random>

namespace confrac::testing {

using Rng = std::mt19937_64;

inline double uniform(Rng& rng, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline int uniform_int(Rng& rng, int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
}

/// Any tree the parser can produce: nonnegative literals, every node kind.
inline Expr random_parseable(Rng& rng, int depth) {
    constexpr std::array<Func, 6> funcs{Func::Sin, Func::Cos, Func::Exp,
                                        Func::Ln,  Func::Sqrt, Func::Abs};
    constexpr std::array<NodeKind, 5> ops{NodeKind::Add, NodeKind::Sub, NodeKind::Mul,
                                          NodeKind::Div, NodeKind::Pow};
    const int choice = depth <= 0 ? uniform_int(rng, 0, 4) : uniform_int(rng, 0, 8);
    switch (choice) {
        case 0: {
            // Mix short decimals with arbitrary doubles to exercise shortest round-trip printing.
            if (uniform_int(rng, 0, 1) == 0) return Expr::number(uniform_int(rng, 0, 20) * 0.25);
            return Expr::number(std::ldexp(uniform(rng, 0.5, 1.0), uniform_int(rng, -30, 30)));
        }
        case 1: return Expr::variable();
        case 2: return Expr::alpha();
        case 3: return Expr::constant(NamedConstant::Pi);
        case 4: return Expr::constant(NamedConstant::E);
        case 5: return Expr::neg(random_parseable(rng, depth - 1));
        case 6:
            return Expr::call(funcs[uniform_int(rng, 0, 5)], random_parseable(rng, depth - 1));
        default:
            return Expr::binary(ops[uniform_int(rng, 0, 4)], random_parseable(rng, depth - 1),
                                random_parseable(rng, depth - 1));
    }
}

/// Expression positive and smooth for t in [0.5, 3] and alpha in (0, 1].
inline Expr random_positive(Rng& rng, int depth);

/// Expression with values in [-1, 1]-ish magnitude, smooth for t in [0.5, 3].
inline Expr random_bounded(Rng& rng, int depth) {
    if (depth <= 0) {
        switch (uniform_int(rng, 0, 2)) {
            case 0: return Expr::call(Func::Sin, Expr::variable());
            case 1: return Expr::call(Func::Cos, Expr::variable());
            default: return Expr::number(uniform(rng, -1.0, 1.0));
        }
    }
    const Func f = uniform_int(rng, 0, 1) == 0 ? Func::Sin : Func::Cos;
    return Expr::call(f, random_positive(rng, depth - 1));
}

inline Expr random_positive(Rng& rng, int depth) {
    if (depth <= 0) {
        switch (uniform_int(rng, 0, 2)) {
            case 0: return Expr::variable();
            case 1: return Expr::number(uniform(rng, 0.5, 2.0));
            default: return Expr::alpha();
        }
    }
    switch (uniform_int(rng, 0, 6)) {
        case 0:
            return Expr::binary(NodeKind::Add, random_positive(rng, depth - 1),
                                random_positive(rng, depth - 1));
        case 1:
            return Expr::binary(NodeKind::Mul, random_positive(rng, depth - 1),
                                random_positive(rng, depth - 1));
        case 2:
            return Expr::binary(NodeKind::Div, random_positive(rng, depth - 1),
                                random_positive(rng, depth - 1));
        case 3: return Expr::call(Func::Exp, random_bounded(rng, depth - 1));
        case 4: return Expr::call(Func::Sqrt, random_positive(rng, depth - 1));
        case 5:
            return Expr::binary(NodeKind::Pow, random_positive(rng, depth - 1),
                                Expr::number(uniform_int(rng, -4, 4) * 0.5));
        default:
            return Expr::binary(NodeKind::Add, Expr::number(2.0),
                                random_bounded(rng, depth - 1));
    }
}

/// Smooth on [0.5, 3]: sums, differences and products of positive and bounded pieces,
/// plus logarithms of positive pieces.
inline Expr random_smooth(Rng& rng, int depth) {
    switch (uniform_int(rng, 0, 4)) {
        case 0: return random_positive(rng, depth);
        case 1: return random_bounded(rng, depth);
        case 2: return Expr::call(Func::Ln, random_positive(rng, depth));
        case 3:
            return Expr::binary(NodeKind::Sub, random_positive(rng, depth - 1),
                                random_bounded(rng, depth - 1));
        default:
            return Expr::binary(NodeKind::Mul, random_bounded(rng, depth - 1),
                                random_positive(rng, depth - 1));
    }
}

/// Central finite difference with step h = 1e-5 * max(1, |t|).
inline double central_fd(const Expr& e, double t, double alpha) {
    const double h = 1e-5 * std::max(1.0, std::fabs(t));
    return (eval(e, {t + h, alpha}) - eval(e, {t - h, alpha})) / (2.0 * h);
}

}  // namespace confrac::testing
