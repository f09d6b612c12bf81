#include "confrac/inequalities.hpp"

#include "confrac/errors.hpp"
#include "confrac/taylor.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

namespace confrac {

namespace {

constexpr std::array<std::pair<Theorem, std::string_view>, 14> kIds{{
    {Theorem::Steffensen, "steffensen"},
    {Theorem::Sandwich, "sandwich"},
    {Theorem::RemSteffensen, "rem-steffensen"},
    {Theorem::HH1, "hh1"},
    {Theorem::MMBounds, "mm-bounds"},
    {Theorem::Cebysev, "cebysev"},
    {Theorem::RemCebysev, "rem-cebysev"},
    {Theorem::HH2, "hh2"},
    {Theorem::Montgomery, "montgomery"},
    {Theorem::Ostrowski, "ostrowski"},
    {Theorem::Jensen, "jensen"},
    {Theorem::Gruss, "gruss"},
    {Theorem::GrussMontgomery, "gruss-montgomery"},
    {Theorem::HH3, "hh3"},
}};

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(12);
    os << v;
    return os.str();
}

InequalityReport start(Theorem th, Alpha alpha, const Interval& win) {
    InequalityReport r;
    r.theorem = th;
    r.alpha = alpha.value();
    r.a = win.a();
    r.b = win.b();
    return r;
}

HypothesisCheck make_check(std::string name, const Verification& v, int grid) {
    return {std::move(name), v.verified, v.witness, grid};
}

void add(InequalityReport& r, std::string name, const ConformableFn& f, const Interval& win,
         Property p, int grid, BoundsPair bounds = {}) {
    r.hypotheses.push_back(make_check(std::move(name), verify_hypothesis(f, win, p, grid, bounds), grid));
}

ConformableFn deriv(const ConformableFn& f, Alpha alpha, int k) {
    return k == 0 ? f : frac_derivative(f, alpha, k);
}

double weighted_average(const ConformableFn& f, Alpha alpha, const Interval& win,
                        const QuadratureConfig& cfg) {
    return frac_integral(f, alpha, win, cfg) / frac_measure(alpha, win.a(), win.b());
}

// (b^alpha - a^alpha) / alpha
double span_u(Alpha alpha, const Interval& win) { return frac_measure(alpha, win.a(), win.b()); }

double factorial(int n) { return std::tgamma(n + 1.0); }

void check_order(int n) {
    if (n < 0) throw InvalidArgument("order n must be >= 0");
}

void check_point_in(const Interval& win, double t) {
    if (!win.contains(t)) throw InvalidArgument("t must lie in [a, b]");
}

void check_bounds(BoundsPair bp, bool strict) {
    if (!std::isfinite(bp.m) || !std::isfinite(bp.M)) throw InvalidArgument("bounds must be finite");
    if (strict ? !(bp.m < bp.M) : !(bp.m <= bp.M)) {
        throw InvalidArgument(strict ? "bounds need m < M" : "bounds need m <= M");
    }
}

ConformableFn product(const ConformableFn& f, const ConformableFn& g) {
    return ConformableFn::from_function([f, g](double t) { return f(t) * g(t); });
}

enum class Monotone { Constant, Increasing, Decreasing, Neither };

Monotone classify(const ConformableFn& f, const Interval& win, int grid) {
    const bool inc = verify_hypothesis(f, win, Property::Increasing, grid).verified;
    const bool dec = verify_hypothesis(f, win, Property::Decreasing, grid).verified;
    if (inc && dec) return Monotone::Constant;
    if (inc) return Monotone::Increasing;
    if (dec) return Monotone::Decreasing;
    return Monotone::Neither;
}

const char* direction_name(Monotone m) {
    switch (m) {
        case Monotone::Constant: return "constant";
        case Monotone::Increasing: return "increasing";
        case Monotone::Decreasing: return "decreasing";
        case Monotone::Neither: break;
    }
    return "not monotone";
}

// Classifies and records the result; throws when f is not monotone.
Monotone require_monotone(InequalityReport& r, const std::string& what, const ConformableFn& f,
                          const Interval& win, int grid) {
    const Monotone m = classify(f, win, grid);
    if (m == Monotone::Neither) {
        throw HypothesisError(what + " is not monotone on [" + fmt(win.a()) + ", " + fmt(win.b()) +
                              "] (grid " + std::to_string(grid) + ")");
    }
    r.hypotheses.push_back({what + " monotone (" + direction_name(m) + ")", true, std::nullopt, grid});
    return m;
}

// +1 for increasing (constant included), -1 for decreasing: used as a direction detail.
double direction_value(Monotone m) { return m == Monotone::Decreasing ? -1.0 : 1.0; }

double clamp_ell(InequalityReport& r, double ell, const Interval& win) {
    const bool ok = ell >= -1e-12 * win.length() && ell <= win.length() * (1 + 1e-12);
    if (!ok) r.hypotheses.push_back({"ell in [0, b-a]", false, std::nullopt, 0});
    r.details.emplace_back("ell", ell);
    return std::clamp(ell, 0.0, win.length());
}

double raw_ell(const ConformableFn& g, Alpha alpha, const Interval& win, const QuadratureConfig& q) {
    return win.length() / span_u(alpha, win) * frac_integral(g, alpha, win, q);
}

}  // namespace

// ---------------------------------------------------------------------------

std::string_view theorem_id(Theorem th) {
    for (const auto& [t, id] : kIds) {
        if (t == th) return id;
    }
    return "unknown";
}

std::optional<Theorem> parse_theorem(std::string_view id) {
    for (const auto& [t, name] : kIds) {
        if (name == id) return t;
    }
    return std::nullopt;
}

const std::vector<Theorem>& all_theorems() {
    static const std::vector<Theorem> all = [] {
        std::vector<Theorem> v;
        for (const auto& entry : kIds) v.push_back(entry.first);
        return v;
    }();
    return all;
}

bool InequalityReport::hypotheses_verified() const noexcept {
    return std::all_of(hypotheses.begin(), hypotheses.end(),
                       [](const HypothesisCheck& h) { return h.verified; });
}

double InequalityReport::tolerance() const noexcept {
    double scale = 0.0;
    for (const auto& side : {lower, actual, upper}) {
        if (side) scale = std::max(scale, std::fabs(*side));
    }
    return 1e-9 * (1.0 + scale);
}

void finalize(InequalityReport& r) {
    const double tau = r.tolerance();
    r.slack_low.reset();
    r.slack_high.reset();
    bool ok = r.actual.has_value() && std::isfinite(*r.actual);
    if (r.lower && r.actual) {
        r.slack_low = *r.actual - *r.lower;
        ok = ok && *r.lower <= *r.actual + tau;
    }
    if (r.upper && r.actual) {
        r.slack_high = *r.upper - *r.actual;
        ok = ok && *r.actual <= *r.upper + tau;
    }
    r.holds = ok;
}

// ---------------------------------------------------------------------------

Verification verify_hypothesis(const ConformableFn& f, double lo, double hi, Property p,
                               int grid_n, BoundsPair bounds) {
    if (grid_n < 8) throw InvalidArgument("hypothesis grid needs at least 8 intervals");
    if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi)) {
        throw InvalidArgument("hypothesis grid needs a finite range lo < hi");
    }
    std::vector<double> x(grid_n + 1), y(grid_n + 1);
    double scale = 0.0;
    for (int i = 0; i <= grid_n; ++i) {
        x[i] = i == grid_n ? hi : lo + (hi - lo) * i / grid_n;
        y[i] = f(x[i]);
        if (!std::isfinite(y[i])) {
            throw NumericError("non-finite value " + fmt(y[i]) + " at grid point t = " + fmt(x[i]));
        }
        scale = std::max(scale, std::fabs(y[i]));
    }
    const double tol = 1e-10 * (1.0 + scale);
    auto fail = [](double at) { return Verification{false, at}; };

    switch (p) {
        case Property::Nonnegative:
            for (int i = 0; i <= grid_n; ++i) if (y[i] < -tol) return fail(x[i]);
            break;
        case Property::Range01:
            for (int i = 0; i <= grid_n; ++i) if (y[i] < -tol || y[i] > 1.0 + tol) return fail(x[i]);
            break;
        case Property::Bounded:
            for (int i = 0; i <= grid_n; ++i) {
                if (y[i] < bounds.m - tol || y[i] > bounds.M + tol) return fail(x[i]);
            }
            break;
        case Property::Increasing:
            for (int i = 0; i < grid_n; ++i) if (y[i + 1] < y[i] - tol) return fail(x[i]);
            break;
        case Property::Decreasing:
            for (int i = 0; i < grid_n; ++i) if (y[i + 1] > y[i] + tol) return fail(x[i]);
            break;
        case Property::Convex:
            for (int i = 1; i < grid_n; ++i) {
                if (y[i] > 0.5 * (y[i - 1] + y[i + 1]) + tol) return fail(x[i - 1]);
            }
            break;
    }
    return {};
}

Verification verify_hypothesis(const ConformableFn& f, const Interval& win, Property p, int grid_n,
                               BoundsPair bounds) {
    return verify_hypothesis(f, win.a(), win.b(), p, grid_n, bounds);
}

BoundsPair estimate_bounds(const ConformableFn& f, const Interval& win, int grid_n) {
    if (grid_n < 1) throw InvalidArgument("grid needs at least one interval");
    BoundsPair bp{INFINITY, -INFINITY};
    for (int i = 0; i <= grid_n; ++i) {
        const double t = i == grid_n ? win.b() : win.a() + win.length() * i / grid_n;
        const double v = f(t);
        if (!std::isfinite(v)) throw NumericError("non-finite value at t = " + fmt(t));
        bp.m = std::min(bp.m, v);
        bp.M = std::max(bp.M, v);
    }
    return bp;
}

// ---------------------------------------------------------------------------

SteffensenEll steffensen_ell(const ConformableFn& g, Alpha alpha, const Interval& win,
                             const CheckConfig& cfg) {
    const auto v = verify_hypothesis(g, win, Property::Range01, cfg.grid);
    if (!v.verified) {
        throw HypothesisError("g leaves [0, 1] at t = " + fmt(*v.witness));
    }
    const double ell = std::clamp(raw_ell(g, alpha, win, cfg.quad), 0.0, win.length());
    return {ell, alpha, win};
}

InequalityReport check_sandwich_lemma(const ConformableFn& g, Alpha alpha, const Interval& win,
                                      const CheckConfig& cfg) {
    auto r = start(Theorem::Sandwich, alpha, win);
    add(r, "g in [0,1]", g, win, Property::Range01, cfg.grid);
    const double ell = clamp_ell(r, raw_ell(g, alpha, win, cfg.quad), win);
    r.lower = frac_measure(alpha, win.b() - ell, win.b());
    r.actual = frac_integral(g, alpha, win, cfg.quad);
    r.upper = frac_measure(alpha, win.a(), win.a() + ell);
    finalize(r);
    return r;
}

InequalityReport steffensen(const ConformableFn& f, const ConformableFn& g, Alpha alpha,
                            const Interval& win, const CheckConfig& cfg) {
    auto r = start(Theorem::Steffensen, alpha, win);
    add(r, "f >= 0", f, win, Property::Nonnegative, cfg.grid);
    add(r, "f decreasing", f, win, Property::Decreasing, cfg.grid);
    add(r, "g in [0,1]", g, win, Property::Range01, cfg.grid);
    const double ell = clamp_ell(r, raw_ell(g, alpha, win, cfg.quad), win);
    r.lower = frac_integral(f, alpha, win.b() - ell, win.b(), cfg.quad);
    r.actual = frac_integral(product(f, g), alpha, win, cfg.quad);
    r.upper = frac_integral(f, alpha, win.a(), win.a() + ell, cfg.quad);
    finalize(r);
    return r;
}

InequalityReport remainder_steffensen(const ConformableFn& f, Alpha alpha, int n,
                                      const Interval& win, const CheckConfig& cfg) {
    check_order(n);
    auto r = start(Theorem::RemSteffensen, alpha, win);
    const auto dn = deriv(f, alpha, n);
    const auto dn1 = deriv(f, alpha, n + 1);
    add(r, "D^" + std::to_string(n + 1) + "_alpha f increasing", dn1, win, Property::Increasing, cfg.grid);
    add(r, "D^" + std::to_string(n) + "_alpha f decreasing", dn, win, Property::Decreasing, cfg.grid);
    const double ell = win.length() / (n + 2);
    r.details.emplace_back("ell", ell);
    const double a = win.a(), b = win.b();
    r.lower = dn(a + ell) - dn(a);
    r.actual = factorial(n + 1) * std::pow(1.0 / span_u(alpha, win), n + 1) *
               integrated_remainder_at_a(f, alpha, n, win, cfg.quad);
    r.upper = dn(b) - dn(b - ell);
    finalize(r);
    return r;
}

InequalityReport hermite_hadamard_1(const ConformableFn& f, Alpha alpha, const Interval& win,
                                    const CheckConfig& cfg) {
    auto r = start(Theorem::HH1, alpha, win);
    add(r, "D_alpha f increasing", deriv(f, alpha, 1), win, Property::Increasing, cfg.grid);
    add(r, "f decreasing", f, win, Property::Decreasing, cfg.grid);
    const double mid = 0.5 * (win.a() + win.b());
    const double fm = f(mid);
    r.lower = fm;
    r.actual = weighted_average(f, alpha, win, cfg.quad);
    r.upper = f(win.a()) + f(win.b()) - fm;
    finalize(r);
    return r;
}

InequalityReport remainder_mM_bounds(const ConformableFn& f, Alpha alpha, int n, BoundsPair bp,
                                     const Interval& win, const CheckConfig& cfg) {
    check_order(n);
    check_bounds(bp, true);
    auto r = start(Theorem::MMBounds, alpha, win);
    const auto dn = deriv(f, alpha, n);
    const auto dn1 = deriv(f, alpha, n + 1);
    add(r, "m <= D^" + std::to_string(n + 1) + "_alpha f <= M", dn1, win, Property::Bounded, cfg.grid, bp);
    const double a = win.a(), b = win.b();
    const double X = span_u(alpha, win);
    const double ell = clamp_ell(
        r, win.length() / (X * (bp.M - bp.m)) * (dn(b) - dn(a) - bp.m * X), win);
    const double k = factorial(n + 2);
    const double tail = frac_measure(alpha, b - ell, b);      // (b^a - (b-ell)^a)/a
    const double head = frac_measure(alpha, a + ell, b);      // (b^a - (a+ell)^a)/a
    r.lower = bp.m / k * std::pow(X, n + 2) + (bp.M - bp.m) / k * std::pow(tail, n + 2);
    r.actual = integrated_remainder_at_a(f, alpha, n, win, cfg.quad);
    r.upper = bp.M / k * std::pow(X, n + 2) + (bp.m - bp.M) / k * std::pow(head, n + 2);
    finalize(r);
    return r;
}

// ---------------------------------------------------------------------------

InequalityReport cebysev(const ConformableFn& f, const ConformableFn& g, Alpha alpha,
                         const Interval& win, const CheckConfig& cfg) {
    auto r = start(Theorem::Cebysev, alpha, win);
    const Monotone mf = require_monotone(r, "f", f, win, cfg.grid);
    const Monotone mg = require_monotone(r, "g", g, win, cfg.grid);
    const double bound = frac_integral(f, alpha, win, cfg.quad) *
                         frac_integral(g, alpha, win, cfg.quad) / span_u(alpha, win);
    r.actual = frac_integral(product(f, g), alpha, win, cfg.quad);
    if (mf == Monotone::Constant || mg == Monotone::Constant) {
        r.lower = r.upper = bound;  // equality case
    } else if (mf == mg) {
        r.lower = bound;
    } else {
        r.upper = bound;
    }
    r.details.emplace_back("direction", mf == mg || mf == Monotone::Constant || mg == Monotone::Constant ? 1.0 : -1.0);
    finalize(r);
    return r;
}

InequalityReport remainder_cebysev(const ConformableFn& f, Alpha alpha, int n, const Interval& win,
                                   const CheckConfig& cfg) {
    check_order(n);
    auto r = start(Theorem::RemCebysev, alpha, win);
    const auto dn = deriv(f, alpha, n);
    const auto dn1 = deriv(f, alpha, n + 1);
    const Monotone m = require_monotone(r, "D^" + std::to_string(n + 1) + "_alpha f", dn1, win, cfg.grid);
    const double a = win.a(), b = win.b();
    const double X = span_u(alpha, win);
    const double k = factorial(n + 2);
    const double middle = integrated_remainder_at_a(f, alpha, n, win, cfg.quad) -
                          (dn(b) - dn(a)) / k * std::pow(X, n + 1);
    const double outer = (dn1(a) - dn1(b)) / k * std::pow(X, n + 2);
    r.actual = middle;
    if (m == Monotone::Decreasing) {
        r.lower = 0.0;
        r.upper = outer;
    } else {
        r.lower = outer;
        r.upper = 0.0;
    }
    r.details.emplace_back("direction", direction_value(m));
    finalize(r);
    return r;
}

InequalityReport hermite_hadamard_2(const ConformableFn& f, Alpha alpha, const Interval& win,
                                    const CheckConfig& cfg) {
    auto r = start(Theorem::HH2, alpha, win);
    const Monotone m = require_monotone(r, "D_alpha f", deriv(f, alpha, 1), win, cfg.grid);
    const double ends = 0.5 * (f(win.a()) + f(win.b()));
    r.actual = weighted_average(f, alpha, win, cfg.quad);
    if (m != Monotone::Decreasing) r.upper = ends;
    if (m != Monotone::Increasing) r.lower = ends;
    r.details.emplace_back("direction", direction_value(m));
    finalize(r);
    return r;
}

// ---------------------------------------------------------------------------

MontgomeryKernel::MontgomeryKernel(double t, Alpha alpha, const Interval& win)
    : t_(t), alpha_(alpha), win_(win) {
    check_point_in(win, t);
}

double MontgomeryKernel::operator()(double s) const {
    if (!win_.contains(s)) throw InvalidArgument("s must lie in [a, b]");
    const double pivot = s < t_ ? win_.a() : win_.b();
    return alpha_.to_u(s) - alpha_.to_u(pivot);
}

double MontgomeryKernel::jump() const { return alpha_.to_u(win_.a()) - alpha_.to_u(win_.b()); }

namespace {

// Right side of the Montgomery identity.
double montgomery_rhs(const ConformableFn& f, Alpha alpha, const Interval& win, double t,
                      const QuadratureConfig& cfg) {
    const auto df = deriv(f, alpha, 1);
    const double ua = alpha.to_u(win.a()), ub = alpha.to_u(win.b());
    const auto left = ConformableFn::from_function(
        [&](double s) { return (alpha.to_u(s) - ua) * df(s); });
    const auto right = ConformableFn::from_function(
        [&](double s) { return (alpha.to_u(s) - ub) * df(s); });
    const double kernel = frac_integral(left, alpha, win.a(), t, cfg) +
                          frac_integral(right, alpha, t, win.b(), cfg);
    return weighted_average(f, alpha, win, cfg) + kernel / span_u(alpha, win);
}

}  // namespace

double montgomery_residual(const ConformableFn& f, Alpha alpha, const Interval& win, double t,
                           const QuadratureConfig& cfg) {
    check_point_in(win, t);
    return f(t) - montgomery_rhs(f, alpha, win, t, cfg);
}

InequalityReport montgomery(const ConformableFn& f, Alpha alpha, const Interval& win, double t,
                            const CheckConfig& cfg) {
    check_point_in(win, t);
    auto r = start(Theorem::Montgomery, alpha, win);
    r.details.emplace_back("t", t);
    const double ft = f(t);
    r.lower = ft;
    r.actual = montgomery_rhs(f, alpha, win, t, cfg.quad);
    r.upper = ft;
    finalize(r);
    return r;
}

InequalityReport ostrowski(const ConformableFn& f, Alpha alpha, const Interval& win, double t,
                           std::optional<double> M, const CheckConfig& cfg) {
    check_point_in(win, t);
    auto r = start(Theorem::Ostrowski, alpha, win);
    r.details.emplace_back("t", t);
    const auto df = deriv(f, alpha, 1);
    double sup = 0.0;
    if (M) {
        if (!(*M >= 0.0) || !std::isfinite(*M)) throw InvalidArgument("M must be finite and >= 0");
        sup = *M;
        add(r, "|D_alpha f| <= M", df, win, Property::Bounded, cfg.grid, {-sup, sup});
    } else {
        constexpr int kPoints = 1024;
        const BoundsPair range = estimate_bounds(df, win, kPoints - 1);
        sup = 1.01 * std::max(std::fabs(range.m), std::fabs(range.M));
        r.hypotheses.push_back({"M estimated as 1.01 max|D_alpha f| on 1024 points", true, std::nullopt,
                                kPoints - 1});
    }
    r.details.emplace_back("M", sup);
    const double a = alpha.value();
    const double ta = std::pow(t, a), aa = std::pow(win.a(), a), ba = std::pow(win.b(), a);
    r.actual = std::fabs(f(t) - weighted_average(f, alpha, win, cfg.quad));
    r.upper = sup / (2.0 * a * (ba - aa)) * ((ta - aa) * (ta - aa) + (ba - ta) * (ba - ta));
    finalize(r);
    return r;
}

InequalityReport jensen(const ConformableFn& w, const ConformableFn& g, const ConformableFn& F,
                        Alpha alpha, const Interval& win, const CheckConfig& cfg) {
    auto r = start(Theorem::Jensen, alpha, win);
    const double W = frac_integral(w, alpha, win, cfg.quad);
    if (!(W > 0.0)) throw HypothesisError("int w d_alpha t = " + fmt(W) + " is not positive");
    add(r, "w >= 0", w, win, Property::Nonnegative, cfg.grid);
    const BoundsPair range = estimate_bounds(g, win, cfg.grid);
    if (range.M - range.m > 1e-12 * (1.0 + std::fabs(range.M))) {
        r.hypotheses.push_back(make_check(
            "F convex on range of g",
            verify_hypothesis(F, range.m, range.M, Property::Convex, cfg.grid), cfg.grid));
    } else {
        r.hypotheses.push_back({"F convex on range of g", true, std::nullopt, 0});
    }
    const double mean = frac_integral(product(w, g), alpha, win, cfg.quad) / W;
    const auto wFg = ConformableFn::from_function([&](double t) { return w(t) * F(g(t)); });
    r.lower = F(mean);
    r.actual = frac_integral(wFg, alpha, win, cfg.quad) / W;
    finalize(r);
    return r;
}

InequalityReport gruss(const ConformableFn& f, const ConformableFn& g, Alpha alpha,
                       const Interval& win, BoundsPair bf, BoundsPair bg, const CheckConfig& cfg) {
    check_bounds(bf, false);
    check_bounds(bg, false);
    auto r = start(Theorem::Gruss, alpha, win);
    add(r, "m1 <= f <= M1", f, win, Property::Bounded, cfg.grid, bf);
    add(r, "m2 <= g <= M2", g, win, Property::Bounded, cfg.grid, bg);
    const double X = span_u(alpha, win);
    const double If = frac_integral(f, alpha, win, cfg.quad);
    const double Ig = frac_integral(g, alpha, win, cfg.quad);
    const double Ifg = frac_integral(product(f, g), alpha, win, cfg.quad);
    r.actual = std::fabs(Ifg / X - (If / X) * (Ig / X));
    r.upper = 0.25 * (bf.M - bf.m) * (bg.M - bg.m);
    finalize(r);
    return r;
}

InequalityReport gruss_montgomery(const ConformableFn& f, Alpha alpha, const Interval& win,
                                  double t, BoundsPair bp, const CheckConfig& cfg) {
    check_point_in(win, t);
    check_bounds(bp, false);
    auto r = start(Theorem::GrussMontgomery, alpha, win);
    r.details.emplace_back("t", t);
    add(r, "m <= D_alpha f <= M", deriv(f, alpha, 1), win, Property::Bounded, cfg.grid, bp);
    const double a = alpha.value();
    const double ta = std::pow(t, a), aa = std::pow(win.a(), a), ba = std::pow(win.b(), a);
    const double coef = (2.0 * ta - aa - ba) / (2.0 * (ba - aa));
    const double fa = f(win.a()), fb = f(win.b());
    r.actual = std::fabs(f(t) - weighted_average(f, alpha, win, cfg.quad) - coef * (fb - fa));
    r.upper = 0.25 * span_u(alpha, win) * (bp.M - bp.m);
    finalize(r);
    return r;
}

InequalityReport hermite_hadamard_3(const ConformableFn& f, Alpha alpha, const Interval& win,
                                    BoundsPair bp, const CheckConfig& cfg) {
    check_bounds(bp, false);
    auto r = start(Theorem::HH3, alpha, win);
    add(r, "m <= D_alpha f <= M", deriv(f, alpha, 1), win, Property::Bounded, cfg.grid, bp);
    r.actual = std::fabs(0.5 * (f(win.a()) + f(win.b())) - weighted_average(f, alpha, win, cfg.quad));
    r.upper = 0.25 * span_u(alpha, win) * (bp.M - bp.m);
    finalize(r);
    return r;
}

}  // namespace confrac
