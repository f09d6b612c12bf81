#pragma once

#include "confrac/calculus.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace confrac {

enum class Theorem {
    Steffensen,
    Sandwich,
    RemSteffensen,
    HH1,
    MMBounds,
    Cebysev,
    RemCebysev,
    HH2,
    Montgomery,
    Ostrowski,
    Jensen,
    Gruss,
    GrussMontgomery,
    HH3,
};

/// Stable identifier, e.g. "rem-steffensen".
std::string_view theorem_id(Theorem th);
std::optional<Theorem> parse_theorem(std::string_view id);
const std::vector<Theorem>& all_theorems();

/// Sampled evidence for one hypothesis. Grid evidence is not a proof.
struct HypothesisCheck {
    std::string name;
    bool verified = true;
    std::optional<double> witness;  // first grid point that violated the property
    int grid = 0;                   // number of grid intervals (0: not grid based)
};

struct InequalityReport {
    Theorem theorem = Theorem::Steffensen;
    double alpha = 1.0;
    double a = 0.0;
    double b = 1.0;
    std::vector<HypothesisCheck> hypotheses;
    std::optional<double> lower;
    std::optional<double> actual;
    std::optional<double> upper;
    std::optional<double> slack_low;   // actual - lower
    std::optional<double> slack_high;  // upper - actual
    bool holds = false;
    /// Named intermediate quantities (ell, M, direction, ...), for human-readable output.
    std::vector<std::pair<std::string, double>> details;

    bool hypotheses_verified() const noexcept;
    /// 1e-9 * (1 + max |side|) over the sides present.
    double tolerance() const noexcept;
};

/// Fills slacks and the holds flag from lower / actual / upper.
void finalize(InequalityReport& r);

struct BoundsPair {
    double m = 0.0;
    double M = 0.0;
};

struct CheckConfig {
    QuadratureConfig quad{};
    int grid = 256;  // hypothesis grid intervals (grid + 1 samples)
};

// ---------------------------------------------------------------------------
// Hypothesis sampling

enum class Property { Nonnegative, Range01, Increasing, Decreasing, Convex, Bounded };

struct Verification {
    bool verified = true;
    std::optional<double> witness;
};

/// Samples f on the uniform grid of grid_n + 1 points over [lo, hi] (lo < hi; lo may be
/// negative for Convex). Comparisons are non-strict with tolerance 1e-10 * (1 + max|f|).
/// Monotone and convex witnesses are the left point of the first violating pair/triple.
/// `bounds` is used only by Property::Bounded. Requires grid_n >= 8.
Verification verify_hypothesis(const ConformableFn& f, double lo, double hi, Property p,
                               int grid_n = 256, BoundsPair bounds = {});
Verification verify_hypothesis(const ConformableFn& f, const Interval& win, Property p,
                               int grid_n = 256, BoundsPair bounds = {});

/// min and max of f over a uniform grid of grid_n + 1 points.
BoundsPair estimate_bounds(const ConformableFn& f, const Interval& win, int grid_n = 1024);

// ---------------------------------------------------------------------------
// Steffensen family

struct SteffensenEll {
    double ell = 0.0;
    Alpha alpha{1.0};
    Interval window{0.0, 1.0};
};

/// ell = alpha (b - a) / (b^alpha - a^alpha) * int_a^b g d_alpha t.
/// Throws HypothesisError when g leaves [0, 1] on the grid.
SteffensenEll steffensen_ell(const ConformableFn& g, Alpha alpha, const Interval& win,
                             const CheckConfig& cfg = {});

InequalityReport check_sandwich_lemma(const ConformableFn& g, Alpha alpha, const Interval& win,
                                      const CheckConfig& cfg = {});
InequalityReport steffensen(const ConformableFn& f, const ConformableFn& g, Alpha alpha,
                            const Interval& win, const CheckConfig& cfg = {});
InequalityReport remainder_steffensen(const ConformableFn& f, Alpha alpha, int n,
                                      const Interval& win, const CheckConfig& cfg = {});
InequalityReport hermite_hadamard_1(const ConformableFn& f, Alpha alpha, const Interval& win,
                                    const CheckConfig& cfg = {});
/// Throws InvalidArgument unless m < M.
InequalityReport remainder_mM_bounds(const ConformableFn& f, Alpha alpha, int n, BoundsPair bounds,
                                     const Interval& win, const CheckConfig& cfg = {});

// ---------------------------------------------------------------------------
// Cebysev family. Non-monotone input throws HypothesisError.

InequalityReport cebysev(const ConformableFn& f, const ConformableFn& g, Alpha alpha,
                         const Interval& win, const CheckConfig& cfg = {});
InequalityReport remainder_cebysev(const ConformableFn& f, Alpha alpha, int n, const Interval& win,
                                   const CheckConfig& cfg = {});
InequalityReport hermite_hadamard_2(const ConformableFn& f, Alpha alpha, const Interval& win,
                                    const CheckConfig& cfg = {});

// ---------------------------------------------------------------------------
// Montgomery / Ostrowski / Gruss

/// p(t, s) = (s^a - a^a)/a for a <= s < t and (s^a - b^a)/a for t <= s <= b.
class MontgomeryKernel {
public:
    MontgomeryKernel(double t, Alpha alpha, const Interval& win);
    double operator()(double s) const;
    /// p(t, t+) - p(t, t-) = (a^alpha - b^alpha)/alpha.
    double jump() const;
    double t() const noexcept { return t_; }

private:
    double t_;
    Alpha alpha_;
    Interval win_;
};

/// f(t) minus the right side of the Montgomery identity; the kernel integral is split at s = t.
double montgomery_residual(const ConformableFn& f, Alpha alpha, const Interval& win, double t,
                           const QuadratureConfig& cfg = {});
/// Report form: lower = upper = f(t), actual = right side of the identity.
InequalityReport montgomery(const ConformableFn& f, Alpha alpha, const Interval& win, double t,
                            const CheckConfig& cfg = {});

/// With M absent, M is 1.01 * max |D_alpha f| over a 1024-point grid and flagged as estimated.
InequalityReport ostrowski(const ConformableFn& f, Alpha alpha, const Interval& win, double t,
                           std::optional<double> M = std::nullopt, const CheckConfig& cfg = {});

/// F is a function of its argument written in the variable t. Throws HypothesisError when
/// int w d_alpha t <= 0.
InequalityReport jensen(const ConformableFn& w, const ConformableFn& g, const ConformableFn& F,
                        Alpha alpha, const Interval& win, const CheckConfig& cfg = {});

InequalityReport gruss(const ConformableFn& f, const ConformableFn& g, Alpha alpha,
                       const Interval& win, BoundsPair bounds_f, BoundsPair bounds_g,
                       const CheckConfig& cfg = {});
InequalityReport gruss_montgomery(const ConformableFn& f, Alpha alpha, const Interval& win,
                                  double t, BoundsPair bounds, const CheckConfig& cfg = {});
InequalityReport hermite_hadamard_3(const ConformableFn& f, Alpha alpha, const Interval& win,
                                    BoundsPair bounds, const CheckConfig& cfg = {});

}  // namespace confrac
