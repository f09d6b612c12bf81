#pragma once

#include <cstddef>
#include <functional>

namespace confrac {

enum class QuadratureMode {
    /// Substitute u = t^alpha/alpha; the weight t^(alpha-1) disappears exactly.
    Transformed,
    /// Integrate f(t) t^(alpha-1) in t. Falls back to Transformed when the window
    /// touches t = 0 with alpha < 1.
    Direct,
};

struct QuadratureConfig {
    double abs_tol = 1e-10;
    double rel_tol = 1e-10;
    std::size_t max_subdivisions = 2000;
    QuadratureMode mode = QuadratureMode::Transformed;

    /// Throws InvalidArgument unless both tolerances are positive and max_subdivisions >= 1.
    void validate() const;
};

struct QuadratureResult {
    double value = 0.0;
    double error = 0.0;
    std::size_t subdivisions = 0;
    std::size_t evaluations = 0;
};

/// Globally adaptive bisection with a 21-point Gauss-Kronrod rule per panel. Stops when
/// the summed error estimate is at most abs_tol + rel_tol*|value| or when every panel is
/// at its round-off floor. Orientation-signed: swapping lo and hi negates the result.
/// Throws NumericError on a non-finite sample or when max_subdivisions is exhausted.
QuadratureResult integrate(const std::function<double(double)>& g, double lo, double hi,
                           const QuadratureConfig& cfg);

}  // namespace confrac
