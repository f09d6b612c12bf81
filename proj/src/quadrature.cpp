#include "confrac/quadrature.hpp"

#include "confrac/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <string>
#include <vector>

namespace confrac {

void QuadratureConfig::validate() const {
    if (!(abs_tol > 0.0) || !(rel_tol > 0.0)) {
        throw InvalidArgument("quadrature tolerances must be positive");
    }
    if (max_subdivisions < 1) throw InvalidArgument("max_subdivisions must be at least 1");
}

namespace {

// 21-point Kronrod abscissae; odd indices carry the embedded 10-point Gauss rule.
constexpr std::array<double, 11> kXgk = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.000000000000000000000000000000000,
};

constexpr std::array<double, 11> kWgk = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077208041768838, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821,
};

constexpr std::array<double, 5> kWg = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338,
};

constexpr double kEps = std::numeric_limits<double>::epsilon();

struct Panel {
    double lo = 0.0;
    double hi = 0.0;
    double value = 0.0;
    double error = 0.0;
    bool at_floor = false;

    bool operator<(const Panel& other) const { return error < other.error; }
};

double sample(const std::function<double(double)>& g, double x) {
    const double y = g(x);
    if (!std::isfinite(y)) {
        throw NumericError("non-finite integrand sample at " + std::to_string(x));
    }
    return y;
}

Panel gauss_kronrod(const std::function<double(double)>& g, double lo, double hi) {
    const double center = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    const double fc = sample(g, center);
    double kronrod = fc * kWgk[10];
    double gauss = 0.0;
    double abs_sum = std::fabs(kronrod);
    std::array<double, 10> f1{};
    std::array<double, 10> f2{};
    for (std::size_t j = 0; j < 10; ++j) {
        const double dx = half * kXgk[j];
        f1[j] = sample(g, center - dx);
        f2[j] = sample(g, center + dx);
        const double pair = f1[j] + f2[j];
        kronrod += kWgk[j] * pair;
        abs_sum += kWgk[j] * (std::fabs(f1[j]) + std::fabs(f2[j]));
        if (j % 2 == 1) gauss += kWg[j / 2] * pair;
    }
    const double mean = kronrod * 0.5;
    double asc = kWgk[10] * std::fabs(fc - mean);
    for (std::size_t j = 0; j < 10; ++j) {
        asc += kWgk[j] * (std::fabs(f1[j] - mean) + std::fabs(f2[j] - mean));
    }

    Panel p;
    p.lo = lo;
    p.hi = hi;
    p.value = kronrod * half;
    const double resabs = abs_sum * std::fabs(half);
    const double resasc = asc * std::fabs(half);
    double err = std::fabs((kronrod - gauss) * half);
    if (resasc != 0.0 && err != 0.0) {
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    }
    const double floor = 50.0 * kEps * resabs;
    if (err <= floor) {
        err = floor;
        p.at_floor = true;
    }
    p.error = err;
    return p;
}

}  // namespace

QuadratureResult integrate(const std::function<double(double)>& g, double lo, double hi,
                           const QuadratureConfig& cfg) {
    cfg.validate();
    if (!std::isfinite(lo) || !std::isfinite(hi)) {
        throw InvalidArgument("integration limits must be finite");
    }
    QuadratureResult result;
    if (lo == hi) return result;
    if (hi < lo) {
        result = integrate(g, hi, lo, cfg);
        result.value = -result.value;
        return result;
    }

    std::priority_queue<Panel> panels;
    Panel first = gauss_kronrod(g, lo, hi);
    double total = first.value;
    double total_error = first.error;
    panels.push(first);
    result.evaluations = 21;

    for (;;) {
        const double target = cfg.abs_tol + cfg.rel_tol * std::fabs(total);
        if (total_error <= target) break;
        const Panel worst = panels.top();
        if (worst.at_floor) break;  // every remaining panel is limited by round-off
        if (result.subdivisions >= cfg.max_subdivisions) {
            throw NumericError("quadrature tolerance not met within " +
                               std::to_string(cfg.max_subdivisions) + " subdivisions (error " +
                               std::to_string(total_error) + ")");
        }
        const double mid = 0.5 * (worst.lo + worst.hi);
        if (!(worst.lo < mid && mid < worst.hi)) break;  // panel cannot be split further
        panels.pop();
        const Panel left = gauss_kronrod(g, worst.lo, mid);
        const Panel right = gauss_kronrod(g, mid, worst.hi);
        total += left.value + right.value - worst.value;
        total_error += left.error + right.error - worst.error;
        panels.push(left);
        panels.push(right);
        result.evaluations += 42;
        ++result.subdivisions;
    }

    // Re-sum to shed the drift of the running updates.
    double value = 0.0;
    double error = 0.0;
    while (!panels.empty()) {
        value += panels.top().value;
        error += panels.top().error;
        panels.pop();
    }
    result.value = value;
    result.error = error;
    return result;
}

}  // namespace confrac
