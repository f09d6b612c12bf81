#pragma once

#include "confrac/inequalities.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace confrac::cli {

/// Everything `check` needs, in command-line terms: expressions as text (alpha symbolic),
/// optional bounds and point. Flags that a theorem does not use are ignored.
struct CheckRequest {
    std::string ineq;
    std::optional<std::string> f, g, w, F;
    int n = 0;
    std::optional<double> m, M, m2, M2, t;
    double alpha = 1.0;
    double a = 0.0;
    double b = 1.0;
    int grid = 256;
    std::optional<double> tol;
};

/// Validates and evaluates one inequality. Bad requests throw InvalidArgument (or
/// ParseError); gruss, gruss-montgomery and hh3 estimate missing bounds on a grid.
InequalityReport check(const CheckRequest& req);

enum ExitCode : int {
    kOk = 0,
    kViolated = 1,
    kHypothesisFailed = 2,
    kUsage = 3,
    kNumeric = 4,
};

/// Runs the command line `args` (program name excluded). Results go to `out`; a single-line
/// diagnostic goes to `err` on failure. Returns one of ExitCode.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace confrac::cli
