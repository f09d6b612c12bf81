#include "confrac/cli.hpp"

#include "confrac/errors.hpp"
#include "confrac/inequalities.hpp"
#include "confrac/ivp.hpp"
#include "confrac/report.hpp"
#include "confrac/taylor.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <optional>
#include <ostream>
#include <sstream>

namespace confrac::cli {

namespace {

// Flag combinations CLI11 cannot express; exit code 3.
using UsageError = InvalidArgument;

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    std::istringstream is(s);
    while (std::getline(is, cur, sep)) parts.push_back(cur);
    if (!s.empty() && s.back() == sep) parts.emplace_back();
    return parts;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string& s, const char* what) {
    const std::string t = trim(s);
    std::size_t used = 0;
    double v = 0;
    try {
        v = std::stod(t, &used);
    } catch (const std::exception&) {
        throw UsageError(std::string("cannot parse ") + what + " '" + s + "'");
    }
    if (used != t.size() || !std::isfinite(v)) {
        throw UsageError(std::string("cannot parse ") + what + " '" + s + "'");
    }
    return v;
}

Alpha make_alpha(double a) {
    if (!(a > 0.0 && a <= 1.0)) throw UsageError("--alpha must lie in (0, 1], got " + format_number(a));
    return Alpha(a);
}

Interval make_window(double a, double b) {
    if (!(a >= 0.0 && a < b) || !std::isfinite(b)) {
        throw UsageError("window needs 0 <= a < b, got a = " + format_number(a) + ", b = " + format_number(b));
    }
    return Interval(a, b);
}

void require_nonneg(double t, const char* flag) {
    if (!(t >= 0.0) || !std::isfinite(t)) throw UsageError(std::string(flag) + " must be a point >= 0");
}

void require_order(int n, const char* flag) {
    if (n < 0) throw UsageError(std::string(flag) + " must be >= 0");
}

/// --alphas "start:stop:step" (inclusive) or "a1,a2,...".
std::vector<double> parse_alphas(const std::string& spec) {
    std::vector<double> out;
    if (spec.find(':') != std::string::npos) {
        const auto p = split(spec, ':');
        if (p.size() != 3) throw UsageError("--alphas range must be start:stop:step");
        const double lo = parse_double(p[0], "--alphas start");
        const double hi = parse_double(p[1], "--alphas stop");
        const double step = parse_double(p[2], "--alphas step");
        if (!(step > 0.0) || hi < lo) throw UsageError("--alphas needs step > 0 and stop >= start");
        const long n = static_cast<long>(std::floor((hi - lo) / step + 1e-9)) + 1;
        if (n > 100000) throw UsageError("--alphas range has too many values");
        for (long i = 0; i < n; ++i) {
            out.push_back(std::stod(format_number(lo + static_cast<double>(i) * step)));
        }
    } else {
        for (const auto& part : split(spec, ',')) out.push_back(parse_double(part, "--alphas value"));
    }
    if (out.empty()) throw UsageError("--alphas is empty");
    for (double a : out) make_alpha(a);
    return out;
}

/// --windows "a1:b1;a2:b2".
std::vector<std::pair<double, double>> parse_windows(const std::string& spec) {
    std::vector<std::pair<double, double>> out;
    for (const auto& part : split(spec, ';')) {
        const auto ab = split(part, ':');
        if (ab.size() != 2) throw UsageError("--windows entries must be a:b");
        const double a = parse_double(ab[0], "window start"), b = parse_double(ab[1], "window end");
        make_window(a, b);
        out.emplace_back(a, b);
    }
    return out;
}

// ---------------------------------------------------------------------------
// check / sweep

struct CheckFlags : CheckRequest {
    bool json = false, csv = false, text = false;
    std::string alphas, windows;
};

struct ParsedInputs {
    Theorem theorem;
    std::optional<Expr> f, g, w, F;
};

Expr parse_required(const std::optional<std::string>& text, const char* flag, Theorem th) {
    if (!text) {
        throw UsageError(std::string(theorem_id(th)) + " needs " + flag);
    }
    return parse(*text);
}

ParsedInputs parse_inputs(const CheckRequest& fl) {
    const auto th = parse_theorem(fl.ineq);
    if (!th) throw UsageError("unknown inequality '" + fl.ineq + "'");
    ParsedInputs in{*th, {}, {}, {}, {}};
    auto want = [&](std::optional<Expr>& slot, const std::optional<std::string>& text, const char* flag) {
        slot = parse_required(text, flag, *th);
    };
    require_order(fl.n, "--n");
    if (fl.grid < 8) throw UsageError("--grid must be >= 8");
    switch (*th) {
        case Theorem::Steffensen:
        case Theorem::Cebysev:
        case Theorem::Gruss:
            want(in.f, fl.f, "--f");
            want(in.g, fl.g, "--g");
            break;
        case Theorem::Sandwich:
            want(in.g, fl.g, "--g");
            break;
        case Theorem::MMBounds:
            if (!fl.m || !fl.M) throw UsageError("mm-bounds needs --m and --M");
            if (!(*fl.m < *fl.M)) throw UsageError("mm-bounds needs m < M");
            want(in.f, fl.f, "--f");
            break;
        case Theorem::Montgomery:
        case Theorem::Ostrowski:
        case Theorem::GrussMontgomery:
            if (!fl.t) throw UsageError(std::string(theorem_id(*th)) + " needs --t");
            want(in.f, fl.f, "--f");
            break;
        case Theorem::Jensen:
            in.w = parse(fl.w.value_or("1"));
            want(in.g, fl.g, "--g");
            want(in.F, fl.F, "--F");
            break;
        default:
            want(in.f, fl.f, "--f");
            break;
    }
    if (fl.m && fl.M && !(*fl.m <= *fl.M)) throw UsageError("bounds need m <= M");
    if (fl.m2 && fl.M2 && !(*fl.m2 <= *fl.M2)) throw UsageError("bounds need m2 <= M2");
    if (fl.tol && !(*fl.tol > 0.0)) throw UsageError("--tol must be > 0");
    return in;
}

CheckConfig make_config(const CheckRequest& fl) {
    CheckConfig cfg;
    cfg.grid = fl.grid;
    if (fl.tol) cfg.quad.abs_tol = cfg.quad.rel_tol = *fl.tol;
    return cfg;
}

// Bounds from flags, or the grid range of `fn` for whichever flag is missing.
BoundsPair bounds_or_estimate(std::optional<double> m, std::optional<double> M, const ConformableFn& fn,
                              const Interval& win, const char* lo_name, const char* hi_name,
                              std::vector<std::pair<std::string, double>>& notes) {
    if (m && M) return {*m, *M};
    const BoundsPair est = estimate_bounds(fn, win);
    const BoundsPair bp{m.value_or(est.m), M.value_or(est.M)};
    if (!m) notes.emplace_back(std::string(lo_name) + " (estimated)", bp.m);
    if (!M) notes.emplace_back(std::string(hi_name) + " (estimated)", bp.M);
    return bp;
}

InequalityReport run_check(const ParsedInputs& in, const CheckRequest& fl, double alpha_value, double a,
                           double b) {
    const Alpha alpha = make_alpha(alpha_value);
    const Interval win = make_window(a, b);
    if (fl.t && !win.contains(*fl.t)) throw UsageError("--t must lie in [a, b]");
    const CheckConfig cfg = make_config(fl);
    auto bind = [&](const std::optional<Expr>& e) { return ConformableFn::from_expr(*e, alpha); };
    std::vector<std::pair<std::string, double>> notes;
    InequalityReport r;
    switch (in.theorem) {
        case Theorem::Steffensen: r = steffensen(bind(in.f), bind(in.g), alpha, win, cfg); break;
        case Theorem::Sandwich: r = check_sandwich_lemma(bind(in.g), alpha, win, cfg); break;
        case Theorem::RemSteffensen: r = remainder_steffensen(bind(in.f), alpha, fl.n, win, cfg); break;
        case Theorem::HH1: r = hermite_hadamard_1(bind(in.f), alpha, win, cfg); break;
        case Theorem::MMBounds:
            r = remainder_mM_bounds(bind(in.f), alpha, fl.n, {*fl.m, *fl.M}, win, cfg);
            break;
        case Theorem::Cebysev: r = cebysev(bind(in.f), bind(in.g), alpha, win, cfg); break;
        case Theorem::RemCebysev: r = remainder_cebysev(bind(in.f), alpha, fl.n, win, cfg); break;
        case Theorem::HH2: r = hermite_hadamard_2(bind(in.f), alpha, win, cfg); break;
        case Theorem::Montgomery: r = montgomery(bind(in.f), alpha, win, *fl.t, cfg); break;
        case Theorem::Ostrowski: r = ostrowski(bind(in.f), alpha, win, *fl.t, fl.M, cfg); break;
        case Theorem::Jensen: r = jensen(bind(in.w), bind(in.g), bind(in.F), alpha, win, cfg); break;
        case Theorem::Gruss: {
            const auto f = bind(in.f), g = bind(in.g);
            const auto b1 = bounds_or_estimate(fl.m, fl.M, f, win, "m1", "M1", notes);
            const auto b2 = bounds_or_estimate(fl.m2, fl.M2, g, win, "m2", "M2", notes);
            r = gruss(f, g, alpha, win, b1, b2, cfg);
            break;
        }
        case Theorem::GrussMontgomery:
        case Theorem::HH3: {
            const auto f = bind(in.f);
            const auto bp = bounds_or_estimate(fl.m, fl.M, frac_derivative(f, alpha, 1), win, "m", "M", notes);
            r = in.theorem == Theorem::HH3 ? hermite_hadamard_3(f, alpha, win, bp, cfg)
                                           : gruss_montgomery(f, alpha, win, *fl.t, bp, cfg);
            break;
        }
    }
    r.details.insert(r.details.end(), notes.begin(), notes.end());
    return r;
}

int report_code(const std::vector<InequalityReport>& reports) {
    int code = kOk;
    for (const auto& r : reports) {
        if (!r.hypotheses_verified()) return kHypothesisFailed;
        if (!r.holds) code = kViolated;
    }
    return code;
}

Format pick_format(const CheckFlags& fl, Format fallback) {
    if (fl.json + fl.csv + fl.text > 1) throw UsageError("choose one of --json, --csv, --text");
    if (fl.json) return Format::Json;
    if (fl.csv) return Format::Csv;
    if (fl.text) return Format::Text;
    return fallback;
}

// A failed instance inside a sweep: holds = false with the error as a failed hypothesis.
InequalityReport failed_row(Theorem th, double alpha, double a, double b, const std::string& what) {
    InequalityReport r;
    r.theorem = th;
    r.alpha = alpha;
    r.a = a;
    r.b = b;
    r.hypotheses.push_back({what, false, std::nullopt, 0});
    r.holds = false;
    return r;
}

void add_check_flags(CLI::App* sub, CheckFlags& fl) {
    sub->add_option("--ineq", fl.ineq, "Inequality id")->required();
    sub->add_option("--f", fl.f, "Expression f");
    sub->add_option("--g", fl.g, "Expression g");
    sub->add_option("--w", fl.w, "Weight w (Jensen; default 1)");
    sub->add_option("--F", fl.F, "Convex outer function F, written in t (Jensen)");
    sub->add_option("--n", fl.n, "Remainder order n >= 0");
    sub->add_option("--m", fl.m, "Lower bound m (m1 for gruss)");
    sub->add_option("--M", fl.M, "Upper bound M (M1 for gruss; sup|D f| for ostrowski)");
    sub->add_option("--m2", fl.m2, "Lower bound on g (gruss)");
    sub->add_option("--M2", fl.M2, "Upper bound on g (gruss)");
    sub->add_option("--t", fl.t, "Point t in [a, b]");
    sub->add_option("--grid", fl.grid, "Hypothesis grid intervals");
    sub->add_option("--tol", fl.tol, "Quadrature tolerance (absolute and relative)");
    sub->add_flag("--json", fl.json, "JSON output");
    sub->add_flag("--csv", fl.csv, "CSV output");
    sub->add_flag("--text", fl.text, "Text output");
}

}  // namespace

InequalityReport check(const CheckRequest& req) {
    make_alpha(req.alpha);
    make_window(req.a, req.b);
    return run_check(parse_inputs(req), req, req.alpha, req.a, req.b);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Conformable fractional calculus: derivatives, integrals, Taylor expansions, "
                 "linear IVPs and integral inequalities.",
                 "confrac"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "Help for every subcommand");

    // deriv
    struct {
        std::string expr;
        double alpha = 0, at = 0;
        int order = 1;
    } d;
    auto* deriv_cmd = app.add_subcommand("deriv", "D^n_alpha f(t)");
    deriv_cmd->add_option("--expr", d.expr)->required();
    deriv_cmd->add_option("--alpha", d.alpha)->required();
    deriv_cmd->add_option("--at", d.at)->required();
    deriv_cmd->add_option("--order", d.order);

    // integrate
    struct {
        std::string expr;
        double alpha = 0, a = 0, b = 0;
        std::optional<double> tol;
    } in;
    auto* int_cmd = app.add_subcommand("integrate", "int_a^b f(t) t^(alpha-1) dt");
    int_cmd->add_option("--expr", in.expr)->required();
    int_cmd->add_option("--alpha", in.alpha)->required();
    int_cmd->add_option("--a", in.a)->required();
    int_cmd->add_option("--b", in.b)->required();
    int_cmd->add_option("--tol", in.tol);

    // taylor
    struct {
        std::string expr;
        double alpha = 0, center = 0, at = 0;
        int degree = 0;
        bool remainder = false;
    } ty;
    auto* taylor_cmd = app.add_subcommand("taylor", "Fractional Taylor polynomial and remainder");
    taylor_cmd->add_option("--expr", ty.expr)->required();
    taylor_cmd->add_option("--alpha", ty.alpha)->required();
    taylor_cmd->add_option("--center", ty.center)->required();
    taylor_cmd->add_option("--degree", ty.degree)->required();
    taylor_cmd->add_option("--at", ty.at)->required();
    taylor_cmd->add_flag("--remainder", ty.remainder, "Also print the integral-form remainder");

    // solve
    struct {
        int order = 0;
        std::optional<std::string> coeffs, init;
        std::string rhs;
        double alpha = 0, from = 0, to = 0;
        int steps = kAutoSteps;
    } sv;
    auto* solve_cmd = app.add_subcommand("solve", "Linear IVP  D^n y + sum p_i D^(n-i) y = f");
    solve_cmd->add_option("--order", sv.order)->required();
    solve_cmd->add_option("--coeffs", sv.coeffs, "p1;...;pN");
    solve_cmd->add_option("--rhs", sv.rhs)->required();
    solve_cmd->add_option("--alpha", sv.alpha)->required();
    solve_cmd->add_option("--from", sv.from)->required();
    solve_cmd->add_option("--to", sv.to)->required();
    solve_cmd->add_option("--init", sv.init, "v0,...,v(n-1)");
    solve_cmd->add_option("--steps", sv.steps, "RK4 steps (>= 16; default 512 per unit of u)");

    // ell
    struct {
        std::string g;
        double alpha = 0, a = 0, b = 0;
    } el;
    auto* ell_cmd = app.add_subcommand("ell", "Steffensen window length ell");
    ell_cmd->add_option("--g", el.g)->required();
    ell_cmd->add_option("--alpha", el.alpha)->required();
    ell_cmd->add_option("--a", el.a)->required();
    ell_cmd->add_option("--b", el.b)->required();

    CheckFlags ck;
    auto* check_cmd = app.add_subcommand("check", "Evaluate one inequality");
    add_check_flags(check_cmd, ck);
    check_cmd->add_option("--alpha", ck.alpha)->required();
    check_cmd->add_option("--a", ck.a)->required();
    check_cmd->add_option("--b", ck.b)->required();

    CheckFlags sw;
    auto* sweep_cmd = app.add_subcommand("sweep", "Evaluate one inequality over several alphas and windows");
    add_check_flags(sweep_cmd, sw);
    sweep_cmd->add_option("--alphas", sw.alphas, "start:stop:step or a1,a2,...")->required();
    sweep_cmd->add_option("--a", sw.a);
    sweep_cmd->add_option("--b", sw.b);
    sweep_cmd->add_option("--windows", sw.windows, "a1:b1;a2:b2 (default: --a/--b)");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "confrac: " << e.what() << '\n';
        return kUsage;
    }

    try {
        if (deriv_cmd->parsed()) {
            const Alpha alpha = make_alpha(d.alpha);
            require_nonneg(d.at, "--at");
            require_order(d.order, "--order");
            const auto f = ConformableFn::from_expr(parse(d.expr), alpha);
            out << format_number(frac_deriv_n(f, alpha, d.order, d.at)) << '\n';
        } else if (int_cmd->parsed()) {
            const Alpha alpha = make_alpha(in.alpha);
            const Interval win = make_window(in.a, in.b);
            QuadratureConfig q;
            if (in.tol) {
                if (!(*in.tol > 0.0)) throw UsageError("--tol must be > 0");
                q.abs_tol = q.rel_tol = *in.tol;
            }
            const auto f = ConformableFn::from_expr(parse(in.expr), alpha);
            out << format_number(frac_integral(f, alpha, win, q)) << '\n';
        } else if (taylor_cmd->parsed()) {
            const Alpha alpha = make_alpha(ty.alpha);
            require_nonneg(ty.center, "--center");
            require_nonneg(ty.at, "--at");
            require_order(ty.degree, "--degree");
            const auto f = ConformableFn::from_expr(parse(ty.expr), alpha);
            const double poly = taylor_poly(f, alpha, ty.degree, ty.center, ty.at);
            out << "poly = " << format_number(poly) << '\n';
            if (ty.remainder) {
                out << "remainder = " << format_number(taylor_remainder(f, alpha, ty.degree, ty.center, ty.at))
                    << '\n';
                out << "value = " << format_number(f(ty.at)) << '\n';
            }
        } else if (solve_cmd->parsed()) {
            if (sv.order < 1) throw UsageError("--order must be >= 1");
            const Alpha alpha = make_alpha(sv.alpha);
            require_nonneg(sv.from, "--from");
            require_nonneg(sv.to, "--to");
            if (sv.steps != kAutoSteps && sv.steps < kMinSteps) throw UsageError("--steps must be >= 16");
            std::vector<ConformableFn> p;
            if (sv.coeffs) {
                for (const auto& part : split(*sv.coeffs, ';')) {
                    p.push_back(ConformableFn::from_expr(parse(part), alpha));
                }
                if (static_cast<int>(p.size()) != sv.order) {
                    throw UsageError("--coeffs needs exactly " + std::to_string(sv.order) + " entries");
                }
            }
            std::vector<double> init(sv.order, 0.0);
            if (sv.init) {
                const auto parts = split(*sv.init, ',');
                if (static_cast<int>(parts.size()) != sv.order) {
                    throw UsageError("--init needs exactly " + std::to_string(sv.order) + " values");
                }
                for (int i = 0; i < sv.order; ++i) init[i] = parse_double(parts[i], "--init value");
            }
            const IvpSpec spec{LinearOperator(sv.order, std::move(p), alpha),
                               ConformableFn::from_expr(parse(sv.rhs), alpha), sv.from, init};
            out << format_number(solve_full(spec, sv.to, sv.steps)) << '\n';
        } else if (ell_cmd->parsed()) {
            const Alpha alpha = make_alpha(el.alpha);
            const Interval win = make_window(el.a, el.b);
            const auto g = ConformableFn::from_expr(parse(el.g), alpha);
            out << format_number(steffensen_ell(g, alpha, win).ell) << '\n';
        } else if (check_cmd->parsed()) {
            const Format fmt = pick_format(ck, Format::Text);
            std::vector<InequalityReport> reports{check(ck)};
            // one object for JSON, header + row for CSV
            out << (fmt == Format::Csv ? emit_reports(reports, fmt) : emit_report(reports[0], fmt));
            return report_code(reports);
        } else if (sweep_cmd->parsed()) {
            const Format fmt = pick_format(sw, Format::Csv);
            const auto alphas = parse_alphas(sw.alphas);
            std::vector<std::pair<double, double>> windows;
            if (!sw.windows.empty()) {
                windows = parse_windows(sw.windows);
            } else {
                make_window(sw.a, sw.b);
                windows.emplace_back(sw.a, sw.b);
            }
            const ParsedInputs inputs = parse_inputs(sw);
            std::vector<InequalityReport> reports;
            bool numeric_failure = false;
            for (const auto& [a, b] : windows) {
                if (sw.t && !(a <= *sw.t && *sw.t <= b)) throw UsageError("--t must lie in every window");
                for (double alpha : alphas) {
                    try {
                        reports.push_back(run_check(inputs, sw, alpha, a, b));
                    } catch (const HypothesisError& e) {
                        reports.push_back(failed_row(inputs.theorem, alpha, a, b, std::string("hypothesis: ") + e.what()));
                    } catch (const NumericError& e) {
                        numeric_failure = true;
                        reports.push_back(failed_row(inputs.theorem, alpha, a, b, std::string("numeric: ") + e.what()));
                    } catch (const DomainError& e) {
                        numeric_failure = true;
                        reports.push_back(failed_row(inputs.theorem, alpha, a, b, std::string("domain: ") + e.what()));
                    }
                }
            }
            out << emit_reports(reports, fmt);
            return numeric_failure ? kNumeric : report_code(reports);
        }
    } catch (const ParseError& e) {
        err << "confrac: " << e.what() << '\n';
        return kUsage;
    } catch (const InvalidArgument& e) {
        err << "confrac: " << e.what() << '\n';
        return kUsage;
    } catch (const HypothesisError& e) {
        err << "confrac: hypothesis failed: " << e.what() << '\n';
        return kHypothesisFailed;
    } catch (const NumericError& e) {
        err << "confrac: numeric failure: " << e.what() << '\n';
        return kNumeric;
    } catch (const DomainError& e) {
        err << "confrac: domain error: " << e.what() << '\n';
        return kNumeric;
    }
    return kOk;
}

}  // namespace confrac::cli
