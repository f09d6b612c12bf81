#include "confrac/report.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>

namespace confrac {

namespace {

using nlohmann::json;

double round12(double v) {
    if (!std::isfinite(v)) return v;
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    const double r = std::strtod(buf, nullptr);
    return r == 0.0 ? 0.0 : r;  // drop negative zero
}

json number(std::optional<double> v) {
    if (!v || !std::isfinite(*v)) return nullptr;
    return round12(*v);
}

json to_json(const InequalityReport& r) {
    json j;
    j["theorem"] = std::string(theorem_id(r.theorem));
    j["alpha"] = round12(r.alpha);
    j["a"] = round12(r.a);
    j["b"] = round12(r.b);
    json hyps = json::array();
    for (const auto& h : r.hypotheses) {
        hyps.push_back({{"name", h.name}, {"verified", h.verified}, {"witness", number(h.witness)}});
    }
    j["hypotheses"] = std::move(hyps);
    auto put = [&](const char* key, const std::optional<double>& v) {
        if (v) j[key] = number(v);
    };
    put("lower", r.lower);
    put("actual", r.actual);
    put("upper", r.upper);
    put("slack_low", r.slack_low);
    put("slack_high", r.slack_high);
    j["holds"] = r.holds;
    return j;
}

std::string side(const std::optional<double>& v) { return v ? format_number(*v) : "-"; }

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::string text(const InequalityReport& r) {
    std::ostringstream os;
    os << theorem_id(r.theorem) << "  alpha = " << format_number(r.alpha) << "  [a, b] = ["
       << format_number(r.a) << ", " << format_number(r.b) << "]\n";
    for (const auto& h : r.hypotheses) {
        os << "  hypothesis " << h.name << ": " << (h.verified ? "ok" : "FAILED");
        if (h.witness) os << " (witness t = " << format_number(*h.witness) << ")";
        if (h.grid > 0) os << " [grid " << h.grid << "]";
        os << '\n';
    }
    for (const auto& [name, value] : r.details) os << "  " << name << " = " << format_number(value) << '\n';
    os << (r.holds ? "HOLDS" : "VIOLATED") << "  lower ≤ actual ≤ upper  " << side(r.lower)
       << " ≤ " << side(r.actual) << " ≤ " << side(r.upper) << '\n';
    if (!r.hypotheses_verified()) os << "  hypotheses not verified: the bound is not guaranteed\n";
    return os.str();
}

std::string csv_row(const InequalityReport& r) {
    auto opt = [](const std::optional<double>& v) { return v ? format_number(*v) : std::string(); };
    std::string failed;
    for (const auto& h : r.hypotheses) {
        if (h.verified) continue;
        if (!failed.empty()) failed += ';';
        failed += h.name;
    }
    std::ostringstream os;
    os << theorem_id(r.theorem) << ',' << format_number(r.alpha) << ',' << format_number(r.a) << ','
       << format_number(r.b) << ',' << opt(r.lower) << ',' << opt(r.actual) << ',' << opt(r.upper) << ','
       << opt(r.slack_low) << ',' << opt(r.slack_high) << ',' << (r.holds ? "true" : "false") << ','
       << (r.hypotheses_verified() ? "true" : "false") << ',' << csv_field(failed) << '\n';
    return os.str();
}

}  // namespace

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", round12(v));
    return buf;
}

std::string_view csv_header() {
    return "theorem,alpha,a,b,lower,actual,upper,slack_low,slack_high,holds,hypotheses_verified,"
           "failed_hypotheses\n";
}

std::string emit_report(const InequalityReport& r, Format format) {
    switch (format) {
        case Format::Text: return text(r);
        case Format::Json: return to_json(r).dump() + "\n";
        case Format::Csv: return csv_row(r);
    }
    return {};
}

std::string emit_reports(const std::vector<InequalityReport>& reports, Format format) {
    std::string out;
    switch (format) {
        case Format::Text:
            for (std::size_t i = 0; i < reports.size(); ++i) {
                if (i) out += '\n';
                out += text(reports[i]);
            }
            break;
        case Format::Json: {
            json arr = json::array();
            for (const auto& r : reports) arr.push_back(to_json(r));
            out = arr.dump() + "\n";
            break;
        }
        case Format::Csv:
            out = csv_header();
            for (const auto& r : reports) out += csv_row(r);
            break;
    }
    return out;
}

}  // namespace confrac
