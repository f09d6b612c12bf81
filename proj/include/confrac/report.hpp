#pragma once

#include "confrac/inequalities.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace confrac {

enum class Format { Text, Json, Csv };

/// Value rounded to 12 significant digits and printed in shortest form ("%.12g").
std::string format_number(double v);

/// One report. Text ends in a newline; JSON is a single line with sorted keys; CSV is
/// one data row (no header), newline terminated.
std::string emit_report(const InequalityReport& r, Format format);

/// Several reports: text blocks separated by blank lines, a JSON array, or header + rows.
std::string emit_reports(const std::vector<InequalityReport>& reports, Format format);

/// The fixed CSV header line (newline terminated).
std::string_view csv_header();

}  // namespace confrac
