#pragma once

#include <iosfwd>
#include <string>
#include <string_view>

#include "voodb/engine/experiment.hpp"

namespace voodb::runner {

enum class ReportFormat { Csv, Text };

// Throws ConfigError for anything but "csv" or "text".
ReportFormat parse_format(std::string_view text);

// CSV: header `metric,mean,half_width_95,n`, one row per metric, then the
// clustering rows when clustering was on. Half-widths are left empty when
// fewer than two replications exist.
void write_report(std::ostream& out, const engine::ExperimentReport& report, ReportFormat format);
std::string format_report(const engine::ExperimentReport& report, ReportFormat format);

}  // namespace voodb::runner
