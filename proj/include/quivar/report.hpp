#pragma once

#include <optional>
#include <string>
#include <vector>

#include "quivar/catalog.hpp"

namespace quivar {

inline constexpr int kReportSchemaVersion = 1;
std::string_view tool_version();

struct SummaryCounts {
    std::size_t pass = 0, fail = 0, discrepancy = 0;
    std::size_t total() const { return pass + fail + discrepancy; }
};
SummaryCounts summarize(const std::vector<ClaimResult>& results);

struct ReportOptions {
    bool timings = false;                  // runtime_ms is wall-clock, so off by default
    std::optional<std::string> timestamp;  // fixed value for reproducible output
};

// Current UTC time as YYYY-MM-DDTHH:MM:SSZ.
std::string iso8601_utc_now();

// JSON report; results are re-sorted by id. Ends with a newline.
std::string render_report(const Catalog& cat, std::vector<ClaimResult> results, const RunOptions& run,
                          const ReportOptions& opts = {});
// Fixed-width table for terminals.
std::string render_table(const std::vector<ClaimResult>& results, bool timings = false);

}  // namespace quivar
