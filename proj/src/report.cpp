#include "quivar/report.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <sstream>

#include <json.hpp>

namespace quivar {

std::string_view tool_version() { return "0.1.0"; }

SummaryCounts summarize(const std::vector<ClaimResult>& results) {
    SummaryCounts s;
    for (const auto& r : results) {
        switch (r.status) {
            case ClaimStatus::pass: ++s.pass; break;
            case ClaimStatus::fail: ++s.fail; break;
            case ClaimStatus::discrepancy: ++s.discrepancy; break;
        }
    }
    return s;
}

std::string iso8601_utc_now() {
    const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::string render_report(const Catalog& cat, std::vector<ClaimResult> results, const RunOptions& run,
                          const ReportOptions& opts) {
    using json = nlohmann::ordered_json;
    std::sort(results.begin(), results.end(), [](const auto& a, const auto& b) { return a.id < b.id; });

    json out;
    out["schema_version"] = kReportSchemaVersion;
    out["timestamp"] = opts.timestamp.value_or(iso8601_utc_now());
    out["tool_version"] = tool_version();
    // Thread count is left out on purpose: it must not change the bytes.
    out["options"] = {{"series_order", run.series_order},
                      {"tol", run.tol},
                      {"cap", std::to_string(run.cap)},
                      {"seed", std::to_string(run.seed)},
                      {"catalog_schema_version", cat.schema_version()}};
    json rs = json::array();
    for (const auto& r : results) {
        const PaperClaim& c = cat.claim(r.id);
        json j;
        j["id"] = r.id;
        j["status"] = to_string(r.status);
        j["expected_status"] = to_string(c.expected_status);
        j["check"] = c.check;
        j["description"] = c.description;
        j["paper_anchor"] = c.anchor;
        j["expected"] = r.expected;
        j["computed"] = r.computed;
        j["details"] = json::object();
        for (const auto& [k, v] : r.details) j["details"][k] = v;
        if (opts.timings) j["runtime_ms"] = r.runtime_ms;
        rs.push_back(std::move(j));
    }
    out["results"] = std::move(rs);
    const SummaryCounts s = summarize(results);
    out["summary"] = {{"pass", s.pass}, {"fail", s.fail}, {"discrepancy", s.discrepancy}, {"total", s.total()}};
    return out.dump(2) + "\n";
}

std::string render_table(const std::vector<ClaimResult>& results, bool timings) {
    std::size_t w = 5;
    for (const auto& r : results) w = std::max(w, r.id.size());
    auto clip = [](const std::string& s, std::size_t n) { return s.size() <= n ? s : s.substr(0, n - 3) + "..."; };
    std::ostringstream os;
    char buf[512];
    std::snprintf(buf, sizeof buf, "%-*s  %-11s  %s\n", int(w), "claim", "status", "computed");
    os << buf;
    for (const auto& r : results) {
        std::string tail = clip(r.computed, 60);
        if (timings) {
            char t[32];
            std::snprintf(t, sizeof t, "  [%.1f ms]", r.runtime_ms);
            tail += t;
        }
        std::snprintf(buf, sizeof buf, "%-*s  %-11s  %s\n", int(w), r.id.c_str(), std::string(to_string(r.status)).c_str(),
                      tail.c_str());
        os << buf;
    }
    const SummaryCounts s = summarize(results);
    os << s.pass << " pass, " << s.fail << " fail, " << s.discrepancy << " discrepancy\n";
    return os.str();
}

}  // namespace quivar
