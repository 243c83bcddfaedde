#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "kieval/ingest.hpp"
#include "kieval/metrics.hpp"
#include "kieval/model.hpp"
#include "kieval/rpa.hpp"

namespace kieval {

inline constexpr const char* kToolVersion = "0.1.0";

struct InputDigest {
    std::string path;
    std::string digest;  // fnv1a-64 over file bytes, hex
};

struct RunManifest {
    std::string version = kToolVersion;
    EvalConfig config;
    std::vector<InputDigest> inputs;
    std::optional<std::string> timestamp;  // RFC 3339 UTC; suppressible
    std::int64_t warnings = 0;
};

enum class OutputFormat { Json, Csv, Table };

std::string fnv1a64_hex(std::string_view bytes);
std::string fnv1a64_file_hex(const std::string& path);
std::string utc_timestamp_now();

// Evaluates all pairs with the given worker count. Output is independent of
// the degree of parallelism; results stay in pair order.
std::vector<DocResult> evaluate_pairs(
    const std::vector<std::pair<DocumentExtraction, DocumentExtraction>>& pairs,
    int jobs = 1);

// Deterministic renderings: fixed key order, full-precision numbers in JSON,
// 4 decimal places in the human-readable forms.
std::string render_report_json(const MetricReport& report, const RunManifest& manifest);
std::string render_report_csv(const MetricReport& report, bool per_type = false);
std::string render_report_table(const MetricReport& report, bool per_type = false);

std::string render_sweep_csv(const std::vector<SweepPoint>& points);

// Knee of the trade-off: the highest-tau grid point whose automation rate
// still clears the floor.
std::optional<SweepPoint> knee_point(const std::vector<SweepPoint>& points,
                                     double auto_rate_floor);
std::string render_sweep_summary_json(const std::vector<SweepPoint>& points,
                                      const std::optional<SweepPoint>& knee,
                                      double auto_rate_floor,
                                      const RunManifest& manifest);

}  // namespace kieval
