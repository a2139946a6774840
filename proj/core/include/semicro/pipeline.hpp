#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

#include "semicro/metrics.hpp"
#include "semicro/oracle.hpp"

namespace semicro {

inline constexpr std::string_view kToolVersion = "0.1.0";

// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitIo = 1;      // unreadable input, unwritable output, parse failure
inline constexpr int kExitConfig = 2;  // invalid flag values
inline constexpr int kExitEmpty = 3;   // nothing admitted, nothing paired, or nothing published

struct PipelineConfig {
  std::filesystem::path input;
  LogFormat format = LogFormat::plain;
  std::filesystem::path taxonomy;
  std::optional<std::filesystem::path> stopwords;  // built-in list when absent
  std::uint32_t k = 5;
  double threshold = kDefaultSimThreshold;
  bool suppress_small = true;
  std::filesystem::path out_dir;
  unsigned threads = 1;
};

/// Full pipeline: ingest, dedup, pair matching, distances, adaptive
/// clustering, redaction, metrics. Writes clusters.json, anonymized.tsv,
/// metrics.csv and summary.json into out_dir. Diagnostics and warnings go
/// to diag as single lines.
int cmd_run(const PipelineConfig& cfg, std::ostream& diag);

/// Admitted records as TSV on out: record_id, user_id, space-joined
/// attribute surfaces.
int cmd_ingest(const PipelineConfig& cfg, std::ostream& out, std::ostream& diag);

/// Pair distances as CSV on out.
int cmd_distance(const PipelineConfig& cfg, std::ostream& out, std::ostream& diag);

/// Stops after clustering; writes clusters.json into out_dir.
int cmd_cluster(const PipelineConfig& cfg, std::ostream& diag);

/// Recomputes the metrics for a prior run: reads clusters.json from
/// out_dir, re-derives records and redactions from the original inputs,
/// rewrites metrics.csv and prints the metric totals as JSON on out.
int cmd_metrics(const PipelineConfig& cfg, std::ostream& out, std::ostream& diag);

/// Hidden debugging aid: exhaustive optimal-SSE baseline next to the
/// adaptive result, as JSON on out. Refuses more than oracle::kMaxRecords
/// admitted records.
int cmd_oracle(const PipelineConfig& cfg, std::ostream& out, std::ostream& diag);

/// Numeric rendering used in every artifact file: shortest of 6 significant
/// digits.
std::string format_g6(double value);
double round_g6(double value);

}  // namespace semicro
