#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "semicro/record_distance.hpp"

namespace semicro {

struct ClusteringConfig {
  std::uint32_t k = 5;         // minimum published cluster size
  bool suppress_small = true;  // withhold clusters smaller than k
};

struct Cluster {
  std::uint32_t cluster_id = 0;
  std::vector<RecordId> members;  // sorted, disjoint across clusters
  RecordId centroid_id = 0;       // always one of members
  std::optional<std::pair<RecordId, RecordId>> seed_pair;  // none for the leftover cluster
  bool suppressed = false;
};

/// One loop turn of the adaptive clustering: the pool centroid, the two
/// seed pairs, and where every pool pair went. seed_of uses 0 for the
/// first-built (lower-delta) seed, 1 for the second, -1 for pairs that
/// stayed in the pool.
struct IterationTrace {
  std::uint32_t iteration = 0;
  double mean_delta = 0.0;
  std::pair<RecordId, RecordId> centroid_pair;
  std::pair<RecordId, RecordId> far_pair;
  std::pair<RecordId, RecordId> farthest_pair;
  bool single_seed = false;
  std::vector<std::pair<std::pair<RecordId, RecordId>, int>> assignments;
};

struct ClusteringResult {
  std::vector<Cluster> clusters;
  // Never-published ids, sorted: members of suppressed clusters plus
  // records whose every pair died with an already clustered partner.
  std::vector<RecordId> suppressed_records;
  std::vector<IterationTrace> trace;

  /// Deterministic text rendering of the full run, for debugging and for
  /// byte-identical rerun checks.
  std::string trace_text() const;
};

/// Adaptive-size MDAV over pair distances. Each iteration picks the pair
/// farthest from the pool mean and the pair farthest from that one, grows a
/// cluster around each seed from the pool pairs whose delta lies strictly
/// closer to that seed than to the pool mean (nearer seed wins, ties to the
/// lower-delta seed, first-built cluster claims contested records), then
/// drops every pair touching a clustered record. Remaining pairs after the
/// loop form one leftover cluster. Fully deterministic.
ClusteringResult adaptive_mdav(std::span<const PairDistance> pairs, const ClusteringConfig& cfg);

/// Centroid of a cluster: the member occurring most often across the
/// cluster's own pairs; ties prefer the member seen in the lowest-delta
/// pair, then the lowest record id.
RecordId cluster_centroid(std::span<const RecordId> members,
                          std::span<const PairDistance> clustered_pairs);

}  // namespace semicro
