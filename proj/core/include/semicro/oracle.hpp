#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "semicro/metrics.hpp"

namespace semicro {
namespace oracle {

inline constexpr std::size_t kMaxRecords = 10;

struct PartitionCandidate {
  std::vector<std::vector<RecordId>> blocks;
  double sse = 0.0;
};

/// Every set partition of the ids whose blocks all have at least k members,
/// in restricted-growth-string order, each exactly once. Refuses more than
/// kMaxRecords ids.
std::vector<std::vector<std::vector<RecordId>>> enumerate_partitions(
    std::span<const RecordId> record_ids, std::uint32_t k);

/// SSE of one block under the canonical evaluation: centroid from the
/// block's internal matched pairs, members redacted against it.
double block_sse(std::span<const RecordId> members, const RecordMap& records, const Taxonomy& tax,
                 double threshold);

/// Exhaustive minimum-SSE partition of all records in the map, blocks >= k.
/// Ties keep the earliest partition in enumeration order.
PartitionCandidate optimal_sse(const RecordMap& records, const Taxonomy& tax, double threshold,
                               std::uint32_t k);

}  // namespace oracle
}  // namespace semicro
