#include "semicro/oracle.hpp"

#include <algorithm>
#include <stdexcept>

#include "semicro/record_distance.hpp"

namespace semicro {
namespace oracle {

std::vector<std::vector<std::vector<RecordId>>> enumerate_partitions(
    std::span<const RecordId> record_ids, std::uint32_t k) {
  if (record_ids.size() > kMaxRecords) {
    throw std::invalid_argument("enumerate_partitions: more than " +
                                std::to_string(kMaxRecords) + " records");
  }
  std::vector<RecordId> ids(record_ids.begin(), record_ids.end());
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());

  std::vector<std::vector<std::vector<RecordId>>> out;
  if (ids.empty()) return out;

  const std::size_t n = ids.size();
  // Restricted growth strings enumerated lexicographically: element i may
  // join any existing block or open the next one.
  std::vector<std::uint32_t> rgs(n, 0);
  auto emit = [&] {
    std::uint32_t block_count = *std::max_element(rgs.begin(), rgs.end()) + 1;
    std::vector<std::vector<RecordId>> blocks(block_count);
    for (std::size_t i = 0; i < n; ++i) blocks[rgs[i]].push_back(ids[i]);
    for (const auto& block : blocks) {
      if (block.size() < k) return;
    }
    out.push_back(std::move(blocks));
  };

  auto descend = [&](auto&& self, std::size_t pos, std::uint32_t max_used) -> void {
    if (pos == n) {
      emit();
      return;
    }
    for (std::uint32_t v = 0; v <= max_used + 1; ++v) {
      rgs[pos] = v;
      self(self, pos + 1, std::max(max_used, v));
    }
  };
  rgs[0] = 0;
  descend(descend, 1, 0);
  return out;
}

double block_sse(std::span<const RecordId> members, const RecordMap& records, const Taxonomy& tax,
                 double threshold) {
  std::vector<RecordId> sorted(members.begin(), members.end());
  std::sort(sorted.begin(), sorted.end());

  std::vector<PairDistance> internal;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    for (std::size_t j = i + 1; j < sorted.size(); ++j) {
      PairSimilarityMatrix m = pair_matrix(records.at(sorted[i]).deduped,
                                           records.at(sorted[j]).deduped, tax, threshold);
      if (!m.matched.empty()) internal.push_back(record_distance(m));
    }
  }

  Cluster block;
  block.cluster_id = 0;
  block.centroid_id = cluster_centroid(sorted, internal);
  block.members = std::move(sorted);
  block.suppressed = false;

  std::vector<AnonymizedRecord> anonymized = anonymize_cluster(block, records, tax, threshold);
  return cluster_sse(block, records, anonymized, tax);
}

PartitionCandidate optimal_sse(const RecordMap& records, const Taxonomy& tax, double threshold,
                               std::uint32_t k) {
  std::vector<RecordId> ids;
  ids.reserve(records.size());
  for (const auto& [id, bundle] : records) ids.push_back(id);

  auto partitions = enumerate_partitions(ids, k);
  if (partitions.empty()) {
    throw std::invalid_argument("optimal_sse: no partition with blocks >= k exists");
  }

  PartitionCandidate best;
  bool have_best = false;
  for (auto& partition : partitions) {
    double total = 0.0;
    for (const auto& block : partition) total += block_sse(block, records, tax, threshold);
    if (!have_best || total < best.sse) {
      have_best = true;
      best.blocks = std::move(partition);
      best.sse = total;
    }
  }
  return best;
}

}  // namespace oracle
}  // namespace semicro
