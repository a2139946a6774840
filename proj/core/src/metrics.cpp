#include "semicro/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <unordered_map>

#include "semicro/record_distance.hpp"

namespace semicro {

std::optional<double> cohesion(const Cluster& cluster, const RecordMap& records,
                               const Taxonomy& tax, double threshold) {
  if (cluster.members.size() < 2) return std::nullopt;
  auto centroid_it = records.find(cluster.centroid_id);
  if (centroid_it == records.end()) {
    throw std::invalid_argument("cohesion: centroid record missing");
  }
  const DedupedRecord& centroid = centroid_it->second.deduped;

  double sum = 0.0;
  for (RecordId id : cluster.members) {
    if (id == cluster.centroid_id) continue;
    auto it = records.find(id);
    if (it == records.end()) {
      throw std::invalid_argument("cohesion: member record missing");
    }
    PairSimilarityMatrix m = pair_matrix(it->second.deduped, centroid, tax, threshold);
    // Members sharing nothing with the centroid sit at the distance
    // supremum.
    sum += m.matched.empty() ? 1.0 : record_distance(m).delta;
  }
  return std::sqrt(sum / static_cast<double>(cluster.members.size() - 1));
}

namespace {

// Redaction target of one rep, read off the member's trace: every original
// attribute folded into a rep shares the same target.
ConceptId rep_target(const DedupedRecord& deduped, const AnonymizedRecord& anon,
                     std::uint32_t rep) {
  for (std::size_t i = 0; i < deduped.member_map.size(); ++i) {
    if (deduped.member_map[i] == rep) return anon.trace[i].target;
  }
  throw std::logic_error("rep_target: rep without folded attributes");
}

}  // namespace

double cluster_sse(const Cluster& cluster, const RecordMap& records,
                   std::span<const AnonymizedRecord> anonymized, const Taxonomy& tax) {
  std::unordered_map<RecordId, const AnonymizedRecord*> by_id;
  for (const AnonymizedRecord& rec : anonymized) {
    if (rec.cluster_id == cluster.cluster_id) by_id.emplace(rec.record_id, &rec);
  }
  double total = 0.0;
  for (RecordId id : cluster.members) {
    if (id == cluster.centroid_id) continue;
    auto record_it = records.find(id);
    auto anon_it = by_id.find(id);
    if (record_it == records.end() || anon_it == by_id.end()) {
      throw std::invalid_argument("cluster_sse: missing record or anonymization trace");
    }
    const DedupedRecord& deduped = record_it->second.deduped;
    for (std::uint32_t rep = 0; rep < deduped.reps.size(); ++rep) {
      double d = tax.concept_distance(deduped.reps[rep].concept_id,
                                      rep_target(deduped, *anon_it->second, rep));
      total += d * d * static_cast<double>(deduped.weights[rep]);
    }
  }
  return total;
}

double sse(std::span<const Cluster> clusters, const RecordMap& records,
           std::span<const AnonymizedRecord> anonymized, const Taxonomy& tax) {
  std::vector<const Cluster*> ordered;
  for (const Cluster& c : clusters) {
    if (!c.suppressed) ordered.push_back(&c);
  }
  std::sort(ordered.begin(), ordered.end(),
            [](const Cluster* a, const Cluster* b) { return a->cluster_id < b->cluster_id; });
  double total = 0.0;
  for (const Cluster* c : ordered) total += cluster_sse(*c, records, anonymized, tax);
  return total;
}

RecordId dataset_centroid_record(const DatasetCentroid& centroid, const RecordMap& records) {
  auto left = records.find(centroid.left_id);
  auto right = records.find(centroid.right_id);
  if (left == records.end() || right == records.end()) {
    throw std::invalid_argument("dataset_centroid_record: centroid pair record missing");
  }
  std::size_t left_reps = left->second.deduped.reps.size();
  std::size_t right_reps = right->second.deduped.reps.size();
  if (left_reps != right_reps) {
    return left_reps > right_reps ? centroid.left_id : centroid.right_id;
  }
  return std::min(centroid.left_id, centroid.right_id);
}

double sst(const RecordMap& records, const DatasetCentroid& centroid, const Taxonomy& tax) {
  if (records.size() < 2) {
    throw std::invalid_argument("sst: need at least 2 records");
  }
  RecordId center_id = dataset_centroid_record(centroid, records);
  const DedupedRecord& center = records.at(center_id).deduped;

  double total = 0.0;
  for (const auto& [id, bundle] : records) {
    if (id == center_id) continue;
    const DedupedRecord& deduped = bundle.deduped;
    for (std::uint32_t rep = 0; rep < deduped.reps.size(); ++rep) {
      // Nearest centroid rep; the first index wins ties.
      double best = std::numeric_limits<double>::infinity();
      for (const Attribute& candidate : center.reps) {
        best = std::min(best, tax.concept_distance(deduped.reps[rep].concept_id, candidate.concept_id));
      }
      total += best * best * static_cast<double>(deduped.weights[rep]);
    }
  }
  return total;
}

double information_loss(double sse_total, double sst_total) {
  if (sse_total < 0.0 || sst_total < 0.0) {
    throw std::invalid_argument("information_loss: negative input");
  }
  if (sst_total == 0.0) return 0.0;
  return 100.0 * sse_total / sst_total;
}

MetricsReport compute_metrics(const ClusteringResult& clustering, const RecordMap& records,
                              std::span<const AnonymizedRecord> anonymized,
                              const DatasetCentroid& centroid, const Taxonomy& tax,
                              double threshold) {
  MetricsReport report;
  for (const Cluster& c : clustering.clusters) {
    if (c.suppressed) continue;
    ClusterMetrics cm;
    cm.cluster_id = c.cluster_id;
    cm.size = static_cast<std::uint32_t>(c.members.size());
    cm.cohesion = cohesion(c, records, tax, threshold);
    cm.sse_contribution = cluster_sse(c, records, anonymized, tax);
    report.per_cluster.push_back(cm);
  }
  std::sort(report.per_cluster.begin(), report.per_cluster.end(),
            [](const ClusterMetrics& a, const ClusterMetrics& b) {
              return a.cluster_id < b.cluster_id;
            });
  for (const ClusterMetrics& cm : report.per_cluster) report.sse_total += cm.sse_contribution;
  report.sst_total = sst(records, centroid, tax);
  report.il_percent = information_loss(report.sse_total, report.sst_total);
  report.dataset_centroid_record = dataset_centroid_record(centroid, records);
  return report;
}

}  // namespace semicro
