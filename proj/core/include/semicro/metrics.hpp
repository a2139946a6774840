#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "semicro/anonymizer.hpp"
#include "semicro/clustering.hpp"

namespace semicro {

/// Root-mean semantic distance of the cluster members to the centroid
/// record, in (0, 1]; lower means more homogeneous. Distances come from a
/// fresh member-vs-centroid pair matrix; a member sharing nothing with the
/// centroid counts as distance 1. Absent for singleton clusters.
std::optional<double> cohesion(const Cluster& cluster, const RecordMap& records,
                               const Taxonomy& tax, double threshold = kDefaultSimThreshold);

/// Squared-distance contribution of one published cluster: for every
/// non-centroid member and every rep, the squared concept distance between
/// the rep and its redaction target, weighted by the rep's fold count.
double cluster_sse(const Cluster& cluster, const RecordMap& records,
                   std::span<const AnonymizedRecord> anonymized, const Taxonomy& tax);

/// Sum of cluster_sse over the non-suppressed clusters, accumulated in
/// (cluster_id, record_id, rep_index) order.
double sse(std::span<const Cluster> clusters, const RecordMap& records,
           std::span<const AnonymizedRecord> anonymized, const Taxonomy& tax);

/// The dataset centroid record: the larger-rep-count record of the centroid
/// pair, ties to the lower id.
RecordId dataset_centroid_record(const DatasetCentroid& centroid, const RecordMap& records);

/// Total squared distance of every record's reps to their most similar rep
/// of the dataset centroid record, weighted by fold counts.
double sst(const RecordMap& records, const DatasetCentroid& centroid, const Taxonomy& tax);

/// 100 * sse / sst, 0 when sst is 0. May legitimately exceed 100; callers
/// report that, never clamp it.
double information_loss(double sse_total, double sst_total);

struct ClusterMetrics {
  std::uint32_t cluster_id = 0;
  std::uint32_t size = 0;
  std::optional<double> cohesion;
  double sse_contribution = 0.0;
};

struct MetricsReport {
  std::vector<ClusterMetrics> per_cluster;  // published clusters only
  double sse_total = 0.0;
  double sst_total = 0.0;
  double il_percent = 0.0;
  RecordId dataset_centroid_record = 0;
};

MetricsReport compute_metrics(const ClusteringResult& clustering, const RecordMap& records,
                              std::span<const AnonymizedRecord> anonymized,
                              const DatasetCentroid& centroid, const Taxonomy& tax,
                              double threshold = kDefaultSimThreshold);

}  // namespace semicro
