#include "semicro/record_distance.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_map>
#include <vector>

namespace semicro {

std::uint32_t intersection_cardinality(const PairSimilarityMatrix& m) {
  return static_cast<std::uint32_t>(m.matched.size());
}

double symmetric_difference(std::uint32_t n_union, std::uint32_t n_intersect) {
  if (n_intersect == 0) {
    throw std::domain_error("symmetric_difference: empty semantic intersection");
  }
  return static_cast<double>(n_union) / static_cast<double>(n_intersect);
}

PairDistance record_distance(const PairSimilarityMatrix& m) {
  PairDistance d;
  d.left_id = m.left_id;
  d.right_id = m.right_id;
  d.n_left = m.rows;
  d.n_right = m.cols;
  d.n_intersect = intersection_cardinality(m);
  if (d.n_intersect == 0) {
    throw std::domain_error("record_distance: empty semantic intersection");
  }
  d.n_union = d.n_left + d.n_right - d.n_intersect;
  d.sym_diff = symmetric_difference(d.n_union, d.n_intersect);
  d.delta = d.sym_diff / static_cast<double>(d.n_union);
  return d;
}

DatasetCentroid dataset_centroid(std::span<const PairDistance> pairs) {
  if (pairs.empty()) {
    throw std::invalid_argument("dataset_centroid: empty pair list");
  }
  // Deltas are ratios of small integers, so the distinct values are few.
  // Summing value-by-value in sorted order makes the mean independent of
  // the input permutation.
  std::unordered_map<double, std::size_t> counts;
  for (const PairDistance& p : pairs) ++counts[p.delta];
  std::vector<std::pair<double, std::size_t>> grouped(counts.begin(), counts.end());
  std::sort(grouped.begin(), grouped.end());
  double sum = 0.0;
  for (const auto& [value, count] : grouped) sum += value * static_cast<double>(count);
  DatasetCentroid c;
  c.mean_delta = sum / static_cast<double>(pairs.size());

  bool first = true;
  double best = 0.0;
  for (const PairDistance& p : pairs) {
    double gap = std::abs(p.delta - c.mean_delta);
    bool better = first || gap < best ||
                  (gap == best && (p.left_id < c.left_id ||
                                   (p.left_id == c.left_id && p.right_id < c.right_id)));
    if (better) {
      first = false;
      best = gap;
      c.left_id = p.left_id;
      c.right_id = p.right_id;
    }
  }
  return c;
}

}  // namespace semicro
