#pragma once

#include <cstdint>
#include <span>

#include "semicro/attribute_semantics.hpp"

namespace semicro {

/// Set-level cardinalities and the scalar distance of one record pair.
/// n_intersect counts the one-to-one matched rep pairs; n_union the distinct
/// reps across both records under that matching; sym_diff = n_union /
/// n_intersect and delta = sym_diff / n_union, which collapses to
/// 1 / n_intersect.
struct PairDistance {
  RecordId left_id = 0;
  RecordId right_id = 0;
  std::uint32_t n_left = 0;
  std::uint32_t n_right = 0;
  std::uint32_t n_union = 0;
  std::uint32_t n_intersect = 0;
  double sym_diff = 0.0;
  double delta = 0.0;
};

std::uint32_t intersection_cardinality(const PairSimilarityMatrix& m);

/// n_union / n_intersect. Throws std::domain_error when n_intersect is 0:
/// pairs without matched reps never enter the distance stage.
double symmetric_difference(std::uint32_t n_union, std::uint32_t n_intersect);

PairDistance record_distance(const PairSimilarityMatrix& m);

/// Mean pair delta plus the pair nearest to it (ties to the lower ids).
struct DatasetCentroid {
  double mean_delta = 0.0;
  RecordId left_id = 0;
  RecordId right_id = 0;
};

DatasetCentroid dataset_centroid(std::span<const PairDistance> pairs);

}  // namespace semicro
