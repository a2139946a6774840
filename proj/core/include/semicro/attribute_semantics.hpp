#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <unordered_map>
#include <vector>

#include "semicro/ingest.hpp"
#include "semicro/taxonomy.hpp"

namespace semicro {

inline constexpr double kDefaultSimThreshold = 0.8;

/// A record after intra-record semantic deduplication: one representative
/// per group of mutually similar attributes, with fold counts.
struct DedupedRecord {
  RecordId record_id = 0;
  std::vector<Attribute> reps;            // founding order; pairwise sim < threshold
  std::vector<std::uint32_t> weights;     // per rep, sums to the original attribute count
  std::vector<std::uint32_t> member_map;  // original attribute index -> rep index
};

/// Single-linkage grouping against group representatives: scanning left to
/// right, an attribute joins the first group whose representative it matches
/// at sim >= threshold, otherwise it founds a new group.
DedupedRecord dedup_record(const QueryRecord& rec, const Taxonomy& tax,
                           double threshold = kDefaultSimThreshold);

struct MatchedCell {
  std::uint32_t left = 0;   // rep index in the lower-id record
  std::uint32_t right = 0;  // rep index in the higher-id record
};

/// Full rep-by-rep similarity grid for one record pair, canonically oriented
/// so left_id < right_id. matched holds a greedy one-to-one assignment of
/// the cells at or above the threshold, highest similarity first, ties
/// broken by (left index, right index).
struct PairSimilarityMatrix {
  RecordId left_id = 0;
  RecordId right_id = 0;
  std::uint32_t rows = 0;  // reps of the left record
  std::uint32_t cols = 0;  // reps of the right record
  std::vector<double> cells;  // row-major
  std::vector<MatchedCell> matched;

  double at(std::uint32_t m, std::uint32_t n) const { return cells[m * cols + n]; }
};

/// Precomputed pairwise similarities for the concepts of a record set.
/// Falls back to the taxonomy when the concept universe is too large to
/// tabulate densely.
class SimilarityTable {
 public:
  SimilarityTable(const Taxonomy& tax, std::span<const DedupedRecord> records);
  double sim(ConceptId a, ConceptId b) const;

 private:
  const Taxonomy* tax_;
  std::unordered_map<std::uint32_t, std::uint32_t> slot_;
  std::vector<double> dense_;
  std::size_t width_ = 0;
};

PairSimilarityMatrix pair_matrix(const DedupedRecord& a, const DedupedRecord& b,
                                 const Taxonomy& tax, double threshold = kDefaultSimThreshold,
                                 const SimilarityTable* cache = nullptr);

/// Evaluates every unordered record pair and keeps the matrices with at
/// least one matched cell, ordered by (left_id, right_id). Pair evaluation
/// parallelizes across threads; the result does not depend on the count.
std::vector<PairSimilarityMatrix> matching_pairs(std::span<const DedupedRecord> records,
                                                 const Taxonomy& tax,
                                                 double threshold = kDefaultSimThreshold,
                                                 unsigned threads = 1);

/// n(n-1)/2, the number of unordered pair matrices for n records.
std::uint64_t expected_matrix_count(std::uint64_t n);

struct RecordBundle {
  QueryRecord query;
  DedupedRecord deduped;
};

using RecordMap = std::map<RecordId, RecordBundle>;

}  // namespace semicro
