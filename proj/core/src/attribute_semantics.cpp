#include "semicro/attribute_semantics.hpp"

#include <algorithm>
#include <stdexcept>
#include <thread>

namespace semicro {

namespace {

// Dense tables above this many distinct concepts would not pay for their
// memory; fall back to on-the-fly ancestor merges.
constexpr std::size_t kDenseTableLimit = 1500;

}  // namespace

DedupedRecord dedup_record(const QueryRecord& rec, const Taxonomy& tax, double threshold) {
  if (rec.attributes.empty()) {
    throw std::invalid_argument("dedup_record: record has no attributes");
  }
  DedupedRecord out;
  out.record_id = rec.record_id;
  out.member_map.resize(rec.attributes.size());

  for (std::size_t i = 0; i < rec.attributes.size(); ++i) {
    const Attribute& attr = rec.attributes[i];
    std::size_t group = out.reps.size();
    for (std::size_t g = 0; g < out.reps.size(); ++g) {
      if (tax.concept_similarity(attr.concept_id, out.reps[g].concept_id) >= threshold) {
        group = g;
        break;
      }
    }
    if (group == out.reps.size()) {
      out.reps.push_back(attr);
      out.weights.push_back(1);
    } else {
      ++out.weights[group];
    }
    out.member_map[i] = static_cast<std::uint32_t>(group);
  }
  return out;
}

SimilarityTable::SimilarityTable(const Taxonomy& tax, std::span<const DedupedRecord> records)
    : tax_(&tax) {
  std::vector<std::uint32_t> concepts;
  for (const DedupedRecord& rec : records) {
    for (const Attribute& rep : rec.reps) concepts.push_back(rep.concept_id.index);
  }
  std::sort(concepts.begin(), concepts.end());
  concepts.erase(std::unique(concepts.begin(), concepts.end()), concepts.end());
  if (concepts.size() > kDenseTableLimit) return;

  width_ = concepts.size();
  slot_.reserve(width_);
  for (std::uint32_t i = 0; i < width_; ++i) slot_.emplace(concepts[i], i);
  dense_.assign(width_ * width_, 1.0);
  for (std::uint32_t i = 0; i < width_; ++i) {
    for (std::uint32_t j = i + 1; j < width_; ++j) {
      double s = tax.concept_similarity(ConceptId{concepts[i]}, ConceptId{concepts[j]});
      dense_[i * width_ + j] = s;
      dense_[j * width_ + i] = s;
    }
  }
}

double SimilarityTable::sim(ConceptId a, ConceptId b) const {
  if (width_ != 0) {
    auto ia = slot_.find(a.index);
    auto ib = slot_.find(b.index);
    if (ia != slot_.end() && ib != slot_.end()) {
      return dense_[ia->second * width_ + ib->second];
    }
  }
  return tax_->concept_similarity(a, b);
}

PairSimilarityMatrix pair_matrix(const DedupedRecord& a, const DedupedRecord& b,
                                 const Taxonomy& tax, double threshold,
                                 const SimilarityTable* cache) {
  if (a.record_id == b.record_id) {
    throw std::invalid_argument("pair_matrix: records must be distinct");
  }
  const DedupedRecord& left = a.record_id < b.record_id ? a : b;
  const DedupedRecord& right = a.record_id < b.record_id ? b : a;

  PairSimilarityMatrix m;
  m.left_id = left.record_id;
  m.right_id = right.record_id;
  m.rows = static_cast<std::uint32_t>(left.reps.size());
  m.cols = static_cast<std::uint32_t>(right.reps.size());
  m.cells.resize(static_cast<std::size_t>(m.rows) * m.cols);

  struct Candidate {
    double sim;
    std::uint32_t row;
    std::uint32_t col;
  };
  std::vector<Candidate> candidates;
  for (std::uint32_t r = 0; r < m.rows; ++r) {
    for (std::uint32_t c = 0; c < m.cols; ++c) {
      double s = cache ? cache->sim(left.reps[r].concept_id, right.reps[c].concept_id)
                       : tax.concept_similarity(left.reps[r].concept_id, right.reps[c].concept_id);
      m.cells[static_cast<std::size_t>(r) * m.cols + c] = s;
      if (s >= threshold) candidates.push_back({s, r, c});
    }
  }

  std::sort(candidates.begin(), candidates.end(), [](const Candidate& x, const Candidate& y) {
    if (x.sim != y.sim) return x.sim > y.sim;
    if (x.row != y.row) return x.row < y.row;
    return x.col < y.col;
  });

  std::vector<bool> row_used(m.rows, false), col_used(m.cols, false);
  for (const Candidate& c : candidates) {
    if (row_used[c.row] || col_used[c.col]) continue;
    row_used[c.row] = true;
    col_used[c.col] = true;
    m.matched.push_back({c.row, c.col});
  }
  return m;
}

std::vector<PairSimilarityMatrix> matching_pairs(std::span<const DedupedRecord> records,
                                                 const Taxonomy& tax, double threshold,
                                                 unsigned threads) {
  if (records.size() < 2) {
    throw std::invalid_argument("matching_pairs: need at least 2 records");
  }
  const std::size_t n = records.size();
  const std::size_t total = n * (n - 1) / 2;
  SimilarityTable table(tax, records);

  // Flat pair index -> (i, j) with i < j, lexicographic.
  auto unflatten = [n](std::size_t flat) {
    std::size_t i = 0;
    std::size_t row_len = n - 1;
    while (flat >= row_len) {
      flat -= row_len;
      ++i;
      --row_len;
    }
    return std::pair<std::size_t, std::size_t>(i, i + 1 + flat);
  };

  std::vector<PairSimilarityMatrix> slots(total);
  std::vector<char> keep(total, 0);

  auto work = [&](std::size_t begin, std::size_t end) {
    for (std::size_t flat = begin; flat < end; ++flat) {
      auto [i, j] = unflatten(flat);
      PairSimilarityMatrix m = pair_matrix(records[i], records[j], tax, threshold, &table);
      if (!m.matched.empty()) {
        slots[flat] = std::move(m);
        keep[flat] = 1;
      }
    }
  };

  unsigned usable = std::max(1u, threads);
  if (usable == 1 || total < 2 * usable) {
    work(0, total);
  } else {
    std::vector<std::thread> pool;
    std::size_t chunk = (total + usable - 1) / usable;
    for (unsigned t = 0; t < usable; ++t) {
      std::size_t begin = static_cast<std::size_t>(t) * chunk;
      std::size_t end = std::min(total, begin + chunk);
      if (begin >= end) break;
      pool.emplace_back(work, begin, end);
    }
    for (std::thread& t : pool) t.join();
  }

  std::vector<PairSimilarityMatrix> out;
  for (std::size_t flat = 0; flat < total; ++flat) {
    if (keep[flat]) out.push_back(std::move(slots[flat]));
  }
  std::sort(out.begin(), out.end(), [](const PairSimilarityMatrix& x, const PairSimilarityMatrix& y) {
    if (x.left_id != y.left_id) return x.left_id < y.left_id;
    return x.right_id < y.right_id;
  });
  return out;
}

std::uint64_t expected_matrix_count(std::uint64_t n) {
  if (n < 2) {
    throw std::invalid_argument("expected_matrix_count: need n >= 2");
  }
  return n * (n - 1) / 2;
}

}  // namespace semicro
