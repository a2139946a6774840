#include <algorithm>
#include <cmath>
#include <random>

#include <doctest.h>

#include "semicro/record_distance.hpp"
#include "support/fixtures.hpp"
#include "support/synth.hpp"

using namespace semicro;
using semicro::testing::make_record;

namespace {

PairDistance pd(RecordId l, RecordId r, double delta) {
  PairDistance p;
  p.left_id = l;
  p.right_id = r;
  p.delta = delta;
  return p;
}

}  // namespace

TEST_CASE("worked cardinalities: 3 and 4 reps, union 5") {
  Taxonomy tax = semicro::testing::medical_taxonomy();
  // Exactly two cells clear the threshold: (infection, flu) as depth-12
  // siblings and (cure, cure); act and body part match nothing on the left.
  DedupedRecord q1 = dedup_record(make_record(1, tax, {"infection", "cure", "lung"}), tax);
  DedupedRecord q2 =
      dedup_record(make_record(2, tax, {"flu", "cure", "act", "body part"}), tax);
  REQUIRE(q1.reps.size() == 3);
  REQUIRE(q2.reps.size() == 4);

  PairSimilarityMatrix m = pair_matrix(q1, q2, tax);
  CHECK(intersection_cardinality(m) == 2);

  PairDistance d = record_distance(m);
  CHECK(d.n_left == 3);
  CHECK(d.n_right == 4);
  CHECK(d.n_intersect == 2);
  CHECK(d.n_union == 5);
  CHECK(d.sym_diff == 2.5);
  CHECK(d.delta == 0.5);
}

TEST_CASE("identical records: intersection n, distance 1/n") {
  Taxonomy tax = semicro::testing::medical_taxonomy();
  DedupedRecord q1 = dedup_record(make_record(1, tax, {"infection", "cure", "lung"}), tax);
  DedupedRecord q2 = dedup_record(make_record(2, tax, {"infection", "cure", "lung"}), tax);
  PairSimilarityMatrix m = pair_matrix(q1, q2, tax);
  CHECK(intersection_cardinality(m) == 3);
  PairDistance d = record_distance(m);
  CHECK(d.n_union == 3);
  CHECK(d.sym_diff == 1.0);
  CHECK(d.delta == doctest::Approx(1.0 / 3.0).epsilon(1e-15));

  // four mutually dissimilar reps: delta exactly 1/4
  DedupedRecord q3 =
      dedup_record(make_record(3, tax, {"infection", "cure", "lung", "act"}), tax);
  DedupedRecord q4 =
      dedup_record(make_record(4, tax, {"infection", "cure", "lung", "act"}), tax);
  REQUIRE(q3.reps.size() == 4);
  CHECK(record_distance(pair_matrix(q3, q4, tax)).delta == 0.25);
}

TEST_CASE("no matched cells") {
  Taxonomy tax = semicro::testing::medical_taxonomy();
  DedupedRecord q1 = dedup_record(make_record(1, tax, {"cure"}), tax);
  DedupedRecord q2 = dedup_record(make_record(2, tax, {"lung"}), tax);
  PairSimilarityMatrix m = pair_matrix(q1, q2, tax);
  CHECK(intersection_cardinality(m) == 0);
  CHECK_THROWS_AS(record_distance(m), std::domain_error);
}

TEST_CASE("symmetric_difference") {
  CHECK(symmetric_difference(5, 2) == 2.5);
  CHECK(symmetric_difference(4, 4) == 1.0);
  CHECK(symmetric_difference(6, 3) == 2.0);
  CHECK_THROWS_AS(symmetric_difference(5, 0), std::domain_error);
}

TEST_CASE("single matched rep gives distance 1") {
  Taxonomy tax = semicro::testing::medical_taxonomy();
  DedupedRecord q1 = dedup_record(make_record(1, tax, {"lung"}), tax);
  DedupedRecord q2 = dedup_record(make_record(2, tax, {"lung"}), tax);
  CHECK(record_distance(pair_matrix(q1, q2, tax)).delta == 1.0);
}

TEST_CASE("algebraic identity: delta times intersection is 1") {
  std::size_t checked = 0;
  for (std::uint32_t seed = 1; seed <= 6; ++seed) {
    auto inst = semicro::testing::synth_instance(seed, {});
    for (const PairDistance& p : inst.pairs) {
      CHECK(std::abs(p.delta * p.n_intersect - 1.0) <= 1e-12);
      CHECK(p.delta > 0.0);
      CHECK(p.delta <= 1.0);
      CHECK(p.n_intersect == p.n_left + p.n_right - p.n_union);
      ++checked;
    }
  }
  CHECK(checked > 100);
}

TEST_CASE("dataset_centroid: exact mean hit") {
  std::vector<PairDistance> pairs{pd(1, 2, 0.2), pd(3, 4, 0.5), pd(5, 6, 0.8)};
  DatasetCentroid c = dataset_centroid(pairs);
  CHECK(c.mean_delta == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(c.left_id == 3);
  CHECK(c.right_id == 4);
}

TEST_CASE("dataset_centroid: equidistant tie goes to the lower ids") {
  std::vector<PairDistance> pairs{pd(1, 2, 0.25), pd(3, 4, 0.5)};
  DatasetCentroid c = dataset_centroid(pairs);
  CHECK(c.mean_delta == doctest::Approx(0.375).epsilon(1e-15));
  CHECK(c.left_id == 1);
  CHECK(c.right_id == 2);
}

TEST_CASE("dataset_centroid: single pair and empty input") {
  std::vector<PairDistance> one{pd(7, 9, 0.125)};
  DatasetCentroid c = dataset_centroid(one);
  CHECK(c.mean_delta == 0.125);
  CHECK(c.left_id == 7);
  CHECK(c.right_id == 9);
  CHECK_THROWS_AS(dataset_centroid(std::vector<PairDistance>{}), std::invalid_argument);
}

TEST_CASE("dataset_centroid is permutation invariant") {
  std::vector<PairDistance> pairs;
  std::mt19937 rng(99);
  std::uniform_int_distribution<int> denom(1, 8);
  for (RecordId i = 1; i <= 40; ++i) {
    pairs.push_back(pd(i, i + 40, 1.0 / denom(rng)));
  }
  DatasetCentroid base = dataset_centroid(pairs);
  for (int round = 0; round < 20; ++round) {
    std::shuffle(pairs.begin(), pairs.end(), rng);
    DatasetCentroid shuffled = dataset_centroid(pairs);
    CHECK(shuffled.mean_delta == base.mean_delta);
    CHECK(shuffled.left_id == base.left_id);
    CHECK(shuffled.right_id == base.right_id);
  }
}
