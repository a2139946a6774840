#pragma once

// Shared taxonomy fixtures. Similarities under the ancestor-ratio measure
// only clear the 0.8 default threshold on deep branches, so the medical
// fixture hangs its vocabulary twelve levels below the root:
//   siblings at depth 12 share 12 ancestors -> sim = 1 - log2(1 + 2/14) ~ 0.807
//   parent/child there                      -> sim = 1 - log2(1 + 1/13) ~ 0.893

#include <string>

#include "semicro/attribute_semantics.hpp"
#include "semicro/ingest.hpp"
#include "semicro/taxonomy.hpp"

namespace semicro::testing {

/// Two sibling leaves under a ten-concept shared chain: the leaves have 12
/// distinct ancestors, 10 of them shared, so distance(flu, pneumonia) =
/// log2(1 + 2/12) ~ 0.2224 and their similarity sits just below 0.8.
/// Also carries a separate two-level sports branch.
inline Taxonomy respiratory_taxonomy() {
  Taxonomy::Builder b;
  for (int i = 2; i <= 10; ++i) {
    b.add_edge("c" + std::to_string(i), "c" + std::to_string(i - 1));
  }
  b.add_edge("flu", "c10");
  b.add_edge("pneumonia", "c10");
  b.add_edge("soccer", "sports");
  b.add_term("flu", "flu");
  b.add_term("pneumonia", "pneumonia");
  b.add_term("soccer", "soccer");
  return b.build();
}

/// Deep medical fixture for the worked extraction/dedup examples. The
/// disease sub-branch sits at depth 11 with infection, ill_health, flu and
/// pneumonia as depth-12 siblings; cure and lung live on shallow separate
/// branches, far from everything.
inline Taxonomy medical_taxonomy() {
  Taxonomy::Builder b;
  b.add_edge("o1", "entity");
  for (int i = 2; i <= 10; ++i) {
    b.add_edge("o" + std::to_string(i), "o" + std::to_string(i - 1));
  }
  b.add_edge("disease", "o10");
  b.add_edge("infection", "disease");
  b.add_edge("ill_health", "disease");
  b.add_edge("flu", "disease");
  b.add_edge("pneumonia", "disease");
  b.add_edge("act", "entity");
  b.add_edge("cure", "act");
  b.add_edge("object", "entity");
  b.add_edge("body_part", "object");
  b.add_edge("lung", "body_part");
  b.add_term("infection", "infection");
  b.add_term("disease", "disease");
  b.add_term("ill-health", "ill_health");
  b.add_term("cure", "cure");
  b.add_term("lung", "lung");
  b.add_term("flu", "flu");
  b.add_term("pneumonia", "pneumonia");
  b.add_term("act", "act");
  b.add_term("body part", "body_part");
  return b.build();
}

inline QueryRecord make_record(RecordId id, const Taxonomy& tax,
                               const std::vector<std::string>& terms) {
  QueryRecord rec;
  rec.record_id = id;
  for (const std::string& term : terms) {
    auto concept_id = tax.resolve_term(term);
    if (!concept_id) throw std::logic_error("fixture term unknown: " + term);
    rec.attributes.push_back({term, *concept_id});
  }
  return rec;
}

inline RecordBundle make_bundle(RecordId id, const Taxonomy& tax,
                                const std::vector<std::string>& terms,
                                double threshold = kDefaultSimThreshold) {
  QueryRecord rec = make_record(id, tax, terms);
  DedupedRecord deduped = dedup_record(rec, tax, threshold);
  return RecordBundle{std::move(rec), std::move(deduped)};
}

}  // namespace semicro::testing
