#pragma once

#include <cstdint>
#include <vector>

#include "semicro/attribute_semantics.hpp"
#include "semicro/clustering.hpp"

namespace semicro {

enum class RedactionAction : std::uint8_t {
  kept_centroid,          // centroid record published verbatim
  replaced_by_centroid,   // rewritten to a matched centroid attribute
  generalized,            // rewritten to the rep's generalization node
};

struct RedactionStep {
  std::uint32_t attribute_index = 0;  // position in the original record
  RedactionAction action = RedactionAction::kept_centroid;
  ConceptId target;
};

struct AnonymizedRecord {
  RecordId record_id = 0;
  std::uint32_t cluster_id = 0;
  std::vector<Attribute> output_attributes;  // same length as the original
  std::vector<RedactionStep> trace;          // one step per position
};

/// Redacts every member of a published cluster against the cluster
/// centroid. The centroid is emitted verbatim. For other members, reps that
/// match a centroid rep one-to-one at sim >= threshold pull every original
/// attribute folded into them to the matched centroid attribute; unmatched
/// reps generalize their originals to the rep's generalization node,
/// rendered with the concept's canonical term. Output is ordered by
/// record id.
std::vector<AnonymizedRecord> anonymize_cluster(const Cluster& cluster, const RecordMap& records,
                                                const Taxonomy& tax,
                                                double threshold = kDefaultSimThreshold);

}  // namespace semicro
