#include "semicro/anonymizer.hpp"

#include <algorithm>
#include <stdexcept>

namespace semicro {

std::vector<AnonymizedRecord> anonymize_cluster(const Cluster& cluster, const RecordMap& records,
                                                const Taxonomy& tax, double threshold) {
  if (cluster.suppressed) {
    throw std::invalid_argument("anonymize_cluster: suppressed clusters are never published");
  }
  auto centroid_it = records.find(cluster.centroid_id);
  if (centroid_it == records.end()) {
    throw std::invalid_argument("anonymize_cluster: centroid record missing from record map");
  }
  const RecordBundle& centroid = centroid_it->second;

  std::vector<AnonymizedRecord> out;
  out.reserve(cluster.members.size());

  for (RecordId member_id : cluster.members) {
    auto member_it = records.find(member_id);
    if (member_it == records.end()) {
      throw std::invalid_argument("anonymize_cluster: member record missing from record map");
    }
    const RecordBundle& member = member_it->second;

    AnonymizedRecord rec;
    rec.record_id = member_id;
    rec.cluster_id = cluster.cluster_id;
    rec.output_attributes.reserve(member.query.attributes.size());
    rec.trace.reserve(member.query.attributes.size());

    if (member_id == cluster.centroid_id) {
      for (std::uint32_t i = 0; i < member.query.attributes.size(); ++i) {
        const Attribute& attr = member.query.attributes[i];
        rec.output_attributes.push_back(attr);
        rec.trace.push_back({i, RedactionAction::kept_centroid, attr.concept_id});
      }
      out.push_back(std::move(rec));
      continue;
    }

    // Per-rep redaction targets from the member-vs-centroid match.
    PairSimilarityMatrix m = pair_matrix(member.deduped, centroid.deduped, tax, threshold);
    const bool member_is_left = m.left_id == member_id;
    std::vector<const Attribute*> rep_target(member.deduped.reps.size(), nullptr);
    for (const MatchedCell& cell : m.matched) {
      std::uint32_t member_rep = member_is_left ? cell.left : cell.right;
      std::uint32_t centroid_rep = member_is_left ? cell.right : cell.left;
      rep_target[member_rep] = &centroid.deduped.reps[centroid_rep];
    }

    for (std::uint32_t i = 0; i < member.query.attributes.size(); ++i) {
      std::uint32_t rep = member.deduped.member_map[i];
      if (const Attribute* target = rep_target[rep]) {
        rec.output_attributes.push_back(*target);
        rec.trace.push_back({i, RedactionAction::replaced_by_centroid, target->concept_id});
      } else {
        ConceptId node = tax.generalization_node(member.deduped.reps[rep].concept_id);
        rec.output_attributes.push_back({tax.canonical_term(node), node});
        rec.trace.push_back({i, RedactionAction::generalized, node});
      }
    }
    out.push_back(std::move(rec));
  }

  std::sort(out.begin(), out.end(), [](const AnonymizedRecord& a, const AnonymizedRecord& b) {
    return a.record_id < b.record_id;
  });
  return out;
}

}  // namespace semicro
