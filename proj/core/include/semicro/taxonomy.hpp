#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace semicro {

struct TaxonomyError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Dense handle for a concept inside one Taxonomy. Handles are only
/// meaningful for the taxonomy that produced them.
struct ConceptId {
  std::uint32_t index = std::numeric_limits<std::uint32_t>::max();

  bool valid() const { return index != std::numeric_limits<std::uint32_t>::max(); }
  friend bool operator==(ConceptId, ConceptId) = default;
  friend auto operator<=>(ConceptId, ConceptId) = default;
};

/// Immutable concept DAG with a term index. All ancestor sets, depths and
/// canonical terms are precomputed at build time, so every query below is
/// safe for unlimited concurrent reads.
///
/// Ancestor sets are reflexive: ancestors(c) always contains c itself.
class Taxonomy {
 public:
  class Builder;

  /// An empty taxonomy; useful as a placeholder before loading.
  Taxonomy() = default;

  /// Parses the line-oriented taxonomy format:
  ///   E<TAB>child_id<TAB>parent_id   declares both concepts and the edge
  ///   T<TAB>surface_term<TAB>id      maps a term to a declared concept
  /// '#' starts a comment, blank lines are ignored, repeated T lines for
  /// the same term define sense order. Throws TaxonomyError on malformed
  /// lines, terms naming undeclared concepts, or cycles.
  static Taxonomy load(std::istream& in);
  static Taxonomy load_file(const std::filesystem::path& path);

  std::size_t concept_count() const { return names_.size(); }
  std::optional<ConceptId> find_concept(std::string_view id) const;
  const std::string& concept_name(ConceptId c) const;

  /// Parents in declaration order; the first entry is the primary parent.
  const std::vector<ConceptId>& parents(ConceptId c) const;
  bool is_root(ConceptId c) const;
  std::vector<ConceptId> root_concepts() const;

  /// Depth along the primary-parent path; roots have depth 0.
  std::uint32_t depth(ConceptId c) const;

  /// First-listed sense for the term, after normalization. Absent when the
  /// term is unknown.
  std::optional<ConceptId> resolve_term(std::string_view term) const;

  /// Surface form used when a concept has to be rendered as text: the first
  /// term mapped to it, falling back to the concept id itself.
  const std::string& canonical_term(ConceptId c) const;

  /// Reflexive ancestor closure, sorted by concept index.
  const std::vector<ConceptId>& ancestors(ConceptId c) const;

  /// Taxonomic distance in [0, 1]: log2(1 + |T(a) xor T(b)| / |T(a) u T(b)|)
  /// over the reflexive ancestor sets. 0 for identical concepts, 1 for
  /// concepts with disjoint ancestor sets.
  double concept_distance(ConceptId c1, ConceptId c2) const;

  /// 1 - concept_distance.
  double concept_similarity(ConceptId c1, ConceptId c2) const;

  /// Mid-branch generalization target: the ancestor at depth
  /// ceil(depth(c)/2) along the primary-parent path, forced strictly
  /// shallower than c unless c is a root.
  ConceptId generalization_node(ConceptId c) const;

  /// Lowercases, splits on non-alphanumeric runs and rejoins with single
  /// spaces. Both the term index keys and extractor lookups use this form.
  static std::string normalize_term(std::string_view term);

 private:
  void require(ConceptId c) const;

  std::vector<std::string> names_;
  std::unordered_map<std::string, std::uint32_t> index_;
  std::vector<std::vector<ConceptId>> parents_;
  std::vector<std::vector<ConceptId>> ancestors_;
  std::vector<std::uint32_t> depths_;
  std::vector<std::string> canonical_terms_;
  std::unordered_map<std::string, std::vector<ConceptId>> terms_;
};

/// Incremental construction for programmatic taxonomies (tests, generators).
/// add_edge declares unseen endpoints on the fly; add_term requires the
/// concept to exist. build() validates acyclicity and freezes the result.
class Taxonomy::Builder {
 public:
  ConceptId add_concept(std::string_view id);
  Builder& add_edge(std::string_view child, std::string_view parent);
  Builder& add_term(std::string_view term, std::string_view concept_name);
  Taxonomy build();

 private:
  friend class Taxonomy;
  ConceptId intern(std::string_view id);

  Taxonomy tax_;
  std::vector<std::pair<std::string, std::uint32_t>> term_events_;
};

}  // namespace semicro
