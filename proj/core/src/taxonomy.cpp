#include "semicro/taxonomy.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <deque>
#include <fstream>
#include <istream>
#include <sstream>

namespace semicro {

namespace {

bool valid_id_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '-';
}

bool valid_concept_id(std::string_view id) {
  if (id.empty()) return false;
  return std::all_of(id.begin(), id.end(), valid_id_char);
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    std::size_t tab = line.find('\t', start);
    if (tab == std::string_view::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
}

[[noreturn]] void fail_line(std::size_t line_no, const std::string& what) {
  throw TaxonomyError("taxonomy line " + std::to_string(line_no) + ": " + what);
}

}  // namespace

std::string Taxonomy::normalize_term(std::string_view term) {
  std::string out;
  out.reserve(term.size());
  bool in_token = false;
  for (char raw : term) {
    unsigned char c = static_cast<unsigned char>(raw);
    if (std::isalnum(c)) {
      if (!in_token && !out.empty()) out.push_back(' ');
      out.push_back(static_cast<char>(std::tolower(c)));
      in_token = true;
    } else {
      in_token = false;
    }
  }
  return out;
}

ConceptId Taxonomy::Builder::intern(std::string_view id) {
  auto it = tax_.index_.find(std::string(id));
  if (it != tax_.index_.end()) return ConceptId{it->second};
  if (!valid_concept_id(id)) {
    throw TaxonomyError("invalid concept id '" + std::string(id) + "'");
  }
  std::uint32_t index = static_cast<std::uint32_t>(tax_.names_.size());
  tax_.names_.emplace_back(id);
  tax_.index_.emplace(std::string(id), index);
  tax_.parents_.emplace_back();
  return ConceptId{index};
}

ConceptId Taxonomy::Builder::add_concept(std::string_view id) { return intern(id); }

Taxonomy::Builder& Taxonomy::Builder::add_edge(std::string_view child, std::string_view parent) {
  ConceptId c = intern(child);
  ConceptId p = intern(parent);
  auto& parents = tax_.parents_[c.index];
  if (std::find(parents.begin(), parents.end(), p) == parents.end()) {
    parents.push_back(p);
  }
  return *this;
}

Taxonomy::Builder& Taxonomy::Builder::add_term(std::string_view term, std::string_view concept_name) {
  auto it = tax_.index_.find(std::string(concept_name));
  if (it == tax_.index_.end()) {
    throw TaxonomyError("term '" + std::string(term) + "' references undeclared concept '" +
                        std::string(concept_name) + "'");
  }
  std::string key = normalize_term(term);
  if (key.empty()) {
    throw TaxonomyError("term '" + std::string(term) + "' normalizes to nothing");
  }
  tax_.terms_[key].push_back(ConceptId{it->second});
  term_events_.emplace_back(std::move(key), it->second);
  return *this;
}

Taxonomy Taxonomy::Builder::build() {
  const std::size_t n = tax_.names_.size();

  // Cycle check: iterative DFS over parent edges, reporting the edge that
  // closes the first cycle found.
  {
    enum class Color : std::uint8_t { white, gray, black };
    std::vector<Color> color(n, Color::white);
    for (std::uint32_t start = 0; start < n; ++start) {
      if (color[start] != Color::white) continue;
      // stack of (node, next parent position)
      std::vector<std::pair<std::uint32_t, std::size_t>> stack{{start, 0}};
      color[start] = Color::gray;
      while (!stack.empty()) {
        auto& [node, pos] = stack.back();
        if (pos < tax_.parents_[node].size()) {
          std::uint32_t parent = tax_.parents_[node][pos].index;
          ++pos;
          if (color[parent] == Color::gray) {
            throw TaxonomyError("cycle detected: edge '" + tax_.names_[node] + "' -> '" +
                                tax_.names_[parent] + "' closes a cycle");
          }
          if (color[parent] == Color::white) {
            color[parent] = Color::gray;
            stack.emplace_back(parent, 0);
          }
        } else {
          color[node] = Color::black;
          stack.pop_back();
        }
      }
    }
  }

  // Ancestor closures and primary-path depths, parents before children.
  tax_.ancestors_.assign(n, {});
  tax_.depths_.assign(n, 0);
  {
    std::vector<std::uint32_t> pending(n, 0);
    std::vector<std::vector<std::uint32_t>> children(n);
    std::deque<std::uint32_t> ready;
    for (std::uint32_t i = 0; i < n; ++i) {
      pending[i] = static_cast<std::uint32_t>(tax_.parents_[i].size());
      for (ConceptId p : tax_.parents_[i]) children[p.index].push_back(i);
      if (pending[i] == 0) ready.push_back(i);
    }
    std::size_t processed = 0;
    while (!ready.empty()) {
      std::uint32_t node = ready.front();
      ready.pop_front();
      ++processed;
      std::vector<ConceptId> closure;
      closure.push_back(ConceptId{node});
      for (ConceptId p : tax_.parents_[node]) {
        const auto& up = tax_.ancestors_[p.index];
        closure.insert(closure.end(), up.begin(), up.end());
      }
      std::sort(closure.begin(), closure.end());
      closure.erase(std::unique(closure.begin(), closure.end()), closure.end());
      tax_.ancestors_[node] = std::move(closure);
      if (!tax_.parents_[node].empty()) {
        tax_.depths_[node] = tax_.depths_[tax_.parents_[node][0].index] + 1;
      }
      for (std::uint32_t child : children[node]) {
        if (--pending[child] == 0) ready.push_back(child);
      }
    }
    if (processed != n) {
      throw TaxonomyError("cycle detected");  // unreachable after the DFS check
    }
  }

  // Canonical surface forms: first term naming each concept, else its id.
  tax_.canonical_terms_ = tax_.names_;
  {
    std::vector<bool> seen(n, false);
    for (const auto& [term, concept_index] : term_events_) {
      if (!seen[concept_index]) {
        seen[concept_index] = true;
        tax_.canonical_terms_[concept_index] = term;
      }
    }
  }

  return std::move(tax_);
}

Taxonomy Taxonomy::load(std::istream& in) {
  Builder builder;
  struct TermLine {
    std::string term;
    std::string concept_name;
    std::size_t line_no;
  };
  std::vector<TermLine> term_lines;

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::string_view stripped = trim(line);
    if (stripped.empty() || stripped.front() == '#') continue;

    auto fields = split_tabs(line);
    if (fields.size() != 3) {
      fail_line(line_no, "expected 3 tab-separated fields, got " + std::to_string(fields.size()));
    }
    std::string_view tag = trim(fields[0]);
    if (tag == "E") {
      std::string_view child = trim(fields[1]);
      std::string_view parent = trim(fields[2]);
      if (!valid_concept_id(child)) fail_line(line_no, "invalid child id '" + std::string(child) + "'");
      if (!valid_concept_id(parent)) fail_line(line_no, "invalid parent id '" + std::string(parent) + "'");
      builder.add_edge(child, parent);
    } else if (tag == "T") {
      std::string_view term = trim(fields[1]);
      std::string_view concept_name = trim(fields[2]);
      if (term.empty()) fail_line(line_no, "empty surface term");
      if (!valid_concept_id(concept_name)) fail_line(line_no, "invalid concept id '" + std::string(concept_name) + "'");
      term_lines.push_back({std::string(term), std::string(concept_name), line_no});
    } else {
      fail_line(line_no, "unknown record tag '" + std::string(tag) + "'");
    }
  }

  // Terms may reference concepts declared by later edges, so they are
  // resolved once the concept set is complete.
  for (const auto& t : term_lines) {
    try {
      builder.add_term(t.term, t.concept_name);
    } catch (const TaxonomyError& e) {
      fail_line(t.line_no, e.what());
    }
  }

  try {
    return builder.build();
  } catch (const TaxonomyError& e) {
    throw TaxonomyError(std::string("taxonomy: ") + e.what());
  }
}

Taxonomy Taxonomy::load_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw TaxonomyError("cannot open taxonomy file: " + path.string());
  }
  return load(in);
}

void Taxonomy::require(ConceptId c) const {
  if (!c.valid() || c.index >= names_.size()) {
    throw std::out_of_range("unknown concept id");
  }
}

std::optional<ConceptId> Taxonomy::find_concept(std::string_view id) const {
  auto it = index_.find(std::string(id));
  if (it == index_.end()) return std::nullopt;
  return ConceptId{it->second};
}

const std::string& Taxonomy::concept_name(ConceptId c) const {
  require(c);
  return names_[c.index];
}

const std::vector<ConceptId>& Taxonomy::parents(ConceptId c) const {
  require(c);
  return parents_[c.index];
}

bool Taxonomy::is_root(ConceptId c) const { return parents(c).empty(); }

std::vector<ConceptId> Taxonomy::root_concepts() const {
  std::vector<ConceptId> roots;
  for (std::uint32_t i = 0; i < names_.size(); ++i) {
    if (parents_[i].empty()) roots.push_back(ConceptId{i});
  }
  return roots;
}

std::uint32_t Taxonomy::depth(ConceptId c) const {
  require(c);
  return depths_[c.index];
}

std::optional<ConceptId> Taxonomy::resolve_term(std::string_view term) const {
  auto it = terms_.find(normalize_term(term));
  if (it == terms_.end() || it->second.empty()) return std::nullopt;
  return it->second.front();
}

const std::string& Taxonomy::canonical_term(ConceptId c) const {
  require(c);
  return canonical_terms_[c.index];
}

const std::vector<ConceptId>& Taxonomy::ancestors(ConceptId c) const {
  require(c);
  return ancestors_[c.index];
}

double Taxonomy::concept_distance(ConceptId c1, ConceptId c2) const {
  require(c1);
  require(c2);
  if (c1 == c2) return 0.0;
  const auto& a = ancestors_[c1.index];
  const auto& b = ancestors_[c2.index];
  std::size_t shared = 0;
  for (std::size_t i = 0, j = 0; i < a.size() && j < b.size();) {
    if (a[i] < b[j]) {
      ++i;
    } else if (b[j] < a[i]) {
      ++j;
    } else {
      ++shared;
      ++i;
      ++j;
    }
  }
  const std::size_t total = a.size() + b.size() - shared;
  return std::log2(1.0 + static_cast<double>(total - shared) / static_cast<double>(total));
}

double Taxonomy::concept_similarity(ConceptId c1, ConceptId c2) const {
  return 1.0 - concept_distance(c1, c2);
}

ConceptId Taxonomy::generalization_node(ConceptId c) const {
  require(c);
  std::uint32_t d = depths_[c.index];
  if (d == 0) return c;
  std::uint32_t target = (d + 1) / 2;
  if (target == d) target = d - 1;  // strictly shallower unless root
  ConceptId node = c;
  for (std::uint32_t step = d; step > target; --step) {
    node = parents_[node.index][0];
  }
  return node;
}

}  // namespace semicro
