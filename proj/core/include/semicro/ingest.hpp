#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "semicro/taxonomy.hpp"

namespace semicro {

using RecordId = std::uint32_t;

enum class LogFormat { plain, aol_tsv };

std::optional<LogFormat> parse_log_format(std::string_view name);
std::string_view log_format_name(LogFormat format);

struct RawLogLine {
  RecordId record_id = 0;  // 1-based index over non-empty data lines
  std::string user_id;     // empty for formats without one
  std::string text;
};

struct ParsedLog {
  std::vector<RawLogLine> lines;
  std::size_t data_lines = 0;  // non-empty data lines, including skipped ones
  std::size_t skipped = 0;     // malformed lines dropped with a count, not an error
};

/// plain: one query per line. aol_tsv: header line, then
/// AnonID<TAB>Query[<TAB>ignored...]; lines with fewer than two columns are
/// skipped and counted.
ParsedLog parse_log(std::istream& in, LogFormat format);

struct Attribute {
  std::string surface;
  ConceptId concept_id;
};

struct QueryRecord {
  RecordId record_id = 0;
  std::string user_id;
  std::vector<Attribute> attributes;  // first-occurrence order
};

class StopwordSet {
 public:
  StopwordSet() = default;

  /// Built-in English list, mirrored in data/stopwords_en.txt.
  static const StopwordSet& defaults();
  /// One term per line, '#' comments and blank lines ignored.
  static StopwordSet load(std::istream& in);
  static StopwordSet load_file(const std::filesystem::path& path);

  void insert(std::string_view term);
  bool contains(std::string_view token) const;
  std::size_t size() const { return terms_.size(); }

 private:
  std::unordered_set<std::string> terms_;
};

/// Vocabulary-match extraction: lowercases the text, tokenizes on
/// non-alphanumeric runs, drops stopwords, then greedily matches the longest
/// n-gram (n <= 3) present in the taxonomy term index, left to right. Each
/// match becomes one attribute carrying the original text span as its
/// surface. Returns nullopt when nothing matches (the record is excluded).
std::optional<QueryRecord> extract_attributes(const RawLogLine& raw, const Taxonomy& tax,
                                              const StopwordSet& stopwords);

}  // namespace semicro
