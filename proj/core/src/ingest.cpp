#include "semicro/ingest.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <fstream>
#include <istream>

namespace semicro {

namespace {

constexpr std::size_t kMaxNgram = 3;

bool blank(std::string_view s) {
  return std::all_of(s.begin(), s.end(),
                     [](char c) { return std::isspace(static_cast<unsigned char>(c)); });
}

// Also shipped as data/stopwords_en.txt; keep the two in sync.
constexpr std::array kDefaultStopwords = {
    "a",    "an",   "and",  "are",  "as",   "at",   "be",    "but",  "by",   "for",
    "from", "had",  "has",  "have", "he",   "her",  "his",   "how",  "i",    "if",
    "in",   "is",   "it",   "its",  "my",   "not",  "of",    "on",   "or",   "our",
    "she",  "so",   "that", "the",  "their", "them", "there", "they", "this", "to",
    "was",  "we",   "were", "what", "when",  "where", "which", "who",  "will", "with",
    "you",  "your",
};

}  // namespace

std::optional<LogFormat> parse_log_format(std::string_view name) {
  if (name == "plain") return LogFormat::plain;
  if (name == "aol-tsv") return LogFormat::aol_tsv;
  return std::nullopt;
}

std::string_view log_format_name(LogFormat format) {
  return format == LogFormat::plain ? "plain" : "aol-tsv";
}

ParsedLog parse_log(std::istream& in, LogFormat format) {
  ParsedLog log;
  std::string line;
  bool header_pending = format == LogFormat::aol_tsv;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (header_pending) {
      header_pending = false;
      continue;
    }
    if (blank(line)) continue;
    ++log.data_lines;
    RecordId id = static_cast<RecordId>(log.data_lines);
    if (format == LogFormat::plain) {
      log.lines.push_back({id, "", line});
      continue;
    }
    std::size_t tab = line.find('\t');
    if (tab == std::string::npos) {
      ++log.skipped;
      continue;
    }
    std::string user = line.substr(0, tab);
    std::size_t end = line.find('\t', tab + 1);
    std::string text = end == std::string::npos ? line.substr(tab + 1)
                                                : line.substr(tab + 1, end - tab - 1);
    log.lines.push_back({id, std::move(user), std::move(text)});
  }
  return log;
}

const StopwordSet& StopwordSet::defaults() {
  static const StopwordSet set = [] {
    StopwordSet s;
    for (const char* word : kDefaultStopwords) s.insert(word);
    return s;
  }();
  return set;
}

StopwordSet StopwordSet::load(std::istream& in) {
  StopwordSet set;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (blank(line) || line.front() == '#') continue;
    set.insert(line);
  }
  return set;
}

StopwordSet StopwordSet::load_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open stopword file: " + path.string());
  }
  return load(in);
}

void StopwordSet::insert(std::string_view term) {
  std::string key = Taxonomy::normalize_term(term);
  if (!key.empty()) terms_.insert(std::move(key));
}

bool StopwordSet::contains(std::string_view token) const {
  return terms_.count(std::string(token)) > 0;
}

std::optional<QueryRecord> extract_attributes(const RawLogLine& raw, const Taxonomy& tax,
                                              const StopwordSet& stopwords) {
  std::string text = raw.text;
  for (char& c : text) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));

  struct Token {
    std::string_view text;
    std::size_t begin;
    std::size_t end;
  };
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    if (!std::isalnum(static_cast<unsigned char>(text[i]))) {
      ++i;
      continue;
    }
    std::size_t begin = i;
    while (i < text.size() && std::isalnum(static_cast<unsigned char>(text[i]))) ++i;
    std::string_view tok(text.data() + begin, i - begin);
    if (!stopwords.contains(tok)) tokens.push_back({tok, begin, i});
  }

  QueryRecord record;
  record.record_id = raw.record_id;
  record.user_id = raw.user_id;

  std::size_t pos = 0;
  std::string key;
  while (pos < tokens.size()) {
    std::size_t taken = 0;
    for (std::size_t n = std::min(kMaxNgram, tokens.size() - pos); n >= 1; --n) {
      key.assign(tokens[pos].text);
      for (std::size_t j = 1; j < n; ++j) {
        key.push_back(' ');
        key.append(tokens[pos + j].text);
      }
      if (auto concept_id = tax.resolve_term(key)) {
        std::size_t begin = tokens[pos].begin;
        std::size_t end = tokens[pos + n - 1].end;
        record.attributes.push_back({text.substr(begin, end - begin), *concept_id});
        taken = n;
        break;
      }
    }
    pos += taken == 0 ? 1 : taken;
  }

  if (record.attributes.empty()) return std::nullopt;
  return record;
}

}  // namespace semicro
