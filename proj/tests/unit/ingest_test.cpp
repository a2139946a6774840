#include <sstream>

#include <doctest.h>

#include "semicro/ingest.hpp"
#include "support/fixtures.hpp"

using namespace semicro;

namespace {

ParsedLog parse_text(const std::string& text, LogFormat format) {
  std::istringstream in(text);
  return parse_log(in, format);
}

}  // namespace

TEST_CASE("parse_log plain: one record per non-empty line") {
  ParsedLog log = parse_text("first query\n\nsecond query\nthird query\n", LogFormat::plain);
  REQUIRE(log.lines.size() == 3);
  CHECK(log.data_lines == 3);
  CHECK(log.skipped == 0);
  CHECK(log.lines[0].record_id == 1);
  CHECK(log.lines[1].record_id == 2);
  CHECK(log.lines[2].record_id == 3);
  CHECK(log.lines[1].text == "second query");
  CHECK(log.lines[0].user_id.empty());
}

TEST_CASE("parse_log plain: only blank lines") {
  ParsedLog log = parse_text("\n   \n\t\n", LogFormat::plain);
  CHECK(log.lines.empty());
  CHECK(log.data_lines == 0);
}

TEST_CASE("parse_log aol-tsv: header, columns, extras ignored") {
  ParsedLog log = parse_text(
      "AnonID\tQuery\tQueryTime\n"
      "123\tflu remedy\t2006-03-01\n"
      "456\tpizza near me\n",
      LogFormat::aol_tsv);
  REQUIRE(log.lines.size() == 2);
  CHECK(log.lines[0].user_id == "123");
  CHECK(log.lines[0].text == "flu remedy");
  CHECK(log.lines[1].user_id == "456");
  CHECK(log.lines[1].text == "pizza near me");
}

TEST_CASE("parse_log aol-tsv: short lines are skipped and counted") {
  ParsedLog log = parse_text(
      "AnonID\tQuery\n"
      "123\tgood line\n"
      "no-tabs-here\n"
      "456\tanother good line\n",
      LogFormat::aol_tsv);
  REQUIRE(log.lines.size() == 2);
  CHECK(log.skipped == 1);
  CHECK(log.data_lines == 3);
  // record ids index the data lines, including the skipped one
  CHECK(log.lines[0].record_id == 1);
  CHECK(log.lines[1].record_id == 3);
}

TEST_CASE("parse_log format names") {
  CHECK(parse_log_format("plain") == LogFormat::plain);
  CHECK(parse_log_format("aol-tsv") == LogFormat::aol_tsv);
  CHECK_FALSE(parse_log_format("csv").has_value());
  CHECK(log_format_name(LogFormat::aol_tsv) == "aol-tsv");
}

TEST_CASE("extract_attributes: worked sentence") {
  Taxonomy tax = semicro::testing::medical_taxonomy();
  StopwordSet stopwords = StopwordSet::defaults();
  RawLogLine raw{1, "", "a cure for ill-health pulmonary disease lung infection"};
  auto rec = extract_attributes(raw, tax, stopwords);
  REQUIRE(rec.has_value());
  REQUIRE(rec->attributes.size() == 5);
  CHECK(rec->attributes[0].surface == "cure");
  CHECK(rec->attributes[1].surface == "ill-health");
  CHECK(rec->attributes[2].surface == "disease");
  CHECK(rec->attributes[3].surface == "lung");
  CHECK(rec->attributes[4].surface == "infection");
  CHECK(rec->attributes[1].concept_id == *tax.find_concept("ill_health"));
}

TEST_CASE("extract_attributes: all stopwords") {
  Taxonomy tax = semicro::testing::medical_taxonomy();
  RawLogLine raw{1, "", "the of and"};
  StopwordSet stopwords;
  stopwords.insert("the");
  stopwords.insert("of");
  stopwords.insert("and");
  CHECK_FALSE(extract_attributes(raw, tax, stopwords).has_value());
}

TEST_CASE("extract_attributes: greedy bigram beats unigrams") {
  Taxonomy::Builder b;
  b.add_edge("nyc", "place");
  b.add_edge("pizza", "food");
  b.add_edge("york_concept", "place");
  b.add_term("new york", "nyc");
  b.add_term("york", "york_concept");
  b.add_term("pizza", "pizza");
  Taxonomy tax = b.build();
  RawLogLine raw{1, "", "new york pizza"};
  auto rec = extract_attributes(raw, tax, StopwordSet());
  REQUIRE(rec.has_value());
  REQUIRE(rec->attributes.size() == 2);
  CHECK(rec->attributes[0].surface == "new york");
  CHECK(rec->attributes[0].concept_id == *tax.find_concept("nyc"));
  CHECK(rec->attributes[1].surface == "pizza");
}

TEST_CASE("extract_attributes: trigram match and case folding") {
  Taxonomy::Builder b;
  b.add_concept("brand");
  b.add_term("big apple tours", "brand");
  Taxonomy tax = b.build();
  RawLogLine raw{7, "u", "Big APPLE Tours"};
  auto rec = extract_attributes(raw, tax, StopwordSet());
  REQUIRE(rec.has_value());
  REQUIRE(rec->attributes.size() == 1);
  CHECK(rec->attributes[0].surface == "big apple tours");
  CHECK(rec->record_id == 7);
  CHECK(rec->user_id == "u");
}

TEST_CASE("extract_attributes: duplicate terms stay separate instances") {
  Taxonomy tax = semicro::testing::medical_taxonomy();
  RawLogLine raw{1, "", "flu shot flu season flu"};
  auto rec = extract_attributes(raw, tax, StopwordSet::defaults());
  REQUIRE(rec.has_value());
  CHECK(rec->attributes.size() == 3);
}

TEST_CASE("extraction is deterministic and bookkeeping adds up") {
  Taxonomy tax = semicro::testing::medical_taxonomy();
  StopwordSet stopwords = StopwordSet::defaults();
  std::string text =
      "AnonID\tQuery\n"
      "1\tflu cure\n"
      "malformed line\n"
      "2\tnothing relevant here\n"
      "3\tlung infection\n"
      "\n"
      "4\tdisease\n";
  ParsedLog log = parse_text(text, LogFormat::aol_tsv);
  std::size_t admitted = 0, excluded = 0;
  std::vector<QueryRecord> first_pass;
  for (const RawLogLine& line : log.lines) {
    if (auto rec = extract_attributes(line, tax, stopwords)) {
      ++admitted;
      first_pass.push_back(*rec);
    } else {
      ++excluded;
    }
  }
  CHECK(admitted + excluded + log.skipped == log.data_lines);
  CHECK(admitted == 3);
  CHECK(excluded == 1);

  for (const QueryRecord& rec : first_pass) {
    for (const Attribute& attr : rec.attributes) {
      CHECK_NOTHROW(tax.concept_name(attr.concept_id));
    }
  }

  ParsedLog log2 = parse_text(text, LogFormat::aol_tsv);
  std::size_t i = 0;
  for (const RawLogLine& line : log2.lines) {
    if (auto rec = extract_attributes(line, tax, stopwords)) {
      REQUIRE(i < first_pass.size());
      CHECK(rec->record_id == first_pass[i].record_id);
      CHECK(rec->attributes.size() == first_pass[i].attributes.size());
      ++i;
    }
  }
  CHECK(i == first_pass.size());
}

TEST_CASE("stopword files: comments and normalization") {
  std::istringstream in("# list\nThe\n\nof\n");
  StopwordSet set = StopwordSet::load(in);
  CHECK(set.size() == 2);
  CHECK(set.contains("the"));
  CHECK(set.contains("of"));
  CHECK_FALSE(set.contains("and"));
}
