#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>
#include <set>

#include "core/text.hpp"
#include "core/util.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace fuzzlint;
using testutil::lex;
using testutil::sent;

TEST_CASE("tokenize splits a simple instruction into one sentence") {
  auto ss = tokenize("Progressively heat the probe.");
  REQUIRE(ss.size() == 1);
  CHECK(testutil::surfaces(ss[0]) ==
        std::vector<std::string>{"Progressively", "heat", "the", "probe", "."});
  CHECK(ss[0].tokens[0].lemma == "progressively");
  CHECK(ss[0].index == 0);
}

TEST_CASE("tokenize of empty input gives no sentences") {
  CHECK(tokenize("").empty());
  CHECK(tokenize("   \n\t  ").empty());
}

TEST_CASE("a newline ends a sentence even without punctuation") {
  auto ss = tokenize("Close valve A\nOpen valve B");
  REQUIRE(ss.size() == 2);
  CHECK(testutil::surfaces(ss[0]) == std::vector<std::string>{"Close", "valve", "A"});
  CHECK(testutil::surfaces(ss[1]) == std::vector<std::string>{"Open", "valve", "B"});
  CHECK(ss[1].tokens[0].line == 2);
}

TEST_CASE("terminators . ! ? each close a sentence") {
  auto ss = tokenize("Stop! Why? Go.");
  REQUIRE(ss.size() == 3);
  CHECK(ss[0].tokens.back().surface == "!");
  CHECK(ss[1].tokens.back().surface == "?");
  CHECK(ss[2].tokens.back().surface == ".");
}

TEST_CASE("hyphens, decimals, separators and percent signs stay inside one token") {
  auto ss = tokenize("The plug-in reads 2.5 bar, 10,5 volts and 65% power on V1.");
  auto sf = testutil::surfaces(ss[0]);
  auto has = [&](const std::string& w) {
    return std::find(sf.begin(), sf.end(), w) != sf.end();
  };
  CHECK(has("plug-in"));
  CHECK(has("2.5"));
  CHECK(has("10,5"));
  CHECK(has("65%"));
  CHECK(has("V1"));
  CHECK(has(","));  // the list comma is its own token
}

TEST_CASE("token offsets address the source text exactly") {
  std::string text = "Heat the probe.\nClose the pipe!  Done?";
  size_t prev_end = 0;
  for (const auto& s : tokenize(text)) {
    for (const auto& t : s.tokens) {
      REQUIRE(t.offset + t.surface.size() <= text.size());
      CHECK(text.substr(t.offset, t.surface.size()) == t.surface);
      CHECK(t.offset >= prev_end);  // strictly ordered, no overlap
      // Everything skipped between tokens must be whitespace.
      for (size_t i = prev_end; i < t.offset; ++i) {
        CHECK((text[i] == ' ' || text[i] == '\n' || text[i] == '\t' || text[i] == '\r'));
      }
      prev_end = t.offset + t.surface.size();
    }
  }
  CHECK(prev_end == text.size() - 0);
}

TEST_CASE("bytes past 0x7f are treated as word material") {
  auto ss = tokenize("temp\xc3\xa9rature rises.");
  REQUIRE(!ss.empty());
  CHECK(ss[0].tokens[0].surface == "temp\xc3\xa9rature");
}

TEST_CASE("lemmatize strips plural and inflection suffixes") {
  CHECK(lemmatize("alarms") == "alarm");
  CHECK(lemmatize("heat") == "heat");
  CHECK(lemmatize("closing") == "close");
  CHECK(lemmatize("minimizes") == "minimize");
  CHECK(lemmatize("reduced") == "reduce");
  CHECK(lemmatize("heating") == "heat");
  CHECK(lemmatize("viewing") == "view");
  CHECK(lemmatize("boxes") == "box");
  CHECK(lemmatize("Pipes") == "pipe");
  CHECK(lemmatize("bus") == "bus");      // -us words keep their s
  CHECK(lemmatize("pass") == "pass");    // -ss words too
  CHECK(lemmatize("analysis") == "analysis");
}

TEST_CASE("lemmatize is idempotent") {
  std::vector<std::string> vocab = {"alarms",  "closing", "heating",   "springs", "studies",
                                    "reduced", "viewing", "minimizes", "watches", "Used"};
  for (const auto& w : vocab) CHECK(lemmatize(lemmatize(w)) == lemmatize(w));

  std::mt19937 rng(2024);
  for (int i = 0; i < 500; ++i) {
    std::string w;
    int len = 1 + static_cast<int>(rng() % 12);
    for (int j = 0; j < len; ++j) w.push_back(static_cast<char>('a' + rng() % 26));
    CAPTURE(w);
    CHECK(lemmatize(lemmatize(w)) == lemmatize(w));
  }
}

TEST_CASE("group_compounds joins adjacent noun-category words") {
  auto units = group_compounds(sent("minimize fire alarms"), lex());
  REQUIRE(units.size() == 2);
  CHECK(units[0].lemma == "minimize");
  CHECK(!units[0].compound);
  CHECK(units[1].lemma == "fire alarm");
  CHECK(units[1].compound);
  CHECK(units[1].begin == 1);
  CHECK(units[1].end == 3);
}

TEST_CASE("group_compounds drops stopwords") {
  auto units = group_compounds(sent("close the pipe"), lex());
  REQUIRE(units.size() == 2);
  CHECK(units[0].lemma == "close");
  CHECK(units[1].lemma == "pipe");
}

TEST_CASE("a three-noun run becomes one unit") {
  auto units = group_compounds(sent("outside air temperature"), lex());
  REQUIRE(units.size() == 1);
  CHECK(units[0].lemma == "outside air temperature");
  CHECK(units[0].begin == 0);
  CHECK(units[0].end == 3);
}

TEST_CASE("an excluded span takes no part in grouping") {
  // Without the exclusion the unknown first word would be treated as a noun
  // and swallow "heat" into a compound.
  Sentence s = sent("Zorply heat the probe.");
  auto all = group_compounds(s, lex());
  REQUIRE(!all.empty());
  CHECK(all[0].compound);  // demonstrates the hazard

  auto units = group_compounds(s, lex(), TokenSpan{0, 1});
  REQUIRE(units.size() == 2);
  CHECK(units[0].lemma == "heat");
  CHECK(units[0].begin == 1);
  CHECK(units[1].lemma == "probe");
}

TEST_CASE("units never overlap and come in token order") {
  std::string doc = testutil::slurp(testutil::fixture_path("manual_original.txt"));
  for (const auto& s : tokenize(doc)) {
    size_t prev = 0;
    for (const auto& u : group_compounds(s, lex())) {
      CHECK(u.begin >= prev);
      CHECK(u.begin < u.end);
      CHECK(u.end <= s.tokens.size());
      prev = u.end;
    }
  }
}

TEST_CASE("parse_tagged reads a revised region") {
  auto f = parse_tagged("heat the probe <revised>progressively in 5 seconds</revised>");
  CHECK(f.tokens() == std::vector<std::string>{"heat", "the", "probe", "progressively", "in", "5",
                                               "seconds"});
  auto r = f.region(TagKind::revised);
  REQUIRE(r.has_value());
  CHECK(r->first == 3);
  CHECK(r->second == 7);
  CHECK(!f.region(TagKind::fuzzy).has_value());
}

TEST_CASE("plain text parses to a fragment without tags") {
  auto f = parse_tagged("plain text");
  CHECK(f.tokens() == std::vector<std::string>{"plain", "text"});
  CHECK(!f.region(TagKind::fuzzy).has_value());
  CHECK(!f.region(TagKind::revised).has_value());
}

TEST_CASE("mismatched and unknown tags are rejected") {
  CHECK_THROWS_AS(parse_tagged("<fuzzy>a</revised>"), ParseError);
  CHECK_THROWS_AS(parse_tagged("<fuzzy>a"), ParseError);
  CHECK_THROWS_AS(parse_tagged("a</fuzzy>"), ParseError);
  CHECK_THROWS_AS(parse_tagged("<bogus>a</bogus>"), ParseError);
  CHECK_THROWS_AS(parse_tagged("<fuzzy>a<revised>b</revised></fuzzy>"), ParseError);
}

TEST_CASE("make_tagged and render_tagged produce the canonical form") {
  TaggedFragment f = make_tagged({"Progressively", "heat", "the", "probe", "."}, 0, 1,
                                 TagKind::fuzzy);
  CHECK(render_tagged(f) == "<fuzzy>Progressively</fuzzy> heat the probe .");

  TaggedFragment g = make_tagged({"Report", "any", "new", "conditions", "."}, 3, 3,
                                 TagKind::revised);
  CHECK(render_tagged(g) == "Report any new <revised></revised> conditions .");
  auto r = parse_tagged(render_tagged(g)).region(TagKind::revised);
  REQUIRE(r.has_value());
  CHECK(r->first == r->second);  // the empty region survives the round trip
}

TEST_CASE("parse and render invert each other on random fragments") {
  std::mt19937 rng(77);
  auto word = [&] {
    std::string w;
    int len = 1 + static_cast<int>(rng() % 8);
    for (int j = 0; j < len; ++j) w.push_back(static_cast<char>('a' + rng() % 26));
    return w;
  };
  for (int trial = 0; trial < 1000; ++trial) {
    size_t n = 1 + rng() % 9;
    std::vector<std::string> toks;
    for (size_t i = 0; i < n; ++i) toks.push_back(word());
    size_t b = rng() % (n + 1);
    size_t e = b + rng() % (n - b + 1);
    TagKind kind = (rng() % 2) ? TagKind::fuzzy : TagKind::revised;
    TaggedFragment f = make_tagged(toks, b, e, kind);
    CAPTURE(render_tagged(f));
    TaggedFragment back = parse_tagged(render_tagged(f));
    CHECK(back == f);
    CHECK(render_tagged(back) == render_tagged(f));
  }
}
