#include <algorithm>
#include <random>

#include "core/store.hpp"
#include "core/util.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace fuzzlint;
using testutil::lex;
using testutil::no_synonyms;
using testutil::sent;

namespace {

std::vector<std::string> toks(const std::string& text) {
  std::vector<std::string> out;
  for (const auto& t : sent(text).tokens) out.push_back(t.lemma);
  return out;
}

// Plain cost-only edit-distance table, written independently of the
// production alignment so the two can disagree.
int reference_cost(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  std::vector<std::vector<int>> d(a.size() + 1, std::vector<int>(b.size() + 1, 0));
  for (size_t i = 0; i <= a.size(); ++i) d[i][0] = static_cast<int>(i);
  for (size_t j = 0; j <= b.size(); ++j) d[0][j] = static_cast<int>(j);
  for (size_t i = 1; i <= a.size(); ++i) {
    for (size_t j = 1; j <= b.size(); ++j) {
      int sub = d[i - 1][j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      d[i][j] = std::min({sub, d[i - 1][j] + 1, d[i][j - 1] + 1});
    }
  }
  return d[a.size()][b.size()];
}

int classify_case(const std::string& original, const std::string& corrected,
                  TokenSpan item_span) {
  Sentence a = sent(original);
  Sentence b = sent(corrected);
  return classify(a.tokens, &b.tokens, item_span, lex(), {}).case_;
}

LearnStats learn_pair(MemoryStore& store, const std::string& original,
                      const std::string& corrected, const std::string& writer = "w") {
  return learn("doc", original, corrected, writer, store, lex(), no_synonyms(), {}, {});
}

}  // namespace

TEST_CASE("aligning a sequence with itself costs nothing") {
  auto al = align({"close", "the", "pipe"}, {"close", "the", "pipe"});
  CHECK(al.cost == 0);
  REQUIRE(al.steps.size() == 3);
  for (size_t i = 0; i < 3; ++i) {
    CHECK(al.steps[i].op == EditOp::keep);
    CHECK(al.steps[i].a == i);
    CHECK(al.steps[i].b == i);
  }
}

TEST_CASE("a pure extension aligns as trailing inserts") {
  auto al = align({"progressively", "close", "the", "pipe"},
                  {"progressively", "close", "the", "pipe", "in", "30", "seconds"});
  CHECK(al.cost == 3);
  REQUIRE(al.steps.size() == 7);
  for (size_t i = 0; i < 4; ++i) CHECK(al.steps[i].op == EditOp::keep);
  for (size_t i = 4; i < 7; ++i) CHECK(al.steps[i].op == EditOp::insert);
}

TEST_CASE("alignment cost equals the reference edit distance on random input") {
  std::mt19937 rng(4242);
  const char* alphabet[] = {"a", "b", "c", "d"};
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<std::string> a, b;
    size_t na = rng() % 11, nb = rng() % 11;
    for (size_t i = 0; i < na; ++i) a.push_back(alphabet[rng() % 4]);
    for (size_t i = 0; i < nb; ++i) b.push_back(alphabet[rng() % 4]);
    auto al = align(a, b);
    CAPTURE(trial);
    CHECK(al.cost == reference_cost(a, b));

    // The steps must actually replay a into b.
    std::vector<std::string> replay;
    int non_keep = 0;
    for (const auto& st : al.steps) {
      switch (st.op) {
        case EditOp::keep:
          REQUIRE(a[st.a] == b[st.b]);
          replay.push_back(a[st.a]);
          break;
        case EditOp::substitute:
          ++non_keep;
          replay.push_back(b[st.b]);
          break;
        case EditOp::insert:
          ++non_keep;
          replay.push_back(b[st.b]);
          break;
        case EditOp::del:
          ++non_keep;
          break;
      }
    }
    CHECK(replay == b);
    CHECK(non_keep == al.cost);
  }
}

TEST_CASE("untouched or missing corrections classify as case 1") {
  Sentence a = sent("Regularly inspect the filter.");
  auto no_correction = classify(a.tokens, nullptr, {0, 1}, lex(), {});
  CHECK(no_correction.case_ == 1);
  CHECK(!no_correction.has_corrected);

  CHECK(classify_case("Regularly inspect the filter.", "Regularly inspect the filter.", {0, 1}) ==
        1);
}

TEST_CASE("erasing just the item classifies as case 3") {
  CHECK(classify_case("Report any new special conditions.", "Report any new conditions.",
                      {3, 4}) == 3);
  CHECK(classify_case("Procedure 690 used as a basic reference applicable to airborne systems.",
                      "Procedure 690 used as a reference applicable to airborne systems.",
                      {5, 6}) == 3);
}

TEST_CASE("replacement by a bare quantity classifies as case 2") {
  CHECK(classify_case("Take-off a few knots above V1.", "Take-off less than 12 knots above V1.",
                      {1, 3}) == 2);
}

TEST_CASE("an appended complement with the item retained classifies as case 2") {
  CHECK(classify_case("Carefully plug-in the mother card.",
                      "Carefully plug-in the mother card otherwise you may damage the connectors.",
                      {0, 1}) == 2);
}

TEST_CASE("replacement by a contentful expression classifies as case 4") {
  CHECK(classify_case("Aircraft used in normal operation.",
                      "Aircraft used with side winds below 35 kts and outside air temperature "
                      "below 50 Celsius.",
                      {3, 4}) == 4);
}

TEST_CASE("scattered edits beyond the item classify as case 5") {
  // Two separate regions change, so the rewrite is no longer local to the
  // fuzzy occurrence.
  CHECK(classify_case("Progressively close the red pipe.", "Slowly shut the blue tube.",
                      {0, 1}) == 5);
}

TEST_CASE("one contiguous rewrite around the occurrence stays case 4") {
  CHECK(classify_case("Progressively close the pipe.", "Use a torque wrench instead of pliers.",
                      {0, 1}) == 4);
}

TEST_CASE("the revised span covers exactly the replacement region") {
  Sentence a = sent("Take-off a few knots above V1.");
  Sentence b = sent("Take-off less than 12 knots above V1.");
  auto out = classify(a.tokens, &b.tokens, {1, 3}, lex(), {});
  CHECK(out.case_ == 2);
  CHECK(out.revised == TokenSpan{1, 4});  // "less than 12"

  Sentence c = sent("Report any new special conditions.");
  Sentence d = sent("Report any new conditions.");
  auto erased = classify(c.tokens, &d.tokens, {3, 4}, lex(), {});
  CHECK(erased.case_ == 3);
  CHECK(erased.revised.begin == erased.revised.end);  // pure deletion point
}

TEST_CASE("learn records an observation with both tagged fragments") {
  MemoryStore store;
  auto stats = learn("doc", "Progressively heat the probe.",
                     "Heat the probe progressively in 5 seconds.", "John", store, lex(),
                     no_synonyms(), {}, {});
  CHECK(stats.alerts == 1);
  CHECK(stats.corrected == 1);
  REQUIRE(store.records.size() == 1);

  const CorrectionRecord& r = store.records[0];
  CHECK(r.id == "r1");
  CHECK(r.item_lemma == "progressively");
  CHECK(r.writer == "John");
  CHECK(r.case_ == 2);
  CHECK(r.context.head == "heat");
  CHECK(render_tagged(r.original) == "<fuzzy>Progressively</fuzzy> heat the probe .");
  REQUIRE(r.has_corrected);
  CHECK(render_tagged(r.corrected) ==
        "Heat the probe <revised>progressively in 5 seconds</revised> .");
}

TEST_CASE("an identical corrected document yields case-1 records without fragments") {
  MemoryStore store;
  std::string text = "Progressively heat the probe.\nPark near the gate.";
  auto stats = learn_pair(store, text, text);
  CHECK(stats.alerts == 2);
  CHECK(stats.uncorrected == 2);
  CHECK(stats.corrected == 0);
  for (const auto& r : store.records) {
    CHECK(r.case_ == 1);
    CHECK(!r.has_corrected);
  }
}

TEST_CASE("learn counts corrected and uncorrected alerts separately") {
  MemoryStore store;
  auto stats = learn_pair(store,
                          "Progressively close the pipe.\n"
                          "Park near the gate.\n"
                          "Regularly inspect the filter.",
                          "Progressively close the pipe in 30 seconds.\n"
                          "Park less than 100 meters from the gate.\n"
                          "Regularly inspect the filter.");
  CHECK(stats.alerts == 3);
  CHECK(stats.corrected == 2);
  CHECK(stats.uncorrected == 1);
  int case1 = 0;
  for (const auto& r : store.records) case1 += r.case_ == 1;
  CHECK(case1 == 1);
}

TEST_CASE("learn rejects documents whose sentence counts differ") {
  MemoryStore store;
  try {
    learn_pair(store, "Close the pipe.\nOpen the valve.", "Close the pipe.");
    FAIL("expected an error");
  } catch (const InputError& e) {
    CHECK(std::string(e.what()).find("sentence counts differ") != std::string::npos);
  }
  CHECK(store.records.empty());
}

TEST_CASE("learn requires a writer id") {
  MemoryStore store;
  CHECK_THROWS_AS(learn_pair(store, "Close the pipe.", "Close the pipe.", ""), InputError);
}

TEST_CASE("learn appends and never rewrites prior records") {
  MemoryStore store;
  learn_pair(store, "Park near the gate.", "Park near the gate.");
  auto before = store.records;
  learn_pair(store, "Progressively heat the probe.", "Progressively heat the probe.");
  REQUIRE(store.records.size() == 2);
  CHECK(store.records[0] == before[0]);
  CHECK(store.records[1].id != store.records[0].id);
  CHECK(store.records[1].seq > store.records[0].seq);
}

TEST_CASE("mine_correct indexes quantity expressions from alert-free sentences") {
  MemoryStore store;
  std::string corpus =
      "Heat the probe in 2 to 4 mns.\n"
      "Heat the probe in 2 to 4 mns.\n"
      "Progressively heat the probe.\n"
      "Tighten the bolts to 40 Nm.\n";
  auto stats = mine_correct("c", corpus, store, lex(), no_synonyms(), {}, {});
  CHECK(stats.sentences == 4);
  CHECK(stats.skipped == 1);  // the alerted sentence contributes nothing
  REQUIRE(store.realizations.size() == 2);

  const CorrectRealization& probe = store.realizations[0];
  CHECK(probe.text == "in 2 to 4 mns");
  CHECK(probe.count == 2);
  CHECK(probe.context.head == "heat");

  CHECK(store.realizations[1].text == "to 40 Nm");
  CHECK(store.realizations[1].context.head == "tighten");
}

TEST_CASE("contextual deactivation appears at the threshold, not below") {
  MemoryStore store;
  std::string text = "A location that allows easy viewing during inspection.";
  for (int i = 0; i < 4; ++i) learn_pair(store, text, text);

  auto below = induce(store, lex(), no_synonyms(), Catalog::builtins(), {});
  CHECK(below.deactivations.entries.empty());

  learn_pair(store, text, text);
  auto at = induce(store, lex(), no_synonyms(), Catalog::builtins(), {});
  REQUIRE(at.deactivations.entries.size() == 1);
  const Deactivation& d = at.deactivations.entries[0];
  CHECK(d.id == "d-easy-view");
  CHECK(!d.global);
  CHECK(d.count == 5);
  CHECK(!d.validated);
}

TEST_CASE("one correction in the class cancels its deactivation eligibility") {
  MemoryStore store;
  std::string text = "A location that allows easy viewing during inspection.";
  for (int i = 0; i < 5; ++i) learn_pair(store, text, text);
  CHECK(!induce(store, lex(), no_synonyms(), Catalog::builtins(), {})
             .deactivations.entries.empty());

  learn_pair(store, text, "A location that allows viewing during inspection.");
  CHECK(induce(store, lex(), no_synonyms(), Catalog::builtins(), {})
            .deactivations.entries.empty());
}

TEST_CASE("a validation event survives the rebuild") {
  MemoryStore store;
  std::string text = "A location that allows easy viewing during inspection.";
  for (int i = 0; i < 5; ++i) learn_pair(store, text, text);
  store.validations.push_back({"d-easy-view", store.next_seq()});
  auto derived = induce(store, lex(), no_synonyms(), Catalog::builtins(), {});
  REQUIRE(derived.deactivations.entries.size() == 1);
  CHECK(derived.deactivations.entries[0].validated);
}

TEST_CASE("widespread uncorrected use induces a global deactivation") {
  MemoryStore store;
  std::vector<std::string> sentences = {
      "Most pipes corrode.", "Most valves leak.", "Most sensors drift."};
  for (int round = 0; round < 5; ++round) {
    for (const auto& s : sentences) learn_pair(store, s, s);
  }
  InduceParams p;
  auto derived = induce(store, lex(), no_synonyms(), Catalog::builtins(), p);
  const Deactivation* g = nullptr;
  for (const auto& d : derived.deactivations.entries) {
    if (d.global) g = &d;
  }
  REQUIRE(g != nullptr);
  CHECK(g->id == "g-most");
  CHECK(g->item_lemma == "most");
  CHECK(g->count == 15);
  CHECK(g->classes == 3);
}

TEST_CASE("induce is idempotent for a fixed store") {
  MemoryStore store;
  learn_pair(store, "Progressively heat the probe.",
             "Heat the probe progressively over a 2 to 4 mns period.");
  mine_correct("c", "Heat the probe in 2 to 4 mns.", store, lex(), no_synonyms(), {}, {});
  auto first = induce(store, lex(), no_synonyms(), Catalog::builtins(), {});
  auto second = induce(store, lex(), no_synonyms(), Catalog::builtins(), {});
  CHECK(second.diff_count(first) == 0);
  CHECK(first.serialize("h", true) == second.serialize("h", true));
}

TEST_CASE("recommendations come from corrections whose pattern still matches") {
  MemoryStore store;
  learn_pair(store, "Take-off a few knots above V1.", "Take-off less than 12 knots above V1.");
  auto derived = induce(store, lex(), no_synonyms(), Catalog::builtins(), {});
  REQUIRE(derived.recommendations.size() == 1);
  const RecommendationEntry& rec = derived.recommendations[0];
  CHECK(rec.pattern_id == "P-few");
  CHECK(rec.item_lemma == "a few");
  CHECK(rec.slot == SlotType::value);
  CHECK(rec.text == "12");
  CHECK(rec.freq == 1);

  // The raw pool keeps the writer's literal replacement.
  REQUIRE(derived.raw.size() == 1);
  CHECK(derived.raw[0].text == "less than 12");
}

TEST_CASE("a correction that defeats its pattern feeds only the raw pool") {
  MemoryStore store;
  // The rewrite moved the adverb away from its verb, so the pattern's shape
  // no longer applies to the original; nothing can be sliced out of it.
  learn_pair(store, "The power must be reduced progressively to 65% to reach 180 knots.",
             "Reduce the power to 65% with a reduction of 10% every 30 seconds to reach 180 "
             "knots.");
  auto derived = induce(store, lex(), no_synonyms(), Catalog::builtins(), {});
  CHECK(derived.recommendations.empty());
  REQUIRE(derived.raw.size() == 1);
  CHECK(derived.raw[0].text ==
        "Reduce the power to 65% with a reduction of 10% every 30 seconds");
}

TEST_CASE("the store serializes and parses without loss") {
  MemoryStore store;
  learn_pair(store, "Progressively heat the probe.",
             "Heat the probe progressively over a 2 to 4 mns period.", "alice");
  learn_pair(store, "Park near the gate.", "Park near the gate.", "bob");
  mine_correct("c", "Heat the probe in 2 to 4 mns.\nHeat the probe in 2 to 4 mns.", store, lex(),
               no_synonyms(), {}, {});
  store.validations.push_back({"d-x", store.next_seq()});
  store.config_hash = "cafecafecafecafe";

  std::string text = store.serialize(true);
  MemoryStore back = MemoryStore::parse(text);
  CHECK(back.records == store.records);
  CHECK(back.realizations == store.realizations);
  CHECK(back.validations == store.validations);
  CHECK(back.config_hash == store.config_hash);
  CHECK(back.serialize(true) == text);

  // Counters continue from the parsed contents, so new ids stay unique.
  back.refresh_counters();
  CHECK(back.next_record_id() == 3);
  CHECK(back.next_realization_id() == 2);
  CHECK(back.next_seq() > store.records.back().seq);
}

TEST_CASE("derived tables serialize and parse without loss") {
  MemoryStore store;
  std::string text = "A location that allows easy viewing during inspection.";
  for (int i = 0; i < 5; ++i) learn_pair(store, text, text);
  learn_pair(store, "Take-off a few knots above V1.", "Take-off less than 12 knots above V1.");
  auto derived = induce(store, lex(), no_synonyms(), Catalog::builtins(), {});
  std::string s = derived.serialize("deadbeef00000000", true);
  DerivedTables back = DerivedTables::parse(s);
  CHECK(back.serialize("deadbeef00000000", true) == s);
  CHECK(back.diff_count(derived) == 0);
  REQUIRE(back.deactivations.entries.size() == 1);
  CHECK(back.deactivations.entries[0].id == derived.deactivations.entries[0].id);
}

TEST_CASE("fillers rank by frequency, then recency, then text") {
  std::vector<FillerChoice> fillers = {
      {"in 10 seconds", 1, 9, {"r3"}},
      {"in 30 seconds", 3, 5, {"r1"}},
      {"in 90 seconds", 1, 9, {"r4"}},
      {"in 5 seconds", 1, 12, {"r2"}},
  };
  rank_fillers(fillers);
  REQUIRE(fillers.size() == 4);
  CHECK(fillers[0].text == "in 30 seconds");   // highest frequency wins
  CHECK(fillers[1].text == "in 5 seconds");    // then the newest
  CHECK(fillers[2].text == "in 10 seconds");   // then alphabetical
  CHECK(fillers[3].text == "in 90 seconds");
}

TEST_CASE("ranking is a total order on random filler multisets") {
  std::mt19937 rng(99);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<FillerChoice> fillers;
    size_t n = rng() % 12;
    for (size_t i = 0; i < n; ++i) {
      FillerChoice f;
      f.text = std::string("t") + std::to_string(rng() % 6);
      f.freq = 1 + static_cast<int>(rng() % 4);
      f.last_seq = static_cast<int64_t>(rng() % 10);
      fillers.push_back(f);
    }
    rank_fillers(fillers);
    for (size_t i = 1; i < fillers.size(); ++i) {
      const auto& p = fillers[i - 1];
      const auto& q = fillers[i];
      bool ordered = p.freq > q.freq ||
                     (p.freq == q.freq &&
                      (p.last_seq > q.last_seq ||
                       (p.last_seq == q.last_seq && p.text <= q.text)));
      CHECK(ordered);
    }
  }
}

TEST_CASE("suggestions merge stored corrections with mined realizations") {
  MemoryStore store;
  learn_pair(store, "Progressively heat the probe.",
             "Heat the probe progressively over a 2 to 4 mns period.");
  mine_correct("c", "Heat the probe in 2 to 4 mns.\nHeat the probe in 2 to 4 mns.", store, lex(),
               no_synonyms(), {}, {});
  auto derived = induce(store, lex(), no_synonyms(), Catalog::builtins(), {});

  auto sentences = tokenize("Progressively heat the probe.");
  auto alerts = detect_sentences(sentences, lex(), {}, no_synonyms(), {});
  REQUIRE(alerts.size() == 1);
  auto suggestions = suggest_for_alert(alerts[0], sentences[0], store, derived,
                                       Catalog::builtins(), lex(), no_synonyms(), 2);
  REQUIRE(suggestions.size() == 2);

  const Suggestion& patterned = suggestions[0];
  CHECK(patterned.pattern_id == "P-prog");
  CHECK(patterned.text == "Progressively heat the probe in 2 to 4 mns.");
  REQUIRE(patterned.fillers.size() == 2);
  CHECK(patterned.fillers[0].text == "in 2 to 4 mns");  // mined twice beats stored once
  CHECK(patterned.fillers[0].freq == 2);
  CHECK(patterned.fillers[1].text == "over a 2 to 4 mns period");

  const Suggestion& raw = suggestions[1];
  CHECK(raw.pattern_id == "-");
  CHECK(raw.fillers.size() == 1);
}

TEST_CASE("an empty memory still suggests the pattern shape") {
  MemoryStore store;
  DerivedTables empty;
  auto sentences = tokenize("Progressively heat the probe.");
  auto alerts = detect_sentences(sentences, lex(), {}, no_synonyms(), {});
  REQUIRE(alerts.size() == 1);
  auto suggestions = suggest_for_alert(alerts[0], sentences[0], store, empty,
                                       Catalog::builtins(), lex(), no_synonyms(), 2);
  REQUIRE(!suggestions.empty());
  CHECK(suggestions[0].pattern_id == "P-prog");
  CHECK(suggestions[0].text == "Progressively heat the probe ⟨time_interval⟩.");
  CHECK(suggestions[0].fillers.empty());
}
