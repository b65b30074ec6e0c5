#include <random>

#include "core/detect.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace fuzzlint;
using testutil::lex;
using testutil::no_synonyms;
using testutil::sent;

namespace {

Context ctx_of(const std::string& text, const std::string& item, TokenSpan span) {
  const FuzzyItem* it = lex().lookup_fuzzy(item);
  REQUIRE(it != nullptr);
  return extract_context(sent(text), span, *it, lex(), 4);
}

std::vector<std::string> additional_lemmas(const Context& c) {
  std::vector<std::string> out;
  for (const auto& w : c.additional) out.push_back(w.lemma);
  return out;
}

Context mk(const std::string& item, const std::string& head,
           std::vector<std::string> additional) {
  Context c;
  c.item_lemma = item;
  c.head = head;
  for (auto& a : additional) c.additional.push_back({a, Pos::noun});
  return c;
}

}  // namespace

TEST_CASE("a determiner's head is the following noun") {
  Context c = ctx_of("Take-off a few knots above V1.", "a few", {1, 3});
  CHECK(c.head == "knot");
  CHECK(additional_lemmas(c) == std::vector<std::string>{"take-off", "v1"});
  CHECK(!c.degenerate);
}

TEST_CASE("an item alone in its sentence has a degenerate context") {
  Context c = ctx_of("A few.", "a few", {0, 2});
  CHECK(c.head.empty());
  CHECK(c.degenerate);
  CHECK(c.additional.empty());
}

TEST_CASE("context words are the nearest eligible units, nearest first") {
  Context c = ctx_of("Progressively heat the probe until the chamber sensor reads stable values.",
                     "progressively", {0, 1});
  CHECK(c.head == "heat");
  REQUIRE(c.additional.size() == 4);
  CHECK(additional_lemmas(c) ==
        std::vector<std::string>{"probe", "chamber sensor", "read", "stable"});
  CHECK(c.additional[1].pos == Pos::noun);
  CHECK(c.additional[2].pos == Pos::verb);
  CHECK(c.additional[3].pos == Pos::adjective);
}

TEST_CASE("an adverb takes the nearest verb even when it trails the verb") {
  Context c = ctx_of("The power must be reduced progressively to 65% to reach 180 knots.",
                     "progressively", {5, 6});
  CHECK(c.head == "reduce");
  CHECK(additional_lemmas(c) == std::vector<std::string>{"reach", "power", "knot"});
}

TEST_CASE("an adjective falls back to a preceding noun when nothing follows") {
  Context c = ctx_of("The operation is normal.", "normal", {3, 4});
  CHECK(c.head == "operation");
}

TEST_CASE("a modal verb's head is its following object only") {
  Context c = ctx_of("Minimize fire alarms.", "minimize", {0, 1});
  CHECK(c.head == "fire alarm");

  // No following noun: the head is missing rather than borrowed from before.
  Context d = ctx_of("Alarms minimize.", "minimize", {1, 2});
  CHECK(d.head.empty());
  CHECK(d.degenerate);
}

TEST_CASE("detect flags one occurrence with its severity") {
  auto alerts = detect("d", "Progressively heat the probe.", lex(), {}, no_synonyms(), {});
  REQUIRE(alerts.size() == 1);
  const Alert& a = alerts[0];
  CHECK(a.item_lemma == "progressively");
  CHECK(a.category == FuzzyCategory::manner_adverb);
  CHECK(a.severity == 3);
  CHECK(a.span == TokenSpan{0, 1});
  CHECK(a.char_begin == 0);
  CHECK(a.char_end == 13);
  CHECK(a.context.head == "heat");
}

TEST_CASE("multiword items win over their single-word suffixes") {
  auto alerts = detect("d", "a few of the few options", lex(), {}, no_synonyms(), {});
  REQUIRE(alerts.size() == 2);
  CHECK(alerts[0].item_lemma == "a few");
  CHECK(alerts[0].span == TokenSpan{0, 2});
  CHECK(alerts[1].item_lemma == "few");
  CHECK(alerts[1].span == TokenSpan{4, 5});
}

TEST_CASE("variants alert under their item lemma") {
  auto alerts = detect("d", "Add a couple of screws.", lex(), {}, no_synonyms(), {});
  REQUIRE(alerts.size() == 1);
  CHECK(alerts[0].item_lemma == "a few");
  CHECK(alerts[0].span == TokenSpan{1, 4});
}

TEST_CASE("alerts are ordered by sentence then position and ids run a1, a2, ...") {
  auto alerts =
      detect("d", "Park near the gate.\nProgressively close the pipe.", lex(), {}, no_synonyms(),
             {});
  REQUIRE(alerts.size() == 2);
  CHECK(alerts[0].id == "a1");
  CHECK(alerts[0].sentence_index == 0);
  CHECK(alerts[1].id == "a2");
  CHECK(alerts[1].sentence_index == 1);
}

TEST_CASE("only validated deactivations suppress alerts") {
  Deactivation d;
  d.id = "d-progressively-heat";
  d.item_lemma = "progressively";
  d.repr = mk("progressively", "heat", {"probe"});
  d.k = 2;

  DeactivationSet set;
  set.entries.push_back(d);

  auto before = detect("d", "Progressively heat the probe.", lex(), set, no_synonyms(), {});
  CHECK(before.size() == 1);  // present but not validated

  set.entries[0].validated = true;
  auto after = detect("d", "Progressively heat the probe.", lex(), set, no_synonyms(), {});
  CHECK(after.empty());

  // A different head does not match the deactivation context.
  auto other = detect("d", "Progressively close the pipe.", lex(), set, no_synonyms(), {});
  CHECK(other.size() == 1);
}

TEST_CASE("a global deactivation silences the item everywhere") {
  Deactivation g;
  g.id = "g-progressively";
  g.global = true;
  g.item_lemma = "progressively";
  g.validated = true;
  DeactivationSet set;
  set.entries.push_back(g);

  auto alerts = detect(
      "d", "Progressively heat the probe.\nProgressively close the pipe.\nPark near the gate.",
      lex(), set, no_synonyms(), {});
  REQUIRE(alerts.size() == 1);
  CHECK(alerts[0].item_lemma == "near");
}

TEST_CASE("context_match holds for identical contexts") {
  Context a = mk("progressively", "heat", {"probe", "sensor"});
  CHECK(context_match(a, a, 2, no_synonyms()));
}

TEST_CASE("context_match requires equal heads") {
  Context a = mk("progressively", "pipe", {"x", "y", "z"});
  Context b = mk("progressively", "probe", {"x", "y", "z"});
  CHECK(!context_match(a, b, 2, no_synonyms()));
  CHECK(!context_match(a, b, 0, no_synonyms()));
}

TEST_CASE("context_match requires equal item lemmas") {
  Context a = mk("progressively", "heat", {});
  Context b = mk("carefully", "heat", {});
  CHECK(!context_match(a, b, 0, no_synonyms()));
}

TEST_CASE("context_match counts overlapping additional words against k") {
  Context a = mk("x", "h", {"heat", "probe", "sensor", "valve"});
  Context b = mk("x", "h", {"probe", "heat", "gauge"});
  CHECK(context_match(a, b, 2, no_synonyms()));   // overlap {heat, probe}
  CHECK(context_match(b, a, 2, no_synonyms()));   // symmetric
  CHECK(!context_match(a, b, 3, no_synonyms()));  // needs three shared words

  // k is capped by the smaller context, so sparse contexts still match.
  Context c = mk("x", "h", {"heat"});
  CHECK(context_match(a, c, 2, no_synonyms()));
}

TEST_CASE("synonym sets extend head and word equality") {
  testutil::TempDir tmp("synctx");
  SynonymTable syn = SynonymTable::load_file(tmp.write("s.tsv", "pipe,tube\n"));
  Context a = mk("x", "pipe", {});
  Context b = mk("x", "tube", {});
  CHECK(context_match(a, b, 0, syn));
  Context c = mk("x", "h", {"pipe", "q"});
  Context d = mk("x", "h", {"tube", "q"});
  CHECK(context_match(c, d, 2, syn));
}

TEST_CASE("context_match is symmetric on randomized contexts") {
  std::mt19937 rng(11);
  std::vector<std::string> pool = {"heat", "probe", "pipe", "valve", "sensor", "gauge"};
  for (int trial = 0; trial < 300; ++trial) {
    auto draw = [&](int max_n) {
      std::vector<std::string> words;
      int n = static_cast<int>(rng() % (max_n + 1));
      for (int i = 0; i < n; ++i) words.push_back(pool[rng() % pool.size()]);
      return words;
    };
    Context a = mk("item", pool[rng() % pool.size()], draw(4));
    Context b = mk("item", pool[rng() % pool.size()], draw(4));
    int k = static_cast<int>(rng() % 4);
    CHECK(context_match(a, b, k, no_synonyms()) == context_match(b, a, k, no_synonyms()));
    CHECK(context_match(a, a, k, no_synonyms()));
  }
}

TEST_CASE("alerts never carry more than four context words") {
  std::string doc = testutil::slurp(testutil::fixture_path("manual_original.txt"));
  auto alerts = detect("d", doc, lex(), {}, no_synonyms(), {});
  CHECK(alerts.size() == 11);
  for (const auto& a : alerts) {
    CHECK(a.context.additional.size() <= 4);
    CHECK(a.span.begin < a.span.end);
    for (const auto& w : a.context.additional) {
      CHECK(w.lemma != a.context.head);
      CHECK(w.lemma != a.item_lemma);
    }
  }
}

TEST_CASE("annotate wraps each alerted span in place") {
  std::string text = "Progressively heat the probe.\nPark near the gate.";
  auto alerts = detect("d", text, lex(), {}, no_synonyms(), {});
  CHECK(annotate(text, alerts) ==
        "<fuzzy id=1 sev=3>Progressively</fuzzy> heat the probe.\n"
        "Park <fuzzy id=2 sev=2>near</fuzzy> the gate.");
}
