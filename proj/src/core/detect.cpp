#include "detect.hpp"

#include <algorithm>
#include <map>

#include "util.hpp"

namespace fuzzlint {

const Deactivation* DeactivationSet::find(const std::string& id) const {
  for (const auto& d : entries) {
    if (d.id == id) return &d;
  }
  return nullptr;
}

namespace {

// Distance in units between a unit and the item span; 1 = adjacent.
size_t unit_distance(const ContextUnit& u, TokenSpan span) {
  if (u.begin >= span.end) return u.begin - span.end + 1;
  return span.begin - u.end + 1;
}

bool unit_follows(const ContextUnit& u, TokenSpan span) { return u.begin >= span.end; }

const ContextUnit* nearest(const std::vector<const ContextUnit*>& pool, TokenSpan span) {
  const ContextUnit* best = nullptr;
  size_t best_d = 0;
  bool best_follows = false;
  for (const ContextUnit* u : pool) {
    size_t d = unit_distance(*u, span);
    bool f = unit_follows(*u, span);
    if (!best || d < best_d || (d == best_d && f && !best_follows)) {
      best = u;
      best_d = d;
      best_follows = f;
    }
  }
  return best;
}

const ContextUnit* pick_head(const std::vector<ContextUnit>& units, TokenSpan span,
                             FuzzyCategory cat) {
  std::vector<const ContextUnit*> verbs, nouns_after, nouns_before;
  for (const auto& u : units) {
    if (u.has_pos(Pos::verb)) verbs.push_back(&u);
    if (u.has_pos(Pos::noun)) {
      (unit_follows(u, span) ? nouns_after : nouns_before).push_back(&u);
    }
  }
  switch (cat) {
    case FuzzyCategory::manner_adverb:
    case FuzzyCategory::temporal_location_adverb:
      return nearest(verbs, span);
    case FuzzyCategory::adjective:
    case FuzzyCategory::determiner:
    case FuzzyCategory::noun: {
      if (const ContextUnit* u = nearest(nouns_after, span)) return u;
      return nearest(nouns_before, span);
    }
    case FuzzyCategory::preposition:
    case FuzzyCategory::verb_modal:
      return nearest(nouns_after, span);
  }
  return nullptr;
}

}  // namespace

Context extract_context(const Sentence& s, TokenSpan span, const FuzzyItem& item,
                        const Lexicon& lex, int context_size) {
  Context ctx;
  ctx.item_lemma = item.lemma;

  std::vector<ContextUnit> units;
  for (auto& u : group_compounds(s, lex, span)) {
    if (u.lemma == item.lemma) continue;  // echoes of the item itself
    units.push_back(std::move(u));
  }

  const ContextUnit* head = pick_head(units, span, item.category);
  if (head) {
    ctx.head = head->lemma;
  } else {
    ctx.degenerate = true;
  }

  std::vector<const ContextUnit*> rest;
  for (const auto& u : units) {
    if (&u == head) continue;
    if (head && u.lemma == head->lemma) continue;
    if (!u.eligible_context_word()) continue;
    rest.push_back(&u);
  }
  std::stable_sort(rest.begin(), rest.end(), [&](const ContextUnit* a, const ContextUnit* b) {
    size_t da = unit_distance(*a, span), db = unit_distance(*b, span);
    if (da != db) return da < db;
    bool fa = unit_follows(*a, span), fb = unit_follows(*b, span);
    if (fa != fb) return fa;
    return a->begin < b->begin;
  });
  if (context_size >= 0 && rest.size() > static_cast<size_t>(context_size)) {
    rest.resize(context_size);
  }
  for (const ContextUnit* u : rest) {
    ctx.additional.push_back(ContextWord{u->lemma, u->display_pos()});
  }
  return ctx;
}

bool context_match(const Context& a, const Context& b, int k, const SynonymTable& syn) {
  if (a.item_lemma != b.item_lemma) return false;
  if (!(a.head == b.head || syn.same(a.head, b.head))) return false;
  size_t need = std::min<size_t>(static_cast<size_t>(std::max(k, 0)),
                                 std::min(a.additional.size(), b.additional.size()));
  if (need == 0) return true;
  std::map<std::string, int> pool;
  for (const auto& w : b.additional) ++pool[syn.canon(w.lemma)];
  size_t got = 0;
  for (const auto& w : a.additional) {
    auto it = pool.find(syn.canon(w.lemma));
    if (it != pool.end() && it->second > 0) {
      --it->second;
      ++got;
    }
  }
  return got >= need;
}

std::vector<Alert> detect_sentences(const std::vector<Sentence>& sentences, const Lexicon& lex,
                                    const DeactivationSet& deact, const SynonymTable& syn,
                                    const DetectParams& p) {
  std::vector<Alert> alerts;
  int counter = 0;
  for (const auto& s : sentences) {
    size_t i = 0;
    while (i < s.tokens.size()) {
      const Token& t = s.tokens[i];
      if (is_punct_token(t.surface)) {
        ++i;
        continue;
      }
      std::string low = to_lower(t.surface);
      const FuzzyItem* item = nullptr;
      size_t len = 0;
      for (const std::string& first : {t.lemma, low}) {
        const auto* phrases = lex.phrases_starting(first);
        if (!phrases) continue;
        for (const auto& ph : *phrases) {
          if (i + ph.words.size() > s.tokens.size()) continue;
          bool ok = true;
          for (size_t j = 0; j < ph.words.size() && ok; ++j) {
            const Token& u = s.tokens[i + j];
            ok = ph.words[j] == u.lemma || ph.words[j] == to_lower(u.surface);
          }
          if (ok && (!item || ph.words.size() > len)) {
            item = &lex.items()[ph.item_index];
            len = ph.words.size();
          }
        }
        if (item) break;
      }
      if (!item) {
        ++i;
        continue;
      }

      Alert a;
      a.span = TokenSpan{i, i + len};
      a.doc_id = s.doc_id;
      a.sentence_index = s.index;
      a.char_begin = s.tokens[i].offset;
      const Token& last = s.tokens[i + len - 1];
      a.char_end = last.offset + last.surface.size();
      a.item_lemma = item->lemma;
      a.category = item->category;
      a.severity = item->severity;
      a.context = extract_context(s, a.span, *item, lex, p.context_size);

      bool suppressed = false;
      for (const auto& d : deact.entries) {
        if (!d.validated || d.item_lemma != a.item_lemma) continue;
        if (d.global || context_match(a.context, d.repr, d.k, syn)) {
          suppressed = true;
          break;
        }
      }
      if (!suppressed) {
        a.id = "a" + std::to_string(++counter);
        alerts.push_back(std::move(a));
      }
      i += len;
    }
  }
  return alerts;
}

std::vector<Alert> detect(const std::string& doc_id, const std::string& text, const Lexicon& lex,
                          const DeactivationSet& deact, const SynonymTable& syn,
                          const DetectParams& p) {
  return detect_sentences(tokenize(text, doc_id), lex, deact, syn, p);
}

std::string annotate(const std::string& text, const std::vector<Alert>& alerts) {
  std::vector<const Alert*> sorted;
  for (const auto& a : alerts) sorted.push_back(&a);
  std::sort(sorted.begin(), sorted.end(),
            [](const Alert* a, const Alert* b) { return a->char_begin < b->char_begin; });
  std::string out;
  out.reserve(text.size() + sorted.size() * 24);
  size_t pos = 0;
  for (const Alert* a : sorted) {
    out += text.substr(pos, a->char_begin - pos);
    std::string num = a->id;
    if (!num.empty() && num[0] == 'a') num.erase(0, 1);
    out += "<fuzzy id=" + num + " sev=" + std::to_string(a->severity) + ">";
    out += text.substr(a->char_begin, a->char_end - a->char_begin);
    out += "</fuzzy>";
    pos = a->char_end;
  }
  out += text.substr(pos);
  return out;
}

}  // namespace fuzzlint
