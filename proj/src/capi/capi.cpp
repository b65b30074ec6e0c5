#include "fuzzlint.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <string>
#include <vector>

#include "../core/engine.hpp"
#include "../core/util.hpp"

using fuzzlint::Config;
using fuzzlint::Engine;

struct fzl_config {
  Config cfg;
  std::string error;
};

struct fzl_engine {
  std::unique_ptr<Engine> engine;
  std::string error;
};

namespace {

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

fzl_status status_of(const std::exception& e) {
  if (dynamic_cast<const fuzzlint::LockedError*>(&e)) return FZL_ERR_LOCKED;
  if (dynamic_cast<const fuzzlint::NotFoundError*>(&e)) return FZL_ERR_NOT_FOUND;
  if (dynamic_cast<const fuzzlint::StateError*>(&e)) return FZL_ERR_STATE;
  if (dynamic_cast<const fuzzlint::MismatchError*>(&e)) return FZL_ERR_MISMATCH;
  if (dynamic_cast<const fuzzlint::IoError*>(&e)) return FZL_ERR_IO;
  if (dynamic_cast<const fuzzlint::ParseError*>(&e)) return FZL_ERR_PARSE;
  return FZL_ERR_INVALID_ARG;  // InputError and anything unexpected
}

template <typename Fn>
fzl_status guarded(fzl_engine* eng, Fn&& fn) {
  if (!eng || !eng->engine) return FZL_ERR_INVALID_ARG;
  try {
    fn(*eng->engine);
    eng->error.clear();
    return FZL_OK;
  } catch (const std::exception& e) {
    eng->error = e.what();
    return status_of(e);
  }
}

}  // namespace

extern "C" {

const char* fzl_version(void) { return "1.0.0"; }

fzl_config* fzl_config_new(void) { return new fzl_config(); }

void fzl_config_free(fzl_config* cfg) { delete cfg; }

fzl_status fzl_config_set(fzl_config* cfg, const char* key, const char* value) {
  if (!cfg) return FZL_ERR_INVALID_ARG;
  if (!key || !value) {
    cfg->error = "key and value must not be NULL";
    return FZL_ERR_INVALID_ARG;
  }
  try {
    cfg->cfg.set(key, value);
    cfg->error.clear();
    return FZL_OK;
  } catch (const std::exception& e) {
    cfg->error = e.what();
    return status_of(e);
  }
}

fzl_status fzl_config_load_file(fzl_config* cfg, const char* path) {
  if (!cfg) return FZL_ERR_INVALID_ARG;
  if (!path) {
    cfg->error = "path must not be NULL";
    return FZL_ERR_INVALID_ARG;
  }
  try {
    cfg->cfg.load_file(path);
    cfg->error.clear();
    return FZL_OK;
  } catch (const std::exception& e) {
    cfg->error = e.what();
    return status_of(e);
  }
}

const char* fzl_config_error(const fzl_config* cfg) { return cfg ? cfg->error.c_str() : ""; }

fzl_engine* fzl_engine_open(const fzl_config* cfg, int writable, fzl_status* status,
                            char** errmsg) {
  auto set = [&](fzl_status st, const std::string& msg) {
    if (status) *status = st;
    if (errmsg) *errmsg = dup_string(msg);
  };
  if (!cfg) {
    set(FZL_ERR_INVALID_ARG, "configuration handle is NULL");
    return nullptr;
  }
  try {
    auto* eng = new fzl_engine();
    eng->engine = std::make_unique<Engine>(cfg->cfg, writable != 0);
    if (status) *status = FZL_OK;
    if (errmsg) *errmsg = nullptr;
    return eng;
  } catch (const std::exception& e) {
    set(status_of(e), e.what());
    return nullptr;
  }
}

void fzl_engine_close(fzl_engine* eng) { delete eng; }

const char* fzl_engine_error(const fzl_engine* eng) { return eng ? eng->error.c_str() : ""; }

int fzl_engine_warning_count(const fzl_engine* eng) {
  if (!eng || !eng->engine) return 0;
  return static_cast<int>(eng->engine->warnings().size());
}

const char* fzl_engine_warning(const fzl_engine* eng, int index) {
  if (!eng || !eng->engine) return nullptr;
  const auto& w = eng->engine->warnings();
  if (index < 0 || static_cast<size_t>(index) >= w.size()) return nullptr;
  return w[static_cast<size_t>(index)].c_str();
}

fzl_status fzl_detect(fzl_engine* eng, const char* doc_id, const char* text, int min_severity,
                      char** annotated, char** report, int* alerts, int* at_or_above,
                      int* max_severity) {
  if (!doc_id || !text) {
    if (eng) eng->error = "doc_id and text must not be NULL";
    return FZL_ERR_INVALID_ARG;
  }
  return guarded(eng, [&](Engine& e) {
    auto out = e.run_detect(doc_id, text, min_severity);
    if (annotated) *annotated = dup_string(out.annotated);
    if (report) *report = dup_string(out.report);
    if (alerts) *alerts = out.alerts;
    if (at_or_above) *at_or_above = out.at_or_above;
    if (max_severity) *max_severity = out.max_severity;
  });
}

fzl_status fzl_learn(fzl_engine* eng, const char* doc_id, const char* original,
                     const char* corrected, const char* writer, char** summary) {
  if (!doc_id || !original || !corrected || !writer) {
    if (eng) eng->error = "doc_id, original, corrected and writer must not be NULL";
    return FZL_ERR_INVALID_ARG;
  }
  return guarded(eng, [&](Engine& e) {
    std::string s = e.run_learn(doc_id, original, corrected, writer);
    if (summary) *summary = dup_string(s);
  });
}

fzl_status fzl_mine_correct(fzl_engine* eng, const char* doc_id, const char* text,
                            char** summary) {
  if (!doc_id || !text) {
    if (eng) eng->error = "doc_id and text must not be NULL";
    return FZL_ERR_INVALID_ARG;
  }
  return guarded(eng, [&](Engine& e) {
    std::string s = e.run_mine(doc_id, text);
    if (summary) *summary = dup_string(s);
  });
}

fzl_status fzl_induce(fzl_engine* eng, char** summary) {
  return guarded(eng, [&](Engine& e) {
    std::string s = e.run_induce();
    if (summary) *summary = dup_string(s);
  });
}

fzl_status fzl_validate(fzl_engine* eng, const char* deactivation_id, char** summary) {
  if (!deactivation_id) {
    if (eng) eng->error = "deactivation_id must not be NULL";
    return FZL_ERR_INVALID_ARG;
  }
  return guarded(eng, [&](Engine& e) {
    std::string s = e.run_validate(deactivation_id);
    if (summary) *summary = dup_string(s);
  });
}

fzl_status fzl_suggest(fzl_engine* eng, const char* doc_id, const char* text, char** report) {
  if (!doc_id || !text) {
    if (eng) eng->error = "doc_id and text must not be NULL";
    return FZL_ERR_INVALID_ARG;
  }
  return guarded(eng, [&](Engine& e) {
    std::string s = e.run_suggest(doc_id, text);
    if (report) *report = dup_string(s);
  });
}

fzl_status fzl_report(fzl_engine* eng, const char* const* doc_ids, const char* const* texts,
                      int count, char** report) {
  if (count < 0 || (count > 0 && (!doc_ids || !texts))) {
    if (eng) eng->error = "doc_ids/texts must cover count entries";
    return FZL_ERR_INVALID_ARG;
  }
  return guarded(eng, [&](Engine& e) {
    std::vector<std::pair<std::string, std::string>> docs;
    for (int i = 0; i < count; ++i) {
      if (!doc_ids[i] || !texts[i]) throw fuzzlint::InputError("NULL entry in document list");
      docs.emplace_back(doc_ids[i], texts[i]);
    }
    std::string s = e.run_report(docs);
    if (report) *report = dup_string(s);
  });
}

fzl_status fzl_save(fzl_engine* eng) {
  return guarded(eng, [&](Engine& e) { e.save(); });
}

void fzl_string_free(char* s) { std::free(s); }

}  // extern "C"
