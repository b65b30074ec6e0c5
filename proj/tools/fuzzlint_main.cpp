// Command-line front end.  Talks to the engine exclusively through the
// public C interface so it doubles as a worked example of fuzzlint.h.

#include <cstdio>
#include <cstring>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "fuzzlint.h"

namespace {

constexpr const char* kUsage = R"(usage: fuzzlint [options] <command> [args]

commands:
  detect FILE...             scan documents, write annotated copies + alerts.txt
  learn ORIGINAL CORRECTED   pair a document with its corrected version
  mine-correct FILE...       harvest quantity phrasing from clean sentences
  induce                     rebuild deactivations and recommendations
  suggest FILE...            propose rewrites for every live alert
  validate ID                approve an induced deactivation
  report [FILE...]           corpus overview (also written to report.txt)

options:
  --config PATH        read key=value configuration first
  --store PATH         memory store location (default fuzzlint.store)
  --lexicon PATH       fuzzy term list
  --words PATH         word category table
  --stopwords PATH     stopword list
  --synonyms PATH      synonym sets
  --patterns PATH      extra correction patterns
  --out-dir DIR        where output files go (default .)
  --min-severity N     exit 1 only when an alert reaches N (default 1)
  --writer NAME        who corrected the text (learn only)
  --stable-output      deterministic file output, no timestamps
  -h, --help           this text

exit status: 0 clean, 1 alerts at or above --min-severity, 2 error
)";

struct Options {
  std::string command;
  std::vector<std::string> args;
  std::string config_path;
  std::string store_path = "fuzzlint.store";
  std::string lexicon, words, stopwords, synonyms, patterns;
  std::string out_dir = ".";
  std::string writer;
  int min_severity = 1;
  bool stable = false;
};

int fail_usage(const std::string& msg) {
  std::cerr << "fuzzlint: " << msg << "\n" << kUsage;
  return 2;
}

bool read_file(const std::string& path, std::string& out, std::string& err) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    err = "cannot read " + path;
    return false;
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  out = ss.str();
  return true;
}

bool write_file(const std::string& path, const std::string& content, std::string& err) {
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out || !(out << content) || !out.flush()) {
      err = "cannot write " + tmp;
      std::remove(tmp.c_str());
      return false;
    }
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    err = "cannot move " + tmp + " to " + path;
    std::remove(tmp.c_str());
    return false;
  }
  return true;
}

std::string stem_of(const std::string& path) {
  size_t slash = path.find_last_of('/');
  std::string base = slash == std::string::npos ? path : path.substr(slash + 1);
  size_t dot = base.find_last_of('.');
  if (dot != std::string::npos && dot > 0) base = base.substr(0, dot);
  return base;
}

std::string take_string(char* s) {
  std::string out = s ? s : "";
  fzl_string_free(s);
  return out;
}

struct EngineGuard {
  fzl_engine* eng = nullptr;
  ~EngineGuard() { fzl_engine_close(eng); }
};

int parse_args(int argc, char** argv, Options& opt) {
  std::vector<std::string> rest;
  for (int i = 1; i < argc; ++i) {
    std::string arg = argv[i];
    auto value = [&](const char* name) -> std::string {
      size_t eq = arg.find('=');
      if (eq != std::string::npos) return arg.substr(eq + 1);
      if (i + 1 >= argc) {
        std::cerr << "fuzzlint: " << name << " needs a value\n";
        std::exit(2);
      }
      return argv[++i];
    };
    auto is = [&](const char* name) {
      return arg == name || arg.rfind(std::string(name) + "=", 0) == 0;
    };
    if (arg == "-h" || arg == "--help") {
      std::cout << kUsage;
      std::exit(0);
    } else if (is("--config")) {
      opt.config_path = value("--config");
    } else if (is("--store")) {
      opt.store_path = value("--store");
    } else if (is("--lexicon")) {
      opt.lexicon = value("--lexicon");
    } else if (is("--words")) {
      opt.words = value("--words");
    } else if (is("--stopwords")) {
      opt.stopwords = value("--stopwords");
    } else if (is("--synonyms")) {
      opt.synonyms = value("--synonyms");
    } else if (is("--patterns")) {
      opt.patterns = value("--patterns");
    } else if (is("--out-dir")) {
      opt.out_dir = value("--out-dir");
    } else if (is("--writer")) {
      opt.writer = value("--writer");
    } else if (is("--min-severity")) {
      std::string v = value("--min-severity");
      char* end = nullptr;
      long n = std::strtol(v.c_str(), &end, 10);
      if (!end || *end != '\0' || n < 1 || n > 3) {
        std::cerr << "fuzzlint: --min-severity must be 1, 2 or 3\n";
        std::exit(2);
      }
      opt.min_severity = static_cast<int>(n);
    } else if (arg == "--stable-output") {
      opt.stable = true;
    } else if (arg.rfind("--", 0) == 0) {
      return fail_usage("unknown option " + arg);
    } else {
      rest.push_back(arg);
    }
  }
  if (rest.empty()) return fail_usage("missing command");
  opt.command = rest.front();
  opt.args.assign(rest.begin() + 1, rest.end());
  return -1;
}

fzl_config* build_config(const Options& opt, std::string& err) {
  fzl_config* cfg = fzl_config_new();
  auto apply = [&](const char* key, const std::string& v) {
    if (v.empty()) return true;
    if (fzl_config_set(cfg, key, v.c_str()) != FZL_OK) {
      err = fzl_config_error(cfg);
      return false;
    }
    return true;
  };
  if (!opt.config_path.empty() &&
      fzl_config_load_file(cfg, opt.config_path.c_str()) != FZL_OK) {
    err = fzl_config_error(cfg);
    fzl_config_free(cfg);
    return nullptr;
  }
  // Command-line flags override anything the file said.
  bool ok = apply("store", opt.store_path) && apply("lexicon", opt.lexicon) &&
            apply("words", opt.words) && apply("stopwords", opt.stopwords) &&
            apply("synonyms", opt.synonyms) && apply("patterns", opt.patterns) &&
            (!opt.stable || apply("stable_output", "1"));
  if (!ok) {
    fzl_config_free(cfg);
    return nullptr;
  }
  return cfg;
}

int report_engine_error(const char* what, fzl_engine* eng) {
  std::cerr << "fuzzlint: " << what << ": " << fzl_engine_error(eng) << "\n";
  return 2;
}

void print_warnings(fzl_engine* eng) {
  int n = fzl_engine_warning_count(eng);
  for (int i = 0; i < n; ++i) {
    std::cerr << "fuzzlint: warning: " << fzl_engine_warning(eng, i) << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  Options opt;
  int early = parse_args(argc, argv, opt);
  if (early >= 0) return early;

  const std::string& cmd = opt.command;
  bool writable = cmd == "learn" || cmd == "mine-correct" || cmd == "induce" || cmd == "validate";
  if (cmd != "detect" && cmd != "learn" && cmd != "mine-correct" && cmd != "induce" &&
      cmd != "suggest" && cmd != "validate" && cmd != "report") {
    return fail_usage("unknown command \"" + cmd + "\"");
  }
  if (cmd == "learn" && opt.args.size() != 2) return fail_usage("learn needs ORIGINAL CORRECTED");
  if (cmd == "learn" && opt.writer.empty()) return fail_usage("learn needs --writer NAME");
  if (cmd == "validate" && opt.args.size() != 1) return fail_usage("validate needs one id");
  if ((cmd == "detect" || cmd == "mine-correct" || cmd == "suggest") && opt.args.empty()) {
    return fail_usage(cmd + " needs at least one file");
  }
  if ((cmd == "induce" || cmd == "validate") && cmd == "induce" && !opt.args.empty()) {
    return fail_usage("induce takes no arguments");
  }

  std::string err;
  fzl_config* cfg = build_config(opt, err);
  if (!cfg) {
    std::cerr << "fuzzlint: " << err << "\n";
    return 2;
  }

  fzl_status status = FZL_OK;
  char* open_err = nullptr;
  EngineGuard guard;
  guard.eng = fzl_engine_open(cfg, writable ? 1 : 0, &status, &open_err);
  fzl_config_free(cfg);
  if (!guard.eng) {
    std::cerr << "fuzzlint: cannot open engine: " << take_string(open_err) << "\n";
    return 2;
  }
  fzl_string_free(open_err);
  print_warnings(guard.eng);
  fzl_engine* eng = guard.eng;

  auto out_path = [&](const std::string& name) { return opt.out_dir + "/" + name; };

  if (cmd == "detect") {
    int total = 0, reaching = 0;
    std::string all_reports;
    for (const auto& path : opt.args) {
      std::string text;
      if (!read_file(path, text, err)) {
        std::cerr << "fuzzlint: " << err << "\n";
        return 2;
      }
      char* annotated = nullptr;
      char* report = nullptr;
      int alerts = 0, at_or_above = 0, max_sev = 0;
      if (fzl_detect(eng, path.c_str(), text.c_str(), opt.min_severity, &annotated, &report,
                     &alerts, &at_or_above, &max_sev) != FZL_OK) {
        return report_engine_error("detect", eng);
      }
      std::string ann = take_string(annotated);
      all_reports += take_string(report);
      if (!write_file(out_path(stem_of(path) + ".annotated.txt"), ann, err)) {
        std::cerr << "fuzzlint: " << err << "\n";
        return 2;
      }
      total += alerts;
      reaching += at_or_above;
    }
    if (!write_file(out_path("alerts.txt"), all_reports, err)) {
      std::cerr << "fuzzlint: " << err << "\n";
      return 2;
    }
    std::cout << "detect files=" << opt.args.size() << " alerts=" << total
              << " at-or-above=" << reaching << " min-severity=" << opt.min_severity << "\n";
    return reaching > 0 ? 1 : 0;
  }

  if (cmd == "learn") {
    std::string original, corrected;
    if (!read_file(opt.args[0], original, err) || !read_file(opt.args[1], corrected, err)) {
      std::cerr << "fuzzlint: " << err << "\n";
      return 2;
    }
    char* summary = nullptr;
    if (fzl_learn(eng, opt.args[0].c_str(), original.c_str(), corrected.c_str(),
                  opt.writer.c_str(), &summary) != FZL_OK) {
      return report_engine_error("learn", eng);
    }
    if (fzl_save(eng) != FZL_OK) return report_engine_error("save", eng);
    std::cout << take_string(summary) << "\n";
    return 0;
  }

  if (cmd == "mine-correct") {
    for (const auto& path : opt.args) {
      std::string text;
      if (!read_file(path, text, err)) {
        std::cerr << "fuzzlint: " << err << "\n";
        return 2;
      }
      char* summary = nullptr;
      if (fzl_mine_correct(eng, path.c_str(), text.c_str(), &summary) != FZL_OK) {
        return report_engine_error("mine-correct", eng);
      }
      std::cout << take_string(summary) << "\n";
    }
    if (fzl_save(eng) != FZL_OK) return report_engine_error("save", eng);
    return 0;
  }

  if (cmd == "induce") {
    char* summary = nullptr;
    if (fzl_induce(eng, &summary) != FZL_OK) return report_engine_error("induce", eng);
    if (fzl_save(eng) != FZL_OK) return report_engine_error("save", eng);
    std::cout << take_string(summary) << "\n";
    return 0;
  }

  if (cmd == "validate") {
    char* summary = nullptr;
    if (fzl_validate(eng, opt.args[0].c_str(), &summary) != FZL_OK) {
      return report_engine_error("validate", eng);
    }
    if (fzl_save(eng) != FZL_OK) return report_engine_error("save", eng);
    std::cout << take_string(summary) << "\n";
    return 0;
  }

  if (cmd == "suggest") {
    std::string all;
    int count = 0;
    for (const auto& path : opt.args) {
      std::string text;
      if (!read_file(path, text, err)) {
        std::cerr << "fuzzlint: " << err << "\n";
        return 2;
      }
      char* report = nullptr;
      if (fzl_suggest(eng, path.c_str(), text.c_str(), &report) != FZL_OK) {
        return report_engine_error("suggest", eng);
      }
      std::string rep = take_string(report);
      all += rep;
      for (size_t pos = 0; (pos = rep.find("\nsuggestion ", pos)) != std::string::npos;
           pos += 12) {
        ++count;
      }
    }
    if (!write_file(out_path("suggestions.txt"), all, err)) {
      std::cerr << "fuzzlint: " << err << "\n";
      return 2;
    }
    std::cout << "suggest files=" << opt.args.size() << " suggestions=" << count << "\n";
    return 0;
  }

  // report
  std::vector<std::string> names, texts;
  for (const auto& path : opt.args) {
    std::string text;
    if (!read_file(path, text, err)) {
      std::cerr << "fuzzlint: " << err << "\n";
      return 2;
    }
    names.push_back(path);
    texts.push_back(std::move(text));
  }
  std::vector<const char*> name_ptrs, text_ptrs;
  for (size_t i = 0; i < names.size(); ++i) {
    name_ptrs.push_back(names[i].c_str());
    text_ptrs.push_back(texts[i].c_str());
  }
  char* report = nullptr;
  if (fzl_report(eng, name_ptrs.empty() ? nullptr : name_ptrs.data(),
                 text_ptrs.empty() ? nullptr : text_ptrs.data(),
                 static_cast<int>(names.size()), &report) != FZL_OK) {
    return report_engine_error("report", eng);
  }
  std::string rep = take_string(report);
  if (!write_file(out_path("report.txt"), rep, err)) {
    std::cerr << "fuzzlint: " << err << "\n";
    return 2;
  }
  std::cout << rep;
  return 0;
}
