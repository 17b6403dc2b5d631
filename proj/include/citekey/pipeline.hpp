#ifndef CITEKEY_PIPELINE_HPP_
#define CITEKEY_PIPELINE_HPP_

// End-to-end analysis: load -> partition -> sample -> count -> keyness ->
// affect -> analytics. Every stage is a free function so that the CLI can
// run them one at a time with files in between.

#include <algorithm>
#include <charconv>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "citekey/affect.hpp"
#include "citekey/analytics.hpp"
#include "citekey/analyzer.hpp"
#include "citekey/collocation.hpp"
#include "citekey/corpus.hpp"
#include "citekey/error.hpp"
#include "citekey/keyness.hpp"
#include "citekey/tagger.hpp"
#include "citekey/text.hpp"
#include "json.hpp"

namespace citekey {

inline constexpr std::string_view kToolName = "citekey";
inline constexpr std::string_view kToolVersion = "1.0.0";

struct AnalysisConfig {
  std::vector<std::string> inputs;
  std::string format = "auto";  // auto | jsonl | csv
  FieldMap fields;
  std::set<std::string> labels;  // empty: accept any label
  std::size_t sample_n = 0;      // 0: use every statement
  std::uint64_t seed = 1;
  std::vector<int> orders = {1, 2, 3};
  std::size_t window = 5;
  std::size_t min_freq = 3;
  std::string min_freq_scope = "subcorpus";  // subcorpus | global
  double ll_threshold = kDefaultLlThreshold;
  std::string mode = "one-vs-rest";  // one-vs-rest | pairwise
  bool include_underused = false;
  bool keep_numerals = false;
  std::string posdist_mode = "tokens";  // tokens | presence
  std::size_t report_top = 10;
  std::string stopwords;  // empty: built-in list
  std::string lexicon;
  std::string tagger_model;
  std::string out;
  std::set<std::string> emit = {"csv", "json", "markdown"};
  std::size_t threads = 1;
  bool strict = false;

  bool emits(const std::string& f) const { return emit.contains(f); }
  int max_order() const { return orders.empty() ? 0 : *std::max_element(orders.begin(), orders.end()); }
  bool operator==(const AnalysisConfig&) const = default;
};

namespace pipeline_detail {

inline std::vector<std::string> split_list(std::string_view s) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    auto comma = s.find(',', start);
    if (comma == std::string_view::npos) comma = s.size();
    const auto item = corpus_detail::trim(s.substr(start, comma - start));
    if (!item.empty()) out.emplace_back(item);
    start = comma + 1;
  }
  return out;
}

template <typename T>
T parse_uint(const std::string& key, std::string_view v) {
  T out{};
  const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
  if (v.empty() || res.ec != std::errc{} || res.ptr != v.data() + v.size()) {
    throw UsageError("config", key + ": expected a non-negative integer, got '" + std::string(v) + "'");
  }
  return out;
}

inline double parse_real(const std::string& key, std::string_view v) {
  double out = 0.0;
  const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
  if (v.empty() || res.ec != std::errc{} || res.ptr != v.data() + v.size()) {
    throw UsageError("config", key + ": expected a number, got '" + std::string(v) + "'");
  }
  return out;
}

inline bool parse_bool(const std::string& key, std::string_view v) {
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw UsageError("config", key + ": expected true or false, got '" + std::string(v) + "'");
}

inline std::string one_of(const std::string& key, std::string_view v, std::initializer_list<std::string_view> allowed) {
  for (auto a : allowed) {
    if (v == a) return std::string(v);
  }
  std::string msg = key + ": expected one of";
  for (auto a : allowed) msg += " " + std::string(a);
  throw UsageError("config", msg + ", got '" + std::string(v) + "'");
}

inline std::string format_real(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

template <typename Range>
std::string join(const Range& r, std::string_view sep = ",") {
  std::string out;
  for (const auto& x : r) {
    if (!out.empty()) out += sep;
    if constexpr (std::is_arithmetic_v<std::decay_t<decltype(x)>>) {
      out += std::to_string(x);
    } else {
      out += x;
    }
  }
  return out;
}

}  // namespace pipeline_detail

// Sets one option by its flag name (without the leading dashes). Used for
// both config files and command-line flags, so the two accept the same
// spellings and values.
inline void apply_config_entry(AnalysisConfig& c, const std::string& key, const std::string& value) {
  using namespace pipeline_detail;
  const std::string_view v = corpus_detail::trim(value);
  if (key == "input") {
    c.inputs = split_list(v);
  } else if (key == "format") {
    c.format = one_of(key, v, {"auto", "jsonl", "csv"});
  } else if (key == "id-field") {
    c.fields.id = v;
  } else if (key == "text-field") {
    c.fields.text = v;
  } else if (key == "label-field") {
    c.fields.label = v;
  } else if (key == "labels") {
    const auto l = split_list(v);
    c.labels = {l.begin(), l.end()};
  } else if (key == "sample-n") {
    c.sample_n = parse_uint<std::size_t>(key, v);
  } else if (key == "seed") {
    c.seed = parse_uint<std::uint64_t>(key, v);
  } else if (key == "orders") {
    std::set<int> seen;
    for (const auto& o : split_list(v)) seen.insert(parse_uint<int>(key, o));
    c.orders = {seen.begin(), seen.end()};
  } else if (key == "window") {
    c.window = parse_uint<std::size_t>(key, v);
  } else if (key == "min-freq") {
    c.min_freq = parse_uint<std::size_t>(key, v);
  } else if (key == "min-freq-scope") {
    c.min_freq_scope = one_of(key, v, {"subcorpus", "global"});
  } else if (key == "ll-threshold") {
    c.ll_threshold = parse_real(key, v);
  } else if (key == "mode") {
    c.mode = one_of(key, v, {"one-vs-rest", "pairwise"});
  } else if (key == "include-underused") {
    c.include_underused = parse_bool(key, v);
  } else if (key == "keep-numerals") {
    c.keep_numerals = parse_bool(key, v);
  } else if (key == "posdist-mode") {
    c.posdist_mode = one_of(key, v, {"tokens", "presence"});
  } else if (key == "report-top") {
    c.report_top = parse_uint<std::size_t>(key, v);
  } else if (key == "stopwords") {
    c.stopwords = v;
  } else if (key == "lexicon") {
    c.lexicon = v;
  } else if (key == "tagger-model") {
    c.tagger_model = v;
  } else if (key == "out") {
    c.out = v;
  } else if (key == "emit") {
    std::set<std::string> e;
    for (const auto& f : split_list(v)) e.insert(one_of(key, f, {"csv", "json", "markdown"}));
    c.emit = std::move(e);
  } else if (key == "threads") {
    c.threads = parse_uint<std::size_t>(key, v);
  } else if (key == "strict") {
    c.strict = parse_bool(key, v);
  } else {
    throw UsageError("config", "unknown option '" + key + "'");
  }
}

// key=value lines; '#' starts a comment line.
inline void apply_config_text(AnalysisConfig& c, std::string_view text, const std::string& source = "<config>") {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto t = corpus_detail::trim(line);
    if (t.empty() || t.front() == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string_view::npos) {
      throw UsageError("config", source + " line " + std::to_string(lineno) + ": expected key=value");
    }
    apply_config_entry(c, std::string(corpus_detail::trim(t.substr(0, eq))), std::string(t.substr(eq + 1)));
  }
}

inline void apply_config_file(AnalysisConfig& c, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("config", "cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  apply_config_text(c, ss.str(), path);
}

inline void validate(const AnalysisConfig& c) {
  if (c.orders.empty()) throw UsageError("config", "orders must not be empty");
  for (int o : c.orders) {
    if (o < 1 || o > 3) throw UsageError("config", "orders must be within {1,2,3}");
  }
  if (c.window < static_cast<std::size_t>(c.max_order())) {
    throw UsageError("config", "window " + std::to_string(c.window) + " is smaller than the largest order " +
                                   std::to_string(c.max_order()));
  }
  if (c.min_freq < 1) throw UsageError("config", "min-freq must be >= 1");
  if (!(c.ll_threshold >= 0.0)) throw UsageError("config", "ll-threshold must be >= 0");
  if (c.threads < 1) throw UsageError("config", "threads must be >= 1");
}

// Parameters that determine analysis results. Paths, output location,
// formats and thread count are excluded: they do not change any number.
inline nlohmann::ordered_json config_echo(const AnalysisConfig& c) {
  nlohmann::ordered_json j;
  j["labels"] = pipeline_detail::join(c.labels);
  j["sample-n"] = c.sample_n;
  j["seed"] = c.seed;
  j["orders"] = pipeline_detail::join(c.orders);
  j["window"] = c.window;
  j["min-freq"] = c.min_freq;
  j["min-freq-scope"] = c.min_freq_scope;
  j["ll-threshold"] = c.ll_threshold;
  j["mode"] = c.mode;
  j["include-underused"] = c.include_underused;
  j["keep-numerals"] = c.keep_numerals;
  j["posdist-mode"] = c.posdist_mode;
  j["report-top"] = c.report_top;
  return j;
}

// Inverse of config_echo, applied on top of `base`.
inline void apply_config_echo(AnalysisConfig& c, const nlohmann::ordered_json& echo) {
  if (!echo.is_object()) throw DataError("load", "config echo is not an object");
  for (const auto& [key, value] : echo.items()) {
    std::string s;
    if (value.is_string()) {
      s = value.get<std::string>();
    } else if (value.is_boolean()) {
      s = value.get<bool>() ? "true" : "false";
    } else if (value.is_number_float()) {
      s = pipeline_detail::format_real(value.get<double>());
    } else {
      s = value.dump();
    }
    apply_config_entry(c, key, s);
  }
}

struct Versions {
  std::string tagger;
  std::string lexicon;
  std::string stopwords;

  bool operator==(const Versions&) const = default;
};

// Immutable models shared by all stages.
struct AnalysisResources {
  StopwordSet stops;
  TaggerModel tagger;
  AffectLexicon lexicon;
  Versions versions;
  bool has_tagger = false;
  bool has_lexicon = false;
};

inline std::string stopwords_version(const AnalysisConfig& c, const StopwordSet& s) {
  if (c.stopwords.empty()) return "builtin-" + std::to_string(s.size());
  auto name = c.stopwords;
  const auto slash = name.find_last_of('/');
  if (slash != std::string::npos) name = name.substr(slash + 1);
  return "file:" + name + "-" + std::to_string(s.size());
}

struct ResourceNeeds {
  bool tagger = true;
  bool lexicon = true;
};

inline AnalysisResources load_resources(const AnalysisConfig& c, ResourceNeeds needs = {}) {
  AnalysisResources r;
  r.stops = c.stopwords.empty() ? default_stopwords() : load_stopwords(c.stopwords);
  r.versions.stopwords = stopwords_version(c, r.stops);
  if (needs.tagger) {
    if (c.tagger_model.empty()) throw UsageError("config", "no tagger model configured");
    r.tagger = load_tagger_model(c.tagger_model);
    r.versions.tagger = r.tagger.version();
    r.has_tagger = true;
  }
  if (needs.lexicon) {
    if (c.lexicon.empty()) throw UsageError("config", "no affect lexicon configured");
    r.lexicon = load_affect_lexicon(c.lexicon);
    r.versions.lexicon = r.lexicon.version();
    r.has_lexicon = true;
  }
  return r;
}

inline std::string input_format(const AnalysisConfig& c, const std::string& path) {
  if (c.format != "auto") return c.format;
  return path.ends_with(".csv") ? "csv" : "jsonl";
}

// Loads and concatenates every input; ids must be unique across inputs.
inline LabeledCorpus load_corpus(const AnalysisConfig& c, LoadReport* report = nullptr,
                                 std::function<void(const std::string&)> on_warning = {}) {
  if (c.inputs.empty()) throw UsageError("load", "no input given");
  LoadOptions opts;
  opts.strict = c.strict;
  opts.allowed_labels = c.labels;
  opts.on_warning = std::move(on_warning);
  LabeledCorpus all;
  LoadReport total;
  std::set<std::string> ids;
  for (const auto& path : c.inputs) {
    LoadReport rep;
    LabeledCorpus part = input_format(c, path) == "csv" ? load_csv(path, c.fields, opts, &rep)
                                                        : load_jsonl(path, c.fields, opts, &rep);
    total.skipped += rep.skipped;
    for (auto& s : part.statements) {
      if (!ids.insert(s.id).second) {
        const std::string msg = path + ": duplicate id '" + s.id + "' across inputs";
        if (c.strict) throw DataError("load", msg, s.id);
        ++total.skipped;
        if (opts.on_warning) opts.on_warning(msg);
        continue;
      }
      all.label_set.insert(s.label);
      all.statements.push_back(std::move(s));
    }
  }
  total.records = all.statements.size();
  if (report) *report = total;
  if (all.empty()) throw DataError("load", "input contains no valid statements");
  return all;
}

// Per-label subcorpora, each sampled to sample_n with the same seed.
inline std::map<std::string, Subcorpus> sample_subcorpora(const LabeledCorpus& corpus, const AnalysisConfig& c) {
  auto parts = partition(corpus);
  if (c.sample_n == 0) return parts;
  for (auto& [label, sub] : parts) sub = sample(sub, c.sample_n, c.seed);
  return parts;
}

// order -> label -> table
using CountsByOrder = std::map<int, std::map<std::string, CountTable>>;
// order -> comparison key -> table
using KeynessByOrder = std::map<int, std::map<std::string, KeynessTable>>;

inline CountsByOrder count_subcorpora(const std::map<std::string, Subcorpus>& subs, const AnalysisResources& r,
                                      const AnalysisConfig& c) {
  validate(c);
  const bool terms = std::find(c.orders.begin(), c.orders.end(), 1) != c.orders.end();
  if (terms && !r.has_tagger) throw UsageError("count", "term counting needs a tagger model");
  const TextPipeline pipeline(r.stops, r.has_tagger ? &r.tagger : nullptr, default_content_prefixes(),
                              c.keep_numerals);
  const CountRequest req{c.orders, c.window};
  CountsByOrder out;
  for (const auto& [label, sub] : subs) {
    auto tables = count_partitioned(sub, pipeline, req, c.threads * 4, c.threads);
    for (auto& t : tables) out[t.params.order].emplace(label, std::move(t));
  }
  for (auto& [order, by_label] : out) {
    if (order == 1) continue;
    if (c.min_freq_scope == "global") {
      apply_global_min_freq(by_label, c.min_freq);
    } else {
      for (auto& [label, t] : by_label) apply_min_freq(t, c.min_freq);
    }
  }
  return out;
}

inline KeynessByOrder compute_keyness(const CountsByOrder& counts, const AnalysisConfig& c) {
  const KeynessOptions opts{c.ll_threshold, c.include_underused};
  KeynessByOrder out;
  for (const auto& [order, tables] : counts) {
    out[order] = c.mode == "pairwise" ? pairwise(tables, opts) : one_vs_rest(tables, opts);
  }
  return out;
}

inline PosDistMode posdist_mode(const AnalysisConfig& c) {
  return c.posdist_mode == "presence" ? PosDistMode::kPresence : PosDistMode::kTokens;
}

// Collocate orders only; order -> key -> cell.
using PosDistByOrder = std::map<int, std::map<std::string, PosDistCell>>;

inline PosDistByOrder compute_posdist(const KeynessByOrder& keyness, const TaggerModel& tagger,
                                      const AnalysisConfig& c) {
  PosDistByOrder out;
  for (const auto& [order, tables] : keyness) {
    if (order < 2) continue;
    for (const auto& [key, t] : tables) out[order][key] = pos_distribution(t, tagger, posdist_mode(c));
  }
  return out;
}

struct CorrelationCell {
  std::string key;
  int order = 2;
  AffectDimension dimension = AffectDimension::kPolarity;
  Correlation corr;

  bool operator==(const CorrelationCell&) const = default;
};

// One cell per (key, collocate order, dimension), in that sort order.
inline std::vector<CorrelationCell> compute_correlations(const KeynessByOrder& keyness, const AffectLexicon& lex) {
  std::vector<CorrelationCell> out;
  std::map<std::string, std::map<int, std::vector<ScoredRow>>> scored;
  for (const auto& [order, tables] : keyness) {
    if (order < 2) continue;
    for (const auto& [key, t] : tables) scored[key][order] = score_collocates(t, lex);
  }
  for (const auto& [key, by_order] : scored) {
    for (const auto& [order, rows] : by_order) {
      for (auto dim : {AffectDimension::kPolarity, AffectDimension::kSubjectivity}) {
        out.push_back({key, order, dim, affect_correlation(rows, dim)});
      }
    }
  }
  return out;
}

struct AnalysisBundle {
  AnalysisConfig config;
  Versions versions;
  CorpusSummary loaded;
  CorpusSummary sampled;
  std::size_t skipped = 0;
  CountsByOrder counts;
  KeynessByOrder keyness;
  PosDistByOrder posdist;
  std::vector<CorrelationCell> correlations;
};

inline CorpusSummary summarize(const std::map<std::string, Subcorpus>& subs) {
  CorpusSummary s;
  for (const auto& [label, sub] : subs) {
    s.per_label[label] = sub.size();
    s.total += sub.size();
  }
  return s;
}

inline AnalysisBundle run_full_analysis(const AnalysisConfig& c, const AnalysisResources& r,
                                        std::function<void(const std::string&)> on_warning = {}) {
  validate(c);
  AnalysisBundle b;
  b.config = c;
  b.versions = r.versions;
  LoadReport rep;
  const LabeledCorpus corpus = load_corpus(c, &rep, std::move(on_warning));
  b.loaded = corpus_summary(corpus);
  b.skipped = rep.skipped;
  const auto subs = sample_subcorpora(corpus, c);
  b.sampled = summarize(subs);
  b.counts = count_subcorpora(subs, r, c);
  b.keyness = compute_keyness(b.counts, c);
  if (r.has_tagger) b.posdist = compute_posdist(b.keyness, r.tagger, c);
  if (r.has_lexicon) b.correlations = compute_correlations(b.keyness, r.lexicon);
  return b;
}

}  // namespace citekey

#endif  // CITEKEY_PIPELINE_HPP_
