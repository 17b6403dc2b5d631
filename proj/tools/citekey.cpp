// citekey: keyness, collocation and affect analysis of labeled citation
// statements. See README.md for the subcommands.
//
// Exit codes: 0 success, 1 usage error, 2 data error, 3 internal error.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "citekey/citekey.hpp"

#ifndef CITEKEY_DEFAULT_DATA_DIR
#define CITEKEY_DEFAULT_DATA_DIR "data"
#endif

namespace fs = std::filesystem;
using namespace citekey;

namespace {

enum Exit { kOk = 0, kUsage = 1, kData = 2, kInternal = 3 };

std::string data_dir() {
  if (const char* env = std::getenv("CITEKEY_DATA_DIR"); env != nullptr && *env != '\0') return env;
  return CITEKEY_DEFAULT_DATA_DIR;
}

void warn(const std::string& msg) { std::cerr << "warning: " << msg << '\n'; }

// Flags shared by the subcommands. Values are kept as text and applied
// through apply_config_entry after the config file, so flags override it.
struct Flags {
  std::string config_file;
  std::map<std::string, std::string> values;
  std::vector<std::pair<std::string, CLI::Option*>> options;

  void add(CLI::App* app, const std::string& name, const std::string& help) {
    options.emplace_back(name, app->add_option("--" + name, values[name], help));
  }
  void add_flag(CLI::App* app, const std::string& name, const std::string& help) {
    auto* opt = app->add_flag("--" + name, help);
    options.emplace_back(name, opt);
  }

  AnalysisConfig config() const {
    AnalysisConfig c;
    if (!config_file.empty()) apply_config_file(c, config_file);
    apply_to(c);
    return c;
  }

  void apply_to(AnalysisConfig& c) const {
    for (const auto& [name, opt] : options) {
      if (opt->count() == 0) continue;
      const auto it = values.find(name);
      apply_config_entry(c, name, it == values.end() ? "true" : it->second);
    }
  }

  bool given(const std::string& name) const {
    for (const auto& [n, opt] : options) {
      if (n == name) return opt->count() > 0;
    }
    return false;
  }
};

void add_input_flags(CLI::App* app, Flags& f) {
  f.add(app, "input", "input file(s), comma-separated (JSONL or CSV)");
  f.add(app, "format", "jsonl, csv or auto (by extension)");
  f.add(app, "id-field", "name of the id field/column");
  f.add(app, "text-field", "name of the text field/column");
  f.add(app, "label-field", "name of the label field/column");
  f.add(app, "labels", "allowed labels, comma-separated (others are malformed)");
  f.add(app, "sample-n", "statements sampled per class (0 = all)");
  f.add(app, "seed", "sampling seed");
  f.add_flag(app, "strict", "abort on the first malformed record");
}

void add_count_flags(CLI::App* app, Flags& f) {
  f.add(app, "orders", "n-gram orders, subset of 1,2,3 (1 = key terms)");
  f.add(app, "window", "collocation window size");
  f.add(app, "min-freq", "minimum collocate frequency");
  f.add(app, "min-freq-scope", "subcorpus or global");
  f.add_flag(app, "keep-numerals", "keep numerals among key terms");
  f.add(app, "threads", "worker threads for counting");
}

void add_keyness_flags(CLI::App* app, Flags& f) {
  f.add(app, "ll-threshold", "log-likelihood retention threshold");
  f.add(app, "mode", "one-vs-rest or pairwise");
  f.add_flag(app, "include-underused", "also keep items key for the reference");
}

void add_resource_flags(CLI::App* app, Flags& f) {
  f.add(app, "stopwords", "stopword list (one word per line)");
  f.add(app, "lexicon", "affect lexicon file");
  f.add(app, "tagger-model", "POS tagger model file");
}

void add_output_flags(CLI::App* app, Flags& f) {
  f.add(app, "out", "output directory");
  f.add(app, "emit", "output formats, subset of csv,json,markdown");
}

void fill_default_paths(AnalysisConfig& c) {
  const fs::path dir = data_dir();
  if (c.lexicon.empty()) c.lexicon = (dir / "lexicon" / "affect-en.tsv").string();
  if (c.tagger_model.empty()) c.tagger_model = (dir / "models" / "ptb-perceptron.model").string();
}

AnalysisResources resources_for(AnalysisConfig& c) {
  fill_default_paths(c);
  return load_resources(c);
}

fs::path require_out(const AnalysisConfig& c) {
  if (c.out.empty()) throw UsageError("config", "--out is required");
  return c.out;
}

// Upstream stage directory: `input` itself or `input/<sub>`.
fs::path stage_dir(const AnalysisConfig& c, const std::string& sub) {
  if (c.inputs.size() != 1) throw UsageError("config", "--input must name one directory");
  const fs::path p = c.inputs.front();
  if (fs::exists(p / sub / "manifest.json")) return p / sub;
  if (fs::exists(p / "manifest.json")) return p;
  throw DataError("load", "no " + sub + " manifest under '" + p.string() + "'");
}

// Adopts the upstream config echo and versions, then the caller's flags;
// flags may not change parameters the upstream files already depend on.
AnalysisConfig inherit_config(const OJson& manifest, const Flags& flags, const std::vector<std::string>& frozen) {
  AnalysisConfig upstream;
  apply_config_echo(upstream, manifest.at("config"));
  AnalysisConfig c = upstream;
  if (!flags.config_file.empty()) apply_config_file(c, flags.config_file);
  flags.apply_to(c);
  const auto before = config_echo(upstream), after = config_echo(c);
  for (const auto& key : frozen) {
    if (before.at(key) != after.at(key)) {
      throw UsageError("config", "'" + key + "' is fixed by the upstream files (" + before.at(key).dump() + ")");
    }
  }
  return c;
}

Versions manifest_versions(const OJson& manifest) {
  const auto& v = manifest.at("versions");
  return {v.at("tagger").get<std::string>(), v.at("lexicon").get<std::string>(),
          v.at("stopwords").get<std::string>()};
}

const std::vector<std::string> kCountKeys = {"labels", "sample-n", "seed", "orders", "window",
                                             "min-freq", "min-freq-scope", "keep-numerals"};

int run_ingest(const Flags& flags) {
  AnalysisConfig c = flags.config();
  LoadReport rep;
  const auto corpus = load_corpus(c, &rep, warn);
  const auto subs = sample_subcorpora(corpus, c);
  const auto loaded = corpus_summary(corpus);
  std::cout << "label\tloaded\tsampled\n";
  for (const auto& [label, n] : loaded.per_label) {
    std::cout << label << '\t' << n << '\t' << subs.at(label).size() << '\n';
  }
  std::cout << "total\t" << loaded.total << '\t' << summarize(subs).total << '\n';
  std::cout << "skipped\t" << rep.skipped << '\n';
  if (!c.out.empty()) {
    std::ostringstream ss;
    emit_jsonl(merge_subcorpora(subs), ss);
    write_text_file(c.out, ss.str());
  }
  return kOk;
}

int run_collocates(const Flags& flags) {
  AnalysisConfig c = flags.config();
  validate(c);
  const auto out = require_out(c);
  const auto res = resources_for(c);
  const auto corpus = load_corpus(c, nullptr, warn);
  const auto counts = count_subcorpora(sample_subcorpora(corpus, c), res, c);
  write_counts(out / "counts", counts, c, res.versions);
  return kOk;
}

int run_keyness(const Flags& flags) {
  AnalysisConfig base = flags.config();
  const auto loaded = read_counts(stage_dir(base, "counts"));
  AnalysisConfig c = inherit_config(loaded.manifest, flags, kCountKeys);
  validate(c);
  write_keyness(require_out(c) / "keyness", compute_keyness(loaded.counts, c), c, manifest_versions(loaded.manifest));
  return kOk;
}

std::vector<std::string> keyness_keys() {
  auto keys = kCountKeys;
  keys.insert(keys.end(), {"ll-threshold", "mode", "include-underused"});
  return keys;
}

int run_posdist(const Flags& flags) {
  AnalysisConfig base = flags.config();
  const auto loaded = read_keyness(stage_dir(base, "keyness"));
  AnalysisConfig c = inherit_config(loaded.manifest, flags, keyness_keys());
  auto versions = manifest_versions(loaded.manifest);
  fill_default_paths(c);
  const auto tagger = load_tagger_model(c.tagger_model);
  versions.tagger = tagger.version();
  write_posdist(require_out(c), compute_posdist(loaded.keyness, tagger, c), c, versions);
  return kOk;
}

int run_correlate(const Flags& flags) {
  AnalysisConfig base = flags.config();
  const auto loaded = read_keyness(stage_dir(base, "keyness"));
  AnalysisConfig c = inherit_config(loaded.manifest, flags, keyness_keys());
  auto versions = manifest_versions(loaded.manifest);
  fill_default_paths(c);
  const auto lex = load_affect_lexicon(c.lexicon);
  versions.lexicon = lex.version();
  write_correlations(require_out(c), compute_correlations(loaded.keyness, lex), c, versions);
  return kOk;
}

int run_analyze(const Flags& flags) {
  AnalysisConfig c = flags.config();
  validate(c);
  const auto out = require_out(c);
  const auto res = resources_for(c);
  const auto bundle = run_full_analysis(c, res, warn);
  write_bundle(out, bundle);
  return kOk;
}

int run_report(const Flags& flags) {
  const AnalysisConfig c = flags.config();
  if (c.inputs.size() != 1) throw UsageError("config", "--input must name a bundle.json or its directory");
  fs::path in = c.inputs.front();
  if (fs::is_directory(in)) in /= "bundle.json";
  const std::string md = render_markdown(read_json_file(in));
  if (c.out.empty()) {
    std::cout << md;
  } else {
    const fs::path out = fs::is_directory(c.out) ? fs::path(c.out) / "report.md" : fs::path(c.out);
    write_text_file(out, md);
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Keyness, collocation and affect analysis of labeled citation statements"};
  app.require_subcommand(1);
  std::map<std::string, Flags> flags;
  std::map<std::string, std::function<int(const Flags&)>> handlers;

  const auto sub = [&](const std::string& name, const std::string& help, auto&& handler) {
    auto* cmd = app.add_subcommand(name, help);
    auto& f = flags[name];
    cmd->add_option("--config", f.config_file, "key=value config file; flags override it");
    handlers[name] = handler;
    return std::pair<CLI::App*, Flags*>{cmd, &f};
  };

  {
    auto [cmd, f] = sub("ingest", "validate and summarize a corpus", run_ingest);
    add_input_flags(cmd, *f);
    f->add(cmd, "out", "write the (sampled) corpus as canonical JSONL to this file");
  }
  {
    auto [cmd, f] = sub("collocates", "count key terms and collocates per class", run_collocates);
    add_input_flags(cmd, *f);
    add_count_flags(cmd, *f);
    add_resource_flags(cmd, *f);
    add_output_flags(cmd, *f);
  }
  {
    auto [cmd, f] = sub("keyness", "build comparison tables from count tables", run_keyness);
    f->add(cmd, "input", "directory holding counts/ (or a counts directory)");
    add_keyness_flags(cmd, *f);
    add_output_flags(cmd, *f);
  }
  {
    auto [cmd, f] = sub("posdist", "POS-tag distribution of significant collocates", run_posdist);
    f->add(cmd, "input", "directory holding keyness/ (or a keyness directory)");
    f->add(cmd, "tagger-model", "POS tagger model file");
    f->add(cmd, "posdist-mode", "tokens or presence");
    add_output_flags(cmd, *f);
  }
  {
    auto [cmd, f] = sub("correlate", "correlate collocate keyness with affect", run_correlate);
    f->add(cmd, "input", "directory holding keyness/ (or a keyness directory)");
    f->add(cmd, "lexicon", "affect lexicon file");
    add_output_flags(cmd, *f);
  }
  {
    auto [cmd, f] = sub("analyze", "run the full pipeline", run_analyze);
    add_input_flags(cmd, *f);
    add_count_flags(cmd, *f);
    add_keyness_flags(cmd, *f);
    add_resource_flags(cmd, *f);
    add_output_flags(cmd, *f);
    f->add(cmd, "posdist-mode", "tokens or presence");
    f->add(cmd, "report-top", "items per Table 1 cell in report.md");
  }
  {
    auto [cmd, f] = sub("report", "render bundle.json as markdown", run_report);
    f->add(cmd, "input", "bundle.json or the directory holding it");
    f->add(cmd, "out", "output file or directory (default: stdout)");
  }

  std::string synth_kind = "realistic", synth_out;
  std::size_t synth_n = 30000;
  std::uint64_t synth_seed = 20240601;
  auto* synth = app.add_subcommand("synth", "generate a synthetic labeled corpus (JSONL)");
  synth->add_option("--kind", synth_kind, "realistic or planted")->check(CLI::IsMember({"realistic", "planted"}));
  synth->add_option("--n", synth_n, "statements (realistic) or statements per class (planted)");
  synth->add_option("--seed", synth_seed);
  synth->add_option("--out", synth_out, "output file (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (synth->parsed()) {
      const auto corpus = synth_kind == "planted" ? synthetic::planted_cue_corpus(synth_n, 50, synth_seed).corpus
                                                  : synthetic::realistic_corpus(synth_n, synth_seed);
      std::ostringstream ss;
      emit_jsonl(corpus, ss);
      if (synth_out.empty()) {
        std::cout << ss.str();
      } else {
        write_text_file(synth_out, ss.str());
      }
      return kOk;
    }
    for (auto* cmd : app.get_subcommands()) {
      return handlers.at(cmd->get_name())(flags.at(cmd->get_name()));
    }
    return kUsage;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const DataError& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return kData;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInternal;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return kData;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kInternal;
  }
}
