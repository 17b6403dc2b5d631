#ifndef CITEKEY_REPORT_HPP_
#define CITEKEY_REPORT_HPP_

// File formats for every stage output. All writers are byte-deterministic:
// rows are sorted, maps are ordered, reals use the shortest representation
// that round-trips.
//
// Output directory layout:
//
//   bundle.json                      everything below plus corpus summary
//   counts/<label>.<kind>.csv        item,count
//   counts/manifest.json             sizes and parameters of every table
//   keyness/<key>.<kind>.csv         item,freq_target,freq_reference,ll,log_ratio
//   keyness/<key>.<kind>.json        same rows with config echo (json)
//   keyness/manifest.json            sizes, reference labels, thresholds
//   posdist.csv / posdist.json       label,kind,tag,percent
//   correlations.csv / .json         label,kind,dimension,r,n
//   report.md                        tables in presentation form (markdown)
//
// <kind> is terms, bigrams or trigrams.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "citekey/analytics.hpp"
#include "citekey/collocation.hpp"
#include "citekey/csv.hpp"
#include "citekey/error.hpp"
#include "citekey/keyness.hpp"
#include "citekey/pipeline.hpp"
#include "json.hpp"

namespace citekey {

using OJson = nlohmann::ordered_json;

inline std::string format_real(double v) { return pipeline_detail::format_real(v); }

inline double parse_real_field(const std::string& s, const std::string& where) {
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
    throw DataError("load", where + ": not a number: '" + s + "'");
  }
  return v;
}

inline std::uint64_t parse_count_field(const std::string& s, const std::string& where) {
  std::uint64_t v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
    throw DataError("load", where + ": not a count: '" + s + "'");
  }
  return v;
}

inline std::string dump_json(const OJson& j) {
  return j.dump(2, ' ', false, OJson::error_handler_t::replace) + "\n";
}

inline void write_text_file(const std::filesystem::path& path, const std::string& data) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("emit", "cannot write '" + path.string() + "'");
  out << data;
  out.flush();
  if (!out) throw Error("emit", "write failed for '" + path.string() + "'");
}

inline std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("load", "cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline OJson read_json_file(const std::filesystem::path& path) {
  OJson j = OJson::parse(read_text_file(path), nullptr, false);
  if (j.is_discarded()) throw DataError("load", "'" + path.string() + "' is not valid JSON");
  return j;
}

inline int order_from_kind(const std::string& kind) {
  if (kind == "terms") return 1;
  if (kind == "bigrams") return 2;
  if (kind == "trigrams") return 3;
  throw DataError("load", "unknown table kind '" + kind + "'");
}

inline std::string display_kind(int order) {
  auto k = kind_name(order);
  k[0] = static_cast<char>(k[0] - 'a' + 'A');
  return k;
}

inline OJson header_json(const AnalysisConfig& c, const Versions& v) {
  OJson j;
  j["tool"] = {{"name", kToolName}, {"version", kToolVersion}};
  j["config"] = config_echo(c);
  j["versions"] = {{"tagger", v.tagger}, {"lexicon", v.lexicon}, {"stopwords", v.stopwords}};
  return j;
}

// ---- keyness -------------------------------------------------------------

inline std::string keyness_csv(const KeynessTable& t) {
  std::string out = "item,freq_target,freq_reference,ll,log_ratio\n";
  for (const auto& r : t.rows) {
    out += csv_escape(r.item);
    out += ',' + std::to_string(r.freq_target) + ',' + std::to_string(r.freq_reference) + ',' + format_real(r.ll) +
           ',' + format_real(r.log_ratio) + '\n';
  }
  return out;
}

inline OJson keyness_meta_json(const KeynessTable& t) {
  OJson j;
  j["label"] = t.label;
  j["reference"] = t.reference_label;
  j["kind"] = kind_name(t.order);
  j["threshold"] = t.threshold;
  j["include_underused"] = t.include_underused;
  j["target_size"] = t.target_size;
  j["reference_size"] = t.reference_size;
  j["row_count"] = t.rows.size();
  return j;
}

inline OJson keyness_rows_json(const KeynessTable& t) {
  OJson rows = OJson::array();
  for (const auto& r : t.rows) {
    rows.push_back({{"item", r.item},
                    {"freq_target", r.freq_target},
                    {"freq_reference", r.freq_reference},
                    {"ll", r.ll},
                    {"log_ratio", r.log_ratio},
                    {"overused", r.overused}});
  }
  return rows;
}

// Rebuilds a table from its CSV and manifest entry. Sizes come from the
// manifest; `overused` is recomputed from the counts.
inline KeynessTable read_keyness_csv(std::string_view data, const OJson& meta, const std::string& source) {
  KeynessTable t;
  t.label = meta.at("label").get<std::string>();
  t.reference_label = meta.at("reference").get<std::string>();
  t.order = order_from_kind(meta.at("kind").get<std::string>());
  t.threshold = meta.at("threshold").get<double>();
  t.include_underused = meta.at("include_underused").get<bool>();
  const auto c = meta.at("target_size").get<std::uint64_t>();
  const auto d = meta.at("reference_size").get<std::uint64_t>();
  t.target_size = c;
  t.reference_size = d;
  const auto records = parse_csv(data);
  const std::vector<std::string> header = {"item", "freq_target", "freq_reference", "ll", "log_ratio"};
  if (records.empty() || records.front().fields != header) {
    throw DataError("load", source + ": unexpected keyness header");
  }
  for (std::size_t i = 1; i < records.size(); ++i) {
    const auto& f = records[i].fields;
    const std::string where = source + " line " + std::to_string(records[i].line);
    if (f.size() != 5) throw DataError("load", where + ": expected 5 fields");
    KeynessRow r;
    r.item = f[0];
    r.freq_target = parse_count_field(f[1], where);
    r.freq_reference = parse_count_field(f[2], where);
    r.target_size = c;
    r.reference_size = d;
    r.ll = parse_real_field(f[3], where);
    r.log_ratio = parse_real_field(f[4], where);
    r.overused = is_overused(r.freq_target, r.freq_reference, c, d);
    t.rows.push_back(std::move(r));
  }
  return t;
}

// ---- counts --------------------------------------------------------------

inline std::string count_csv(const CountTable& t) {
  std::ostringstream ss;
  write_count_csv(t, ss);
  return ss.str();
}

inline OJson counts_manifest(const CountsByOrder& counts, const AnalysisConfig& c, const Versions& v) {
  OJson j = header_json(c, v);
  OJson tables = OJson::array();
  for (const auto& [order, by_label] : counts) {
    for (const auto& [label, t] : by_label) {
      tables.push_back({{"label", label},
                        {"kind", kind_name(order)},
                        {"window", t.params.window},
                        {"min_freq", t.params.min_freq},
                        {"total_items", t.total_items},
                        {"distinct", t.counts.size()},
                        {"file", label + "." + kind_name(order) + ".csv"}});
    }
  }
  j["tables"] = std::move(tables);
  return j;
}

inline void write_counts(const std::filesystem::path& dir, const CountsByOrder& counts, const AnalysisConfig& c,
                         const Versions& v) {
  for (const auto& [order, by_label] : counts) {
    for (const auto& [label, t] : by_label) {
      write_text_file(dir / (label + "." + kind_name(order) + ".csv"), count_csv(t));
    }
  }
  write_text_file(dir / "manifest.json", dump_json(counts_manifest(counts, c, v)));
}

struct LoadedCounts {
  CountsByOrder counts;
  OJson manifest;
};

inline LoadedCounts read_counts(const std::filesystem::path& dir) {
  LoadedCounts out;
  out.manifest = read_json_file(dir / "manifest.json");
  try {
    for (const auto& e : out.manifest.at("tables")) {
      CountTable t;
      t.label = e.at("label").get<std::string>();
      t.params.order = order_from_kind(e.at("kind").get<std::string>());
      t.params.window = e.at("window").get<std::size_t>();
      t.params.min_freq = e.at("min_freq").get<std::size_t>();
      t.total_items = e.at("total_items").get<std::uint64_t>();
      const auto file = dir / e.at("file").get<std::string>();
      t.counts = read_count_csv(read_text_file(file), file.string());
      out.counts[t.params.order].emplace(t.label, std::move(t));
    }
  } catch (const nlohmann::json::exception& ex) {
    throw DataError("load", (dir / "manifest.json").string() + ": " + ex.what());
  }
  return out;
}

// ---- keyness files -------------------------------------------------------

inline void write_keyness(const std::filesystem::path& dir, const KeynessByOrder& keyness, const AnalysisConfig& c,
                          const Versions& v) {
  OJson manifest = header_json(c, v);
  OJson tables = OJson::array();
  for (const auto& [order, by_key] : keyness) {
    for (const auto& [key, t] : by_key) {
      const std::string stem = key + "." + kind_name(order);
      write_text_file(dir / (stem + ".csv"), keyness_csv(t));
      if (c.emits("json")) {
        OJson j = header_json(c, v);
        j["table"] = keyness_meta_json(t);
        j["rows"] = keyness_rows_json(t);
        write_text_file(dir / (stem + ".json"), dump_json(j));
      }
      OJson meta = keyness_meta_json(t);
      meta["key"] = key;
      meta["file"] = stem + ".csv";
      tables.push_back(std::move(meta));
    }
  }
  manifest["tables"] = std::move(tables);
  write_text_file(dir / "manifest.json", dump_json(manifest));
}

struct LoadedKeyness {
  KeynessByOrder keyness;
  OJson manifest;
};

inline LoadedKeyness read_keyness(const std::filesystem::path& dir) {
  LoadedKeyness out;
  out.manifest = read_json_file(dir / "manifest.json");
  try {
    for (const auto& e : out.manifest.at("tables")) {
      const auto file = dir / e.at("file").get<std::string>();
      KeynessTable t = read_keyness_csv(read_text_file(file), e, file.string());
      out.keyness[t.order].emplace(e.at("key").get<std::string>(), std::move(t));
    }
  } catch (const nlohmann::json::exception& ex) {
    throw DataError("load", (dir / "manifest.json").string() + ": " + ex.what());
  }
  return out;
}

// ---- posdist / correlations ---------------------------------------------

inline std::string posdist_csv(const PosDistByOrder& p) {
  std::string out = "label,kind,tag,percent\n";
  for (const auto& [order, by_key] : p) {
    for (const auto& [key, cell] : by_key) {
      for (const auto& [tag, pct] : cell.percent) {
        out += csv_row(std::vector<std::string>{key, kind_name(order), tag, format_real(pct)});
      }
    }
  }
  return out;
}

inline OJson posdist_json(const PosDistByOrder& p, const AnalysisConfig& c) {
  OJson cells = OJson::array();
  for (const auto& [order, by_key] : p) {
    for (const auto& [key, cell] : by_key) {
      OJson pct = OJson::object();
      for (const auto& [tag, v] : cell.percent) pct[tag] = v;
      cells.push_back({{"label", key},
                       {"kind", kind_name(order)},
                       {"items", cell.items},
                       {"tokens", cell.tokens},
                       {"percent", std::move(pct)}});
    }
  }
  OJson j;
  j["denominator"] = c.posdist_mode == "presence" ? "items containing the tag / retained items"
                                                  : "tokens with the tag / all tokens of retained items";
  j["cells"] = std::move(cells);
  return j;
}

inline std::string correlations_csv(const std::vector<CorrelationCell>& cells) {
  std::string out = "label,kind,dimension,r,n\n";
  for (const auto& cell : cells) {
    out += csv_row(std::vector<std::string>{cell.key, kind_name(cell.order), dimension_name(cell.dimension),
                                            cell.corr.r ? format_real(*cell.corr.r) : "undefined",
                                            std::to_string(cell.corr.n)});
  }
  return out;
}

inline OJson correlations_json(const std::vector<CorrelationCell>& cells) {
  OJson arr = OJson::array();
  for (const auto& cell : cells) {
    OJson j{{"label", cell.key}, {"kind", kind_name(cell.order)}, {"dimension", dimension_name(cell.dimension)}};
    j["r"] = cell.corr.r ? OJson(*cell.corr.r) : OJson(nullptr);
    j["defined"] = cell.corr.defined();
    j["n"] = cell.corr.n;
    arr.push_back(std::move(j));
  }
  return arr;
}

inline void write_posdist(const std::filesystem::path& dir, const PosDistByOrder& p, const AnalysisConfig& c,
                          const Versions& v) {
  if (c.emits("csv")) write_text_file(dir / "posdist.csv", posdist_csv(p));
  if (c.emits("json")) {
    OJson j = header_json(c, v);
    j["posdist"] = posdist_json(p, c);
    write_text_file(dir / "posdist.json", dump_json(j));
  }
}

inline void write_correlations(const std::filesystem::path& dir, const std::vector<CorrelationCell>& cells,
                               const AnalysisConfig& c, const Versions& v) {
  if (c.emits("csv")) write_text_file(dir / "correlations.csv", correlations_csv(cells));
  if (c.emits("json")) {
    OJson j = header_json(c, v);
    j["correlations"] = correlations_json(cells);
    write_text_file(dir / "correlations.json", dump_json(j));
  }
}

// ---- bundle --------------------------------------------------------------

inline OJson summary_json(const CorpusSummary& s) {
  OJson per = OJson::object();
  for (const auto& [label, n] : s.per_label) per[label] = n;
  return {{"total", s.total}, {"per_label", std::move(per)}};
}

inline OJson bundle_json(const AnalysisBundle& b) {
  OJson j = header_json(b.config, b.versions);
  j["corpus"] = {{"loaded", summary_json(b.loaded)}, {"sampled", summary_json(b.sampled)}, {"skipped", b.skipped}};
  OJson counts = OJson::array();
  for (const auto& [order, by_label] : b.counts) {
    for (const auto& [label, t] : by_label) {
      counts.push_back({{"label", label},
                        {"kind", kind_name(order)},
                        {"total_items", t.total_items},
                        {"distinct", t.counts.size()}});
    }
  }
  j["counts"] = std::move(counts);
  OJson keyness = OJson::array();
  for (const auto& [order, by_key] : b.keyness) {
    for (const auto& [key, t] : by_key) {
      OJson k = keyness_meta_json(t);
      k["key"] = key;
      k["rows"] = keyness_rows_json(t);
      keyness.push_back(std::move(k));
    }
  }
  j["keyness"] = std::move(keyness);
  j["posdist"] = posdist_json(b.posdist, b.config);
  j["correlations"] = correlations_json(b.correlations);
  return j;
}

// ---- markdown ------------------------------------------------------------

namespace report_detail {

inline std::string percent_text(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, v < 1.0 && v > 0.0 ? "%.1f%%" : "%.0f%%", v);
  return buf;
}

inline std::string r_text(const OJson& cell) {
  if (cell.at("r").is_null()) return "undefined (n=" + std::to_string(cell.at("n").get<std::size_t>()) + ")";
  char buf[48];
  std::snprintf(buf, sizeof buf, "r=%.3f (n=%zu)", cell.at("r").get<double>(), cell.at("n").get<std::size_t>());
  return buf;
}

inline std::string md_cell(std::string s) {
  std::string out;
  for (char ch : s) {
    if (ch == '|') out += '\\';
    out += ch;
  }
  return out;
}

}  // namespace report_detail

// Renders a bundle (as written to bundle.json) in presentation form.
inline std::string render_markdown(const OJson& bundle) {
  using namespace report_detail;
  std::ostringstream md;
  const auto& cfg = bundle.at("config");
  const auto& ver = bundle.at("versions");
  const auto top = cfg.at("report-top").get<std::size_t>();

  // Column keys in first-seen order (already sorted in the bundle).
  std::vector<std::string> keys;
  std::set<int> orders;
  for (const auto& k : bundle.at("keyness")) {
    const auto key = k.at("key").get<std::string>();
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) keys.push_back(key);
    orders.insert(order_from_kind(k.at("kind").get<std::string>()));
  }
  const auto header_row = [&](const std::string& first) {
    md << "| " << first << " |";
    for (const auto& k : keys) md << ' ' << md_cell(k) << " |";
    md << "\n|---|";
    for (std::size_t i = 0; i < keys.size(); ++i) md << "---|";
    md << '\n';
  };

  md << "# Citation function corpus analysis\n\n";
  const auto& loaded = bundle.at("corpus").at("loaded");
  const auto& sampled = bundle.at("corpus").at("sampled");
  md << "Corpus: " << loaded.at("total").get<std::size_t>() << " statements loaded, "
     << sampled.at("total").get<std::size_t>() << " analysed (";
  bool first = true;
  for (const auto& [label, n] : sampled.at("per_label").items()) {
    md << (first ? "" : ", ") << label << ": " << n.get<std::size_t>();
    first = false;
  }
  md << "), " << bundle.at("corpus").at("skipped").get<std::size_t>() << " skipped.\n\n";
  md << "Settings: window " << cfg.at("window").get<std::size_t>() << ", min frequency "
     << cfg.at("min-freq").get<std::size_t>() << " (" << cfg.at("min-freq-scope").get<std::string>()
     << "), LL threshold " << format_real(cfg.at("ll-threshold").get<double>()) << ", comparison "
     << cfg.at("mode").get<std::string>() << ", seed " << cfg.at("seed").get<std::uint64_t>() << ", sample "
     << cfg.at("sample-n").get<std::size_t>() << " per class.\n";
  md << "Tagger " << ver.at("tagger").get<std::string>() << ", lexicon " << ver.at("lexicon").get<std::string>()
     << ", stopwords " << ver.at("stopwords").get<std::string>() << ".\n\n";

  md << "## Table 1. Terms and collocates with log likelihood above "
     << format_real(cfg.at("ll-threshold").get<double>()) << "\n\n";
  md << "Top " << top << " items per cell by log likelihood.\n\n";
  header_row("");
  for (int order : orders) {
    md << "| " << display_kind(order) << " |";
    for (const auto& key : keys) {
      std::string cell;
      for (const auto& k : bundle.at("keyness")) {
        if (k.at("key") != key || order_from_kind(k.at("kind").get<std::string>()) != order) continue;
        std::size_t shown = 0;
        for (const auto& row : k.at("rows")) {
          if (shown == top) break;
          if (!row.at("overused").get<bool>()) continue;
          if (shown++ > 0) cell += ", ";
          cell += row.at("item").get<std::string>();
        }
      }
      md << ' ' << md_cell(cell.empty() ? "-" : cell) << " |";
    }
    md << '\n';
  }

  const auto& pd = bundle.at("posdist");
  md << "\n## Table 2. Part-of-speech tag distribution of significant collocates\n\n";
  md << "Percent = " << pd.at("denominator").get<std::string>() << ".\n\n";
  std::set<std::string> tags;
  for (const auto& cell : pd.at("cells")) {
    for (const auto& [tag, v] : cell.at("percent").items()) tags.insert(tag);
  }
  if (tags.empty()) {
    md << "No significant collocates.\n";
  } else {
    header_row("Tag");
    for (const auto& tag : tags) {
      md << "| " << md_cell(tag) << " |";
      for (const auto& key : keys) {
        std::string text;
        for (const auto& cell : pd.at("cells")) {
          if (cell.at("label") != key) continue;
          const auto& pct = cell.at("percent");
          const double v = pct.contains(tag) ? pct.at(tag).get<double>() : 0.0;
          if (!text.empty()) text += ", ";
          text += percent_text(v) + " (" + display_kind(order_from_kind(cell.at("kind").get<std::string>())) + ")";
        }
        md << ' ' << md_cell(text.empty() ? "-" : text) << " |";
      }
      md << '\n';
    }
  }

  const auto corr_table = [&](const std::string& dim, const std::string& title) {
    md << "\n## " << title << "\n\n";
    std::set<int> corr_orders;
    for (const auto& c : bundle.at("correlations")) corr_orders.insert(order_from_kind(c.at("kind").get<std::string>()));
    if (corr_orders.empty()) {
      md << "No collocate orders analysed.\n";
      return;
    }
    header_row("");
    for (int order : corr_orders) {
      md << "| " << display_kind(order) << " |";
      for (const auto& key : keys) {
        std::string text = "-";
        for (const auto& c : bundle.at("correlations")) {
          if (c.at("label") == key && c.at("dimension") == dim &&
              order_from_kind(c.at("kind").get<std::string>()) == order) {
            text = r_text(c);
          }
        }
        md << ' ' << text << " |";
      }
      md << '\n';
    }
  };
  corr_table("sentiment", "Table 3. Pearson r between collocate log likelihood and sentiment");
  corr_table("subjectivity", "Table 4. Pearson r between collocate log likelihood and subjectivity");
  return md.str();
}

// Writes every output of a full run into `dir`.
inline void write_bundle(const std::filesystem::path& dir, const AnalysisBundle& b) {
  write_counts(dir / "counts", b.counts, b.config, b.versions);
  write_keyness(dir / "keyness", b.keyness, b.config, b.versions);
  write_posdist(dir, b.posdist, b.config, b.versions);
  write_correlations(dir, b.correlations, b.config, b.versions);
  const OJson j = bundle_json(b);
  write_text_file(dir / "bundle.json", dump_json(j));
  if (b.config.emits("markdown")) write_text_file(dir / "report.md", render_markdown(j));
}

}  // namespace citekey

#endif  // CITEKEY_REPORT_HPP_
