#ifndef CITEKEY_CORPUS_HPP_
#define CITEKEY_CORPUS_HPP_

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "citekey/csv.hpp"
#include "citekey/error.hpp"
#include "citekey/rng.hpp"
#include "json.hpp"

namespace citekey {

struct CitationStatement {
  std::string id;
  std::string text;
  std::string label;

  bool operator==(const CitationStatement&) const = default;
};

struct LabeledCorpus {
  std::vector<CitationStatement> statements;
  std::set<std::string> label_set;

  std::size_t size() const noexcept { return statements.size(); }
  bool empty() const noexcept { return statements.empty(); }
  bool operator==(const LabeledCorpus&) const = default;
};

struct Subcorpus {
  std::string label;
  std::vector<CitationStatement> statements;

  std::size_t size() const noexcept { return statements.size(); }
  bool operator==(const Subcorpus&) const = default;
};

// Names of the id/text/label fields (JSON keys or CSV columns).
struct FieldMap {
  std::string id = "id";
  std::string text = "text";
  std::string label = "label";
};

struct LoadOptions {
  // Abort on the first malformed record instead of skipping it.
  bool strict = false;
  // When non-empty, labels outside this set make a record malformed.
  std::set<std::string> allowed_labels;
  // Receives one message per skipped record.
  std::function<void(const std::string&)> on_warning;
};

struct LoadReport {
  std::size_t records = 0;
  std::size_t skipped = 0;
};

namespace corpus_detail {

inline std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

// Validates one record and appends it, or reports it as malformed.
class Builder {
 public:
  Builder(const LoadOptions& opts, LoadReport* report, std::string source)
      : opts_(opts), report_(report), source_(std::move(source)) {}

  void malformed(std::size_t line, const std::string& why, const std::string& id = {}) {
    const std::string msg = source_ + " line " + std::to_string(line) + ": " + why;
    if (opts_.strict) throw DataError("load", msg, id);
    ++skipped_;
    if (opts_.on_warning) opts_.on_warning(msg);
  }

  void add(std::size_t line, std::string id, std::string text, std::string label) {
    if (id.empty()) return malformed(line, "empty id");
    if (trim(text).empty()) return malformed(line, "empty text", id);
    if (trim(label).empty()) return malformed(line, "empty label", id);
    if (!opts_.allowed_labels.empty() && !opts_.allowed_labels.contains(label)) {
      return malformed(line, "label '" + label + "' is not in the declared label set", id);
    }
    if (!ids_.insert(id).second) return malformed(line, "duplicate id '" + id + "'", id);
    corpus_.label_set.insert(label);
    corpus_.statements.push_back({std::move(id), std::move(text), std::move(label)});
  }

  LabeledCorpus finish() {
    if (report_) {
      report_->records = corpus_.statements.size();
      report_->skipped = skipped_;
    }
    return std::move(corpus_);
  }

 private:
  const LoadOptions& opts_;
  LoadReport* report_;
  std::string source_;
  LabeledCorpus corpus_;
  std::unordered_set<std::string> ids_;
  std::size_t skipped_ = 0;
};

inline std::optional<std::string> json_field(const nlohmann::json& obj, const std::string& key) {
  const auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return std::nullopt;
  if (it->is_string()) return it->get<std::string>();
  if (it->is_number() || it->is_boolean()) return it->dump();
  return std::nullopt;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("load", "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace corpus_detail

// One JSON object per line. Blank lines are ignored; ids may be strings or
// numbers. Malformed lines are skipped (counted in `report`) unless strict.
inline LabeledCorpus load_jsonl(std::istream& in, const FieldMap& fields = {}, const LoadOptions& opts = {},
                                LoadReport* report = nullptr, const std::string& source = "<stream>") {
  corpus_detail::Builder builder(opts, report, source);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (corpus_detail::trim(line).empty()) continue;
    nlohmann::json obj = nlohmann::json::parse(line, nullptr, false);
    if (obj.is_discarded() || !obj.is_object()) {
      builder.malformed(lineno, "not a JSON object");
      continue;
    }
    auto id = corpus_detail::json_field(obj, fields.id);
    auto text = corpus_detail::json_field(obj, fields.text);
    auto label = corpus_detail::json_field(obj, fields.label);
    if (!id || !text || !label) {
      const std::string& missing = !id ? fields.id : (!text ? fields.text : fields.label);
      builder.malformed(lineno, "missing field '" + missing + "'", id.value_or(""));
      continue;
    }
    builder.add(lineno, std::move(*id), std::move(*text), std::move(*label));
  }
  return builder.finish();
}

inline LabeledCorpus load_jsonl(const std::string& path, const FieldMap& fields = {}, const LoadOptions& opts = {},
                                LoadReport* report = nullptr) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("load", "cannot open '" + path + "'");
  return load_jsonl(in, fields, opts, report, path);
}

// Header row required. A missing mapped column or an unbalanced quote is
// always an error; rows with the wrong field count are malformed records.
inline LabeledCorpus load_csv_text(std::string_view data, const FieldMap& fields = {}, const LoadOptions& opts = {},
                                   LoadReport* report = nullptr, const std::string& source = "<csv>") {
  corpus_detail::Builder builder(opts, report, source);
  const auto records = parse_csv(data);
  if (records.empty()) return builder.finish();
  const auto& header = records.front().fields;
  const auto column = [&](const std::string& name) {
    const auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) throw DataError("load", source + ": missing column '" + name + "'");
    return static_cast<std::size_t>(it - header.begin());
  };
  const std::size_t id_col = column(fields.id);
  const std::size_t text_col = column(fields.text);
  const std::size_t label_col = column(fields.label);
  for (std::size_t r = 1; r < records.size(); ++r) {
    const auto& rec = records[r];
    if (rec.fields.size() != header.size()) {
      builder.malformed(rec.line, "expected " + std::to_string(header.size()) + " fields, got " +
                                      std::to_string(rec.fields.size()));
      continue;
    }
    builder.add(rec.line, rec.fields[id_col], rec.fields[text_col], rec.fields[label_col]);
  }
  return builder.finish();
}

inline LabeledCorpus load_csv(const std::string& path, const FieldMap& fields = {}, const LoadOptions& opts = {},
                              LoadReport* report = nullptr) {
  return load_csv_text(corpus_detail::read_file(path), fields, opts, report, path);
}

// Canonical output: one {"id","text","label"} object per line.
inline void emit_jsonl(const LabeledCorpus& corpus, std::ostream& out) {
  for (const auto& s : corpus.statements) {
    nlohmann::ordered_json obj;
    obj["id"] = s.id;
    obj["text"] = s.text;
    obj["label"] = s.label;
    out << obj.dump(-1, ' ', false, nlohmann::ordered_json::error_handler_t::replace) << '\n';
  }
}

// Subcorpora keyed by label; per-label input order is preserved.
inline std::map<std::string, Subcorpus> partition(const LabeledCorpus& corpus) {
  std::map<std::string, Subcorpus> out;
  for (const auto& s : corpus.statements) {
    auto& sub = out[s.label];
    sub.label = s.label;
    sub.statements.push_back(s);
  }
  return out;
}

// Uniform sample without replacement, kept in original order. Indices are
// chosen by a partial Fisher-Yates pass driven by mt19937_64(seed); see
// rng.hpp for the exact draw rules.
inline Subcorpus sample(const Subcorpus& sub, std::size_t n, std::uint64_t seed) {
  if (n >= sub.size()) return sub;
  std::vector<std::size_t> idx(sub.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  Mt64 rng(seed);
  for (std::size_t i = 0; i < n; ++i) {
    const auto j = i + static_cast<std::size_t>(uniform_below(rng, idx.size() - i));
    std::swap(idx[i], idx[j]);
  }
  idx.resize(n);
  std::sort(idx.begin(), idx.end());
  Subcorpus out;
  out.label = sub.label;
  out.statements.reserve(n);
  for (std::size_t i : idx) out.statements.push_back(sub.statements[i]);
  return out;
}

struct CorpusSummary {
  std::map<std::string, std::size_t> per_label;
  std::size_t total = 0;

  bool operator==(const CorpusSummary&) const = default;
};

inline CorpusSummary corpus_summary(const LabeledCorpus& corpus) {
  CorpusSummary s;
  for (const auto& st : corpus.statements) ++s.per_label[st.label];
  s.total = corpus.statements.size();
  return s;
}

// Rebuilds a corpus from subcorpora, label by label.
inline LabeledCorpus merge_subcorpora(const std::map<std::string, Subcorpus>& parts) {
  LabeledCorpus out;
  for (const auto& [label, sub] : parts) {
    if (!sub.statements.empty()) out.label_set.insert(label);
    out.statements.insert(out.statements.end(), sub.statements.begin(), sub.statements.end());
  }
  return out;
}

}  // namespace citekey

#endif  // CITEKEY_CORPUS_HPP_
