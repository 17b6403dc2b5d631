#ifndef CITEKEY_TAGGER_HPP_
#define CITEKEY_TAGGER_HPP_

// Greedy averaged-perceptron part-of-speech tagger over the Penn Treebank
// tagset.
//
// Model file (UTF-8 text, one record per line):
//
//   citekey-tagger 1
//   version <free text>
//   tagset <n>            followed by n lines, one tag each
//   tagdict <m>           followed by m lines "word<TAB>tag"
//   features <k>          followed by k lines "key<TAB>tag:weight tag:weight ..."
//   end
//
// A feature key is "<template> <part> [<part>]"; keys are hashed on load so
// tagging never builds strings. Weights are written in shortest round-trip
// form, so save/load is lossless.

#include <algorithm>
#include <charconv>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <istream>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "citekey/error.hpp"
#include "citekey/rng.hpp"
#include "citekey/text.hpp"

namespace citekey {

// Tags aligned 1:1 with the tokens they annotate.
struct TagSeq {
  std::vector<std::string> tags;

  std::size_t size() const noexcept { return tags.size(); }
  bool empty() const noexcept { return tags.empty(); }
  bool operator==(const TagSeq&) const = default;
};

// Penn Treebank tagset, NLTK punctuation conventions.
inline const std::vector<std::string>& ptb_tagset() {
  static const std::vector<std::string> kTags = {
      "CC", "CD", "DT", "EX", "FW", "IN", "JJ", "JJR", "JJS", "LS", "MD", "NN", "NNS", "NNP", "NNPS",
      "PDT", "POS", "PRP", "PRP$", "RB", "RBR", "RBS", "RP", "SYM", "TO", "UH", "VB", "VBD", "VBG",
      "VBN", "VBP", "VBZ", "WDT", "WP", "WP$", "WRB", "$", "#", "``", "''", "(", ")", ",", ".", ":"};
  return kTags;
}

namespace tagger_detail {

inline constexpr std::string_view kMagic = "citekey-tagger 1";

inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

inline std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001B3ULL;
  }
  return h;
}

inline std::uint64_t feature_hash(int tmpl, std::string_view a, std::string_view b) {
  std::uint64_t h = mix64(static_cast<std::uint64_t>(tmpl));
  h = mix64(h ^ fnv1a(a));
  if (!b.empty()) h = mix64(h ^ fnv1a(b));
  return h;
}

// Word form used by lexical features.
inline std::string feature_form(std::string_view token) {
  bool all_digits = !token.empty();
  for (char c : token) all_digits = all_digits && c >= '0' && c <= '9';
  if (all_digits && token.size() == 4) return "!YEAR";
  if (!token.empty() && token[0] >= '0' && token[0] <= '9') return "!DIGITS";
  return text_detail::ascii_lower(token);
}

inline std::string_view suffix(std::string_view s, std::size_t n) {
  return s.size() <= n ? s : s.substr(s.size() - n);
}

// Coarse orthographic class of the original token.
inline std::string_view shape(std::string_view token, bool first) {
  bool upper = false, lower = false, digit = false, hyphen = false;
  for (char c : token) {
    if (c >= 'A' && c <= 'Z') upper = true;
    else if (c >= 'a' && c <= 'z') lower = true;
    else if (c >= '0' && c <= '9') digit = true;
    else if (c == '-') hyphen = true;
  }
  const bool init_cap = !token.empty() && token[0] >= 'A' && token[0] <= 'Z';
  if (digit) return hyphen ? "d-" : (upper || lower ? "dx" : "d");
  if (hyphen) return init_cap ? "X-" : "x-";
  if (upper && !lower) return first ? "X^" : "X";
  if (init_cap) return first ? "Xx^" : "Xx";
  if (lower) return first ? "x^" : "x";
  return "o";
}

inline constexpr std::string_view kStart1 = "-START-";
inline constexpr std::string_view kStart2 = "-START2-";
inline constexpr std::string_view kEnd1 = "-END-";
inline constexpr std::string_view kEnd2 = "-END2-";

// Precomputed per-sentence views used by feature extraction.
struct Context {
  std::vector<std::string> forms;  // padded: 2 before, 2 after
  std::span<const std::string> original;

  explicit Context(std::span<const std::string> tokens) : original(tokens) {
    forms.reserve(tokens.size() + 4);
    forms.emplace_back(kStart1);
    forms.emplace_back(kStart2);
    for (const auto& t : tokens) forms.push_back(feature_form(t));
    forms.emplace_back(kEnd1);
    forms.emplace_back(kEnd2);
  }
};

// Calls visit(template_id, part_a, part_b) for each feature of token i.
template <typename Visitor>
void for_each_feature(const Context& ctx, std::size_t i, std::string_view prev,
                      std::string_view prev2, Visitor&& visit) {
  const std::size_t k = i + 2;
  const std::string_view word = ctx.forms[k];
  const std::string_view orig = ctx.original[i];
  visit(0, "bias", "");
  visit(1, suffix(word, 3), "");
  visit(2, orig.substr(0, 1), "");
  visit(3, prev, "");
  visit(4, prev2, "");
  visit(5, prev, prev2);
  visit(6, word, "");
  visit(7, prev, word);
  visit(8, ctx.forms[k - 1], "");
  visit(9, suffix(ctx.forms[k - 1], 3), "");
  visit(10, ctx.forms[k - 2], "");
  visit(11, ctx.forms[k + 1], "");
  visit(12, suffix(ctx.forms[k + 1], 3), "");
  visit(13, ctx.forms[k + 2], "");
  visit(14, shape(orig, i == 0), "");
  visit(15, suffix(word, 2), "");
  visit(16, suffix(word, 4), "");
  visit(17, ctx.forms[k - 1], word);
}

inline std::string feature_key(int tmpl, std::string_view a, std::string_view b) {
  std::string key = std::to_string(tmpl);
  key += ' ';
  key += a;
  if (!b.empty()) {
    key += ' ';
    key += b;
  }
  return key;
}

inline std::uint64_t hash_key(std::string_view key) {
  const auto s1 = key.find(' ');
  if (s1 == std::string_view::npos) throw DataError("tag", "malformed feature key '" + std::string(key) + "'");
  int tmpl = 0;
  const auto res = std::from_chars(key.data(), key.data() + s1, tmpl);
  if (res.ec != std::errc() || res.ptr != key.data() + s1) {
    throw DataError("tag", "malformed feature key '" + std::string(key) + "'");
  }
  const auto rest = key.substr(s1 + 1);
  const auto s2 = rest.find(' ');
  if (s2 == std::string_view::npos) return feature_hash(tmpl, rest, "");
  return feature_hash(tmpl, rest.substr(0, s2), rest.substr(s2 + 1));
}

template <typename T>
std::string shortest(T v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

}  // namespace tagger_detail

class TaggerModel {
 public:
  TaggerModel() = default;

  const std::string& version() const noexcept { return version_; }
  const std::vector<std::string>& tagset() const noexcept { return tags_; }
  std::size_t feature_count() const noexcept { return keys_.size(); }

  bool has_tag(std::string_view tag) const {
    return std::find(tags_.begin(), tags_.end(), tag) != tags_.end();
  }

  // Tags one sentence of case-preserved tokens. Unknown words fall back on
  // suffix and shape features, so every token gets a tag.
  std::vector<std::string> tag_tokens(std::span<const std::string> tokens) const {
    std::vector<std::string> out;
    out.reserve(tokens.size());
    if (tokens.empty()) return out;
    const tagger_detail::Context ctx(tokens);
    std::vector<float> scores(tags_.size());
    std::string_view prev = tagger_detail::kStart1;
    std::string_view prev2 = tagger_detail::kStart2;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
      std::size_t best = 0;
      if (auto it = tagdict_.find(tokens[i]); it != tagdict_.end()) {
        best = it->second;
      } else {
        std::fill(scores.begin(), scores.end(), 0.0f);
        tagger_detail::for_each_feature(ctx, i, prev, prev2,
                                        [&](int tmpl, std::string_view a, std::string_view b) {
                                          const auto f = index_.find(tagger_detail::feature_hash(tmpl, a, b));
                                          if (f == index_.end()) return;
                                          for (const auto& [t, w] : rows_[f->second]) scores[t] += w;
                                        });
        for (std::size_t t = 1; t < scores.size(); ++t) {
          if (scores[t] > scores[best]) best = t;
        }
      }
      out.push_back(tags_[best]);
      prev2 = prev;
      prev = tags_[best];
    }
    return out;
  }

  void save(std::ostream& out) const {
    out << tagger_detail::kMagic << '\n';
    out << "version " << version_ << '\n';
    out << "tagset " << tags_.size() << '\n';
    for (const auto& t : tags_) out << t << '\n';
    std::vector<std::pair<std::string, std::uint8_t>> dict(tagdict_.begin(), tagdict_.end());
    std::sort(dict.begin(), dict.end());
    out << "tagdict " << dict.size() << '\n';
    for (const auto& [w, t] : dict) out << w << '\t' << tags_[t] << '\n';
    out << "features " << keys_.size() << '\n';
    for (std::size_t r = 0; r < keys_.size(); ++r) {
      out << keys_[r] << '\t';
      bool first = true;
      for (const auto& [t, w] : rows_[r]) {
        if (!first) out << ' ';
        first = false;
        out << tags_[t] << ':' << tagger_detail::shortest(w);
      }
      out << '\n';
    }
    out << "end\n";
  }

  static TaggerModel parse(std::istream& in) {
    TaggerModel m;
    std::string line;
    const auto fail = [](const std::string& what) -> void {
      throw DataError("load", "tagger model: " + what);
    };
    const auto next = [&](const char* what) {
      if (!std::getline(in, line)) fail(std::string("truncated before ") + what);
      if (!line.empty() && line.back() == '\r') line.pop_back();
    };
    const auto count_after = [&](std::string_view prefix) {
      std::string_view sv(line);
      if (!sv.starts_with(prefix)) fail("expected '" + std::string(prefix) + "' section");
      sv.remove_prefix(prefix.size());
      std::size_t n = 0;
      const auto res = std::from_chars(sv.data(), sv.data() + sv.size(), n);
      if (res.ec != std::errc() || res.ptr != sv.data() + sv.size()) fail("bad count in '" + line + "'");
      return n;
    };

    next("header");
    if (line != tagger_detail::kMagic) fail("not a citekey tagger model (bad header)");
    next("version");
    if (!line.starts_with("version ") || line.size() <= 8) fail("missing version");
    m.version_ = line.substr(8);

    next("tagset");
    const std::size_t ntags = count_after("tagset ");
    if (ntags == 0 || ntags > 255) fail("tagset size out of range");
    std::unordered_map<std::string, std::uint8_t> tag_ids;
    for (std::size_t i = 0; i < ntags; ++i) {
      next("tagset entries");
      if (line.empty() || tag_ids.contains(line)) fail("empty or duplicate tag '" + line + "'");
      tag_ids.emplace(line, static_cast<std::uint8_t>(i));
      m.tags_.push_back(line);
    }
    const auto tag_id = [&](std::string_view t) {
      const auto it = tag_ids.find(std::string(t));
      if (it == tag_ids.end()) fail("undeclared tag '" + std::string(t) + "'");
      return it->second;
    };

    next("tagdict");
    const std::size_t ndict = count_after("tagdict ");
    m.tagdict_.reserve(ndict);
    for (std::size_t i = 0; i < ndict; ++i) {
      next("tagdict entries");
      const auto tab = line.find('\t');
      if (tab == std::string::npos || tab == 0) fail("malformed tagdict line '" + line + "'");
      m.tagdict_[line.substr(0, tab)] = tag_id(std::string_view(line).substr(tab + 1));
    }

    next("features");
    const std::size_t nfeat = count_after("features ");
    m.keys_.reserve(nfeat);
    m.rows_.reserve(nfeat);
    m.index_.reserve(nfeat);
    for (std::size_t i = 0; i < nfeat; ++i) {
      next("feature entries");
      const auto tab = line.find('\t');
      if (tab == std::string::npos) fail("malformed feature line");
      std::string key = line.substr(0, tab);
      Row row;
      std::string_view rest = std::string_view(line).substr(tab + 1);
      while (!rest.empty()) {
        const auto sp = rest.find(' ');
        const auto item = rest.substr(0, sp);
        const auto colon = item.rfind(':');
        if (colon == std::string_view::npos || colon == 0) fail("malformed weight '" + std::string(item) + "'");
        float w = 0;
        const auto ws = item.substr(colon + 1);
        const auto res = std::from_chars(ws.data(), ws.data() + ws.size(), w);
        if (res.ec != std::errc() || res.ptr != ws.data() + ws.size()) fail("bad weight '" + std::string(item) + "'");
        row.emplace_back(tag_id(item.substr(0, colon)), w);
        rest = sp == std::string_view::npos ? std::string_view() : rest.substr(sp + 1);
      }
      if (!m.index_.emplace(tagger_detail::hash_key(key), static_cast<std::uint32_t>(m.rows_.size())).second) {
        fail("duplicate feature '" + key + "'");
      }
      m.keys_.push_back(std::move(key));
      m.rows_.push_back(std::move(row));
    }
    next("end marker");
    if (line != "end") fail("missing end marker");
    return m;
  }

 private:
  friend class PerceptronTrainer;
  using Row = std::vector<std::pair<std::uint8_t, float>>;

  std::string version_;
  std::vector<std::string> tags_;
  std::unordered_map<std::string, std::uint8_t> tagdict_;
  std::vector<std::string> keys_;
  std::vector<Row> rows_;
  std::unordered_map<std::uint64_t, std::uint32_t> index_;
};

inline TaggerModel load_tagger_model(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("load", "cannot open tagger model '" + path + "'");
  return TaggerModel::parse(in);
}

// Tags a normalized sequence. Case information is lost at this point; use
// TaggerModel::tag_tokens on the raw stream when it is available.
inline TagSeq tag(const TokenSeq& seq, const TaggerModel& model) {
  return TagSeq{model.tag_tokens(seq.tokens)};
}

inline const std::vector<std::string>& default_content_prefixes() {
  static const std::vector<std::string> kPrefixes = {"NN", "VB", "JJ", "RB"};
  return kPrefixes;
}

// Keeps tokens whose tag starts with one of `prefixes`.
inline TokenSeq content_word_filter(const TokenSeq& seq, const TagSeq& tags,
                                    const std::vector<std::string>& prefixes = default_content_prefixes()) {
  if (seq.size() != tags.size()) {
    throw UsageError("tag", "token/tag length mismatch (" + std::to_string(seq.size()) + " vs " +
                                std::to_string(tags.size()) + ")",
                     seq.source_id);
  }
  TokenSeq out;
  out.source_id = seq.source_id;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    const auto& t = tags.tags[i];
    const bool keep = std::any_of(prefixes.begin(), prefixes.end(),
                                  [&](const std::string& p) { return t.starts_with(p); });
    if (keep) out.tokens.push_back(seq.tokens[i]);
  }
  return out;
}

// A tagged sentence for training or evaluation.
struct TaggedSentence {
  std::vector<std::string> tokens;
  std::vector<std::string> tags;
};

// Reads "token<TAB>tag" lines with a blank line between sentences.
inline std::vector<TaggedSentence> read_tagged_corpus(std::istream& in) {
  std::vector<TaggedSentence> out;
  TaggedSentence cur;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) {
      if (!cur.tokens.empty()) out.push_back(std::move(cur));
      cur = {};
      continue;
    }
    const auto tab = line.find('\t');
    if (tab == std::string::npos || tab == 0 || tab + 1 == line.size()) {
      throw DataError("load", "tagged corpus line " + std::to_string(lineno) + " is not token<TAB>tag");
    }
    cur.tokens.push_back(line.substr(0, tab));
    cur.tags.push_back(line.substr(tab + 1));
  }
  if (!cur.tokens.empty()) out.push_back(std::move(cur));
  return out;
}

inline std::vector<TaggedSentence> read_tagged_corpus(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("load", "cannot open tagged corpus '" + path + "'");
  return read_tagged_corpus(in);
}

struct TaggerAccuracy {
  std::size_t correct = 0;
  std::size_t total = 0;
  double rate() const { return total == 0 ? 0.0 : static_cast<double>(correct) / static_cast<double>(total); }
};

inline TaggerAccuracy evaluate_tagger(const TaggerModel& model, const std::vector<TaggedSentence>& gold) {
  TaggerAccuracy acc;
  for (const auto& s : gold) {
    const auto guess = model.tag_tokens(s.tokens);
    for (std::size_t i = 0; i < guess.size(); ++i) acc.correct += guess[i] == s.tags[i] ? 1 : 0;
    acc.total += guess.size();
  }
  return acc;
}

// Offline trainer. Weights are averaged over every update step; the tag
// dictionary holds frequent words that were (nearly) always one tag.
class PerceptronTrainer {
 public:
  struct Options {
    int iterations = 6;
    std::uint64_t seed = 1;
    std::size_t tagdict_min_count = 20;
    double tagdict_min_ratio = 0.97;
    float prune_below = 1e-3f;  // drop averaged weights smaller in magnitude
  };

  PerceptronTrainer(std::vector<std::string> tagset, Options opts) : opts_(opts), tags_(std::move(tagset)) {
    for (std::size_t i = 0; i < tags_.size(); ++i) tag_ids_.emplace(tags_[i], static_cast<std::uint8_t>(i));
  }

  TaggerModel train(const std::vector<TaggedSentence>& corpus, const std::string& version) {
    build_tagdict(corpus);
    std::vector<std::size_t> order(corpus.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    Mt64 rng(opts_.seed);
    for (int it = 0; it < opts_.iterations; ++it) {
      for (std::size_t idx : order) train_sentence(corpus[idx]);
      shuffle(order, rng);
    }
    return finalize(version);
  }

 private:
  struct Cell {
    double weight = 0;
    double total = 0;
    std::uint64_t stamp = 0;
  };
  struct Feature {
    std::string key;
    std::vector<Cell> cells;
  };

  std::uint8_t tag_id(const std::string& t) const {
    const auto it = tag_ids_.find(t);
    if (it == tag_ids_.end()) throw DataError("load", "training tag '" + t + "' is not in the tagset");
    return it->second;
  }

  void build_tagdict(const std::vector<TaggedSentence>& corpus) {
    std::unordered_map<std::string, std::unordered_map<std::string, std::size_t>> counts;
    for (const auto& s : corpus) {
      for (std::size_t i = 0; i < s.tokens.size(); ++i) ++counts[s.tokens[i]][s.tags[i]];
    }
    for (const auto& [word, by_tag] : counts) {
      std::size_t n = 0, best = 0;
      std::string best_tag;
      for (const auto& [t, c] : by_tag) {
        n += c;
        if (c > best || (c == best && t < best_tag)) {
          best = c;
          best_tag = t;
        }
      }
      if (n >= opts_.tagdict_min_count &&
          static_cast<double>(best) / static_cast<double>(n) >= opts_.tagdict_min_ratio) {
        tagdict_[word] = tag_id(best_tag);
      }
    }
  }

  std::size_t feature(int tmpl, std::string_view a, std::string_view b) {
    const auto h = tagger_detail::feature_hash(tmpl, a, b);
    auto [it, inserted] = index_.emplace(h, features_.size());
    if (inserted) features_.push_back({tagger_detail::feature_key(tmpl, a, b), std::vector<Cell>(tags_.size())});
    return it->second;
  }

  void train_sentence(const TaggedSentence& s) {
    const tagger_detail::Context ctx(s.tokens);
    std::vector<std::string> guesses(s.tokens.size());
    std::string_view prev = tagger_detail::kStart1;
    std::string_view prev2 = tagger_detail::kStart2;
    std::vector<std::size_t> active;
    std::vector<double> scores(tags_.size());
    for (std::size_t i = 0; i < s.tokens.size(); ++i) {
      std::uint8_t guess = 0;
      const std::uint8_t truth = tag_id(s.tags[i]);
      if (auto it = tagdict_.find(s.tokens[i]); it != tagdict_.end()) {
        guess = it->second;
      } else {
        active.clear();
        tagger_detail::for_each_feature(ctx, i, prev, prev2, [&](int tmpl, std::string_view a, std::string_view b) {
          active.push_back(feature(tmpl, a, b));
        });
        std::fill(scores.begin(), scores.end(), 0.0);
        for (std::size_t f : active) {
          for (std::size_t t = 0; t < tags_.size(); ++t) scores[t] += features_[f].cells[t].weight;
        }
        for (std::size_t t = 1; t < scores.size(); ++t) {
          if (scores[t] > scores[guess]) guess = static_cast<std::uint8_t>(t);
        }
        ++step_;
        if (guess != truth) {
          for (std::size_t f : active) {
            update(features_[f].cells[truth], 1.0);
            update(features_[f].cells[guess], -1.0);
          }
        }
      }
      guesses[i] = tags_[guess];
      prev2 = prev;
      prev = tags_[guess];
    }
  }

  void update(Cell& c, double delta) {
    c.total += static_cast<double>(step_ - c.stamp) * c.weight;
    c.stamp = step_;
    c.weight += delta;
  }

  TaggerModel finalize(const std::string& version) {
    TaggerModel m;
    m.version_ = version;
    m.tags_ = tags_;
    m.tagdict_ = tagdict_;
    std::vector<std::size_t> order(features_.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return features_[a].key < features_[b].key; });
    for (std::size_t idx : order) {
      auto& f = features_[idx];
      TaggerModel::Row row;
      for (std::size_t t = 0; t < tags_.size(); ++t) {
        Cell& c = f.cells[t];
        const double total = c.total + static_cast<double>(step_ - c.stamp) * c.weight;
        const auto avg = static_cast<float>(step_ == 0 ? 0.0 : total / static_cast<double>(step_));
        if (avg > opts_.prune_below || avg < -opts_.prune_below) row.emplace_back(static_cast<std::uint8_t>(t), avg);
      }
      if (row.empty()) continue;
      m.index_.emplace(tagger_detail::hash_key(f.key), static_cast<std::uint32_t>(m.rows_.size()));
      m.keys_.push_back(f.key);
      m.rows_.push_back(std::move(row));
    }
    return m;
  }

  Options opts_;
  std::vector<std::string> tags_;
  std::unordered_map<std::string, std::uint8_t> tag_ids_;
  std::unordered_map<std::string, std::uint8_t> tagdict_;
  std::unordered_map<std::uint64_t, std::size_t> index_;
  std::vector<Feature> features_;
  std::uint64_t step_ = 0;
};

}  // namespace citekey

#endif  // CITEKEY_TAGGER_HPP_
