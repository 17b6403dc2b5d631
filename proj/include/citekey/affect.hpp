#ifndef CITEKEY_AFFECT_HPP_
#define CITEKEY_AFFECT_HPP_

// Lexicon-based polarity and subjectivity.
//
// Lexicon file (UTF-8, tab-separated, '#' comments):
//
//   [meta]
//   version <TAB> <string>
//   [entries]
//   word <TAB> polarity <TAB> subjectivity
//   [intensifiers]
//   word <TAB> multiplier
//   [negators]
//   word
//
// Scoring a token sequence: every token found in `entries` is a match.
// An intensifier immediately before a match multiplies its polarity (then
// clamped to [-1,1]); a negator one or two tokens before a match turns its
// polarity p into -p/2. Polarity and subjectivity are means over matches;
// no matches scores (0, 0).

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <istream>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "citekey/error.hpp"
#include "citekey/keyness.hpp"
#include "citekey/text.hpp"

namespace citekey {

struct AffectEntry {
  double polarity = 0.0;
  double subjectivity = 0.0;

  bool operator==(const AffectEntry&) const = default;
};

struct AffectScore {
  double polarity = 0.0;
  double subjectivity = 0.0;

  bool operator==(const AffectScore&) const = default;
};

class AffectLexicon {
 public:
  AffectLexicon() = default;

  const std::string& version() const noexcept { return version_; }
  std::size_t size() const noexcept { return entries_.size(); }
  const std::unordered_map<std::string, AffectEntry>& entries() const noexcept { return entries_; }
  const std::unordered_map<std::string, double>& intensifiers() const noexcept { return intensifiers_; }
  const std::unordered_set<std::string>& negators() const noexcept { return negators_; }

  const AffectEntry* find(const std::string& word) const {
    const auto it = entries_.find(word);
    return it == entries_.end() ? nullptr : &it->second;
  }
  double intensity(const std::string& word) const {
    const auto it = intensifiers_.find(word);
    return it == intensifiers_.end() ? 1.0 : it->second;
  }
  bool is_negator(const std::string& word) const { return negators_.contains(word); }

  // Programmatic construction; validates like the file loader.
  void set_version(std::string v) { version_ = std::move(v); }
  void add_entry(const std::string& word, double polarity, double subjectivity) {
    check_word(word);
    if (!(polarity >= -1.0 && polarity <= 1.0)) throw DataError("load", "polarity out of [-1,1] for '" + word + "'");
    if (!(subjectivity >= 0.0 && subjectivity <= 1.0)) {
      throw DataError("load", "subjectivity out of [0,1] for '" + word + "'");
    }
    entries_[word] = {polarity, subjectivity};
  }
  void add_intensifier(const std::string& word, double multiplier) {
    check_word(word);
    if (!(multiplier > 0.0) || !std::isfinite(multiplier)) {
      throw DataError("load", "intensifier multiplier must be > 0 for '" + word + "'");
    }
    intensifiers_[word] = multiplier;
  }
  void add_negator(const std::string& word) {
    check_word(word);
    negators_.insert(word);
  }

  static AffectLexicon parse(std::istream& in, const std::string& source = "<lexicon>");

 private:
  static void check_word(const std::string& word) {
    if (word.empty()) throw DataError("load", "empty lexicon word");
  }

  std::string version_;
  std::unordered_map<std::string, AffectEntry> entries_;
  std::unordered_map<std::string, double> intensifiers_;
  std::unordered_set<std::string> negators_;
};

namespace affect_detail {

inline std::vector<std::string> split_tabs(std::string_view line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto tab = line.find('\t', start);
    out.emplace_back(line.substr(start, tab == std::string_view::npos ? std::string_view::npos : tab - start));
    if (tab == std::string_view::npos) break;
    start = tab + 1;
  }
  return out;
}

inline double parse_number(const std::string& s, const std::string& where) {
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size() || !std::isfinite(v)) {
    throw DataError("load", where + ": not a number: '" + s + "'");
  }
  return v;
}

}  // namespace affect_detail

inline AffectLexicon AffectLexicon::parse(std::istream& in, const std::string& source) {
  enum class Section { kNone, kMeta, kEntries, kIntensifiers, kNegators };
  AffectLexicon lex;
  Section section = Section::kNone;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    const std::string where = source + " line " + std::to_string(lineno);
    if (line.front() == '[') {
      if (line == "[meta]") {
        section = Section::kMeta;
      } else if (line == "[entries]") {
        section = Section::kEntries;
      } else if (line == "[intensifiers]") {
        section = Section::kIntensifiers;
      } else if (line == "[negators]") {
        section = Section::kNegators;
      } else {
        throw DataError("load", where + ": unknown section " + line);
      }
      continue;
    }
    const auto f = affect_detail::split_tabs(line);
    const auto expect = [&](std::size_t n) {
      if (f.size() != n) {
        throw DataError("load", where + ": expected " + std::to_string(n) + " tab-separated fields");
      }
    };
    try {
      switch (section) {
        case Section::kNone:
          throw DataError("load", where + ": row outside any section");
        case Section::kMeta:
          expect(2);
          if (f[0] == "version") lex.version_ = f[1];
          break;
        case Section::kEntries:
          expect(3);
          lex.add_entry(f[0], affect_detail::parse_number(f[1], where), affect_detail::parse_number(f[2], where));
          break;
        case Section::kIntensifiers:
          expect(2);
          lex.add_intensifier(f[0], affect_detail::parse_number(f[1], where));
          break;
        case Section::kNegators:
          expect(1);
          lex.add_negator(f[0]);
          break;
      }
    } catch (const DataError& e) {
      if (e.message().starts_with(where)) throw;
      throw DataError("load", where + ": " + e.message());
    }
  }
  if (lex.version_.empty()) throw DataError("load", source + ": missing [meta] version");
  if (lex.entries_.empty()) throw DataError("load", source + ": no [entries]");
  return lex;
}

inline AffectLexicon load_affect_lexicon(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("load", "cannot open lexicon '" + path + "'");
  return AffectLexicon::parse(in, path);
}

inline AffectScore score(const TokenSeq& seq, const AffectLexicon& lex) {
  const auto& t = seq.tokens;
  double pol = 0.0, subj = 0.0;
  std::size_t matches = 0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    const AffectEntry* e = lex.find(t[i]);
    if (e == nullptr) continue;
    double p = e->polarity;
    if (i >= 1) p = std::clamp(p * lex.intensity(t[i - 1]), -1.0, 1.0);
    if ((i >= 1 && lex.is_negator(t[i - 1])) || (i >= 2 && lex.is_negator(t[i - 2]))) p = -p / 2.0;
    pol += p;
    subj += e->subjectivity;
    ++matches;
  }
  if (matches == 0) return {};
  const double n = static_cast<double>(matches);
  return {std::clamp(pol / n, -1.0, 1.0), std::clamp(subj / n, 0.0, 1.0)};
}

inline double polarity(const TokenSeq& seq, const AffectLexicon& lex) { return score(seq, lex).polarity; }
inline double subjectivity(const TokenSeq& seq, const AffectLexicon& lex) { return score(seq, lex).subjectivity; }

// Whole-statement scoring: tokenize and lowercase, punctuation dropped,
// stopwords kept (negators are stopwords).
inline AffectScore score_text(std::string_view text, const AffectLexicon& lex) {
  return score(normalize(tokenize(text)), lex);
}

struct ScoredRow {
  KeynessRow row;
  AffectScore affect;

  bool operator==(const ScoredRow&) const = default;
};

inline TokenSeq item_tokens(const std::string& item) {
  TokenSeq seq;
  std::size_t start = 0;
  while (start <= item.size()) {
    const auto sp = item.find(' ', start);
    const auto end = sp == std::string::npos ? item.size() : sp;
    if (end > start) seq.tokens.push_back(item.substr(start, end - start));
    if (sp == std::string::npos) break;
    start = sp + 1;
  }
  return seq;
}

// Scores each row's item as a bare token sequence, in row order.
inline std::vector<ScoredRow> score_collocates(const KeynessTable& table, const AffectLexicon& lex) {
  std::vector<ScoredRow> out;
  out.reserve(table.rows.size());
  for (const auto& row : table.rows) out.push_back({row, score(item_tokens(row.item), lex)});
  return out;
}

}  // namespace citekey

#endif  // CITEKEY_AFFECT_HPP_
