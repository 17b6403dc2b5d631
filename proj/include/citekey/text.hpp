#ifndef CITEKEY_TEXT_HPP_
#define CITEKEY_TEXT_HPP_

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "citekey/error.hpp"

namespace citekey {

using RawTokens = std::vector<std::string>;

// Normalized tokens of one statement. Tokens are non-empty and carry no
// whitespace.
struct TokenSeq {
  std::vector<std::string> tokens;
  std::string source_id;

  std::size_t size() const noexcept { return tokens.size(); }
  bool empty() const noexcept { return tokens.empty(); }
  bool operator==(const TokenSeq&) const = default;
};

namespace text_detail {

enum class CharClass : std::uint8_t { kSpace, kPunct, kWord };

struct CodePoint {
  char32_t value;
  std::size_t length;  // bytes consumed
};

// Invalid sequences decode as a single byte with the byte's value so that
// tokenization stays total.
inline CodePoint decode_utf8(std::string_view s, std::size_t pos) {
  const auto b0 = static_cast<unsigned char>(s[pos]);
  if (b0 < 0x80) return {b0, 1};
  std::size_t len = 0;
  char32_t cp = 0;
  if ((b0 & 0xE0) == 0xC0) {
    len = 2;
    cp = b0 & 0x1F;
  } else if ((b0 & 0xF0) == 0xE0) {
    len = 3;
    cp = b0 & 0x0F;
  } else if ((b0 & 0xF8) == 0xF0) {
    len = 4;
    cp = b0 & 0x07;
  } else {
    return {b0, 1};
  }
  if (pos + len > s.size()) return {b0, 1};
  for (std::size_t i = 1; i < len; ++i) {
    const auto b = static_cast<unsigned char>(s[pos + i]);
    if ((b & 0xC0) != 0x80) return {b0, 1};
    cp = (cp << 6) | (b & 0x3F);
  }
  return {cp, len};
}

inline CharClass classify(char32_t cp) {
  if (cp == 0x09 || cp == 0x0A || cp == 0x0B || cp == 0x0C || cp == 0x0D || cp == 0x20 ||
      cp == 0x85 || cp == 0xA0 || (cp >= 0x2000 && cp <= 0x200B) || cp == 0x202F ||
      cp == 0x205F || cp == 0x3000 || cp == 0xFEFF) {
    return CharClass::kSpace;
  }
  if (cp < 0x80) {
    const bool punct = (cp >= 0x21 && cp <= 0x2F) || (cp >= 0x3A && cp <= 0x40) ||
                       (cp >= 0x5B && cp <= 0x60) || (cp >= 0x7B && cp <= 0x7E);
    return punct ? CharClass::kPunct : CharClass::kWord;
  }
  if (cp >= 0xA1 && cp <= 0xBF && cp != 0xAA && cp != 0xB5 && cp != 0xBA) return CharClass::kPunct;
  if (cp == 0xD7 || cp == 0xF7 || (cp >= 0x2010 && cp <= 0x205E) || (cp >= 0x3001 && cp <= 0x303F)) {
    return CharClass::kPunct;
  }
  return CharClass::kWord;
}

inline bool is_ascii_digit(char32_t cp) { return cp >= U'0' && cp <= U'9'; }

inline bool is_joiner(char32_t cp) { return cp == U'-' || cp == U'\'' || cp == 0x2019; }

inline char ascii_lower(char c) { return (c >= 'A' && c <= 'Z') ? static_cast<char>(c + 32) : c; }

inline std::string ascii_lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = ascii_lower(c);
  return out;
}

// PTB-style clitic split: "don't" -> "do" "n't", "Smith's" -> "Smith" "'s".
// Curly apostrophes are accepted; the original bytes are preserved.
inline void push_word(std::string_view word, RawTokens& out) {
  std::string folded = ascii_lower(word);
  std::size_t pos = 0;
  while ((pos = folded.find("\xE2\x80\x99", pos)) != std::string::npos) folded.replace(pos, 3, "'");
  const std::size_t ascii_apos = word.rfind('\'');
  const std::size_t curly_apos = word.rfind("\xE2\x80\x99");
  std::size_t apos = std::string_view::npos;
  if (ascii_apos != std::string_view::npos) apos = ascii_apos;
  if (curly_apos != std::string_view::npos && (apos == std::string_view::npos || curly_apos > apos)) {
    apos = curly_apos;
  }
  const auto split_at = [&](std::size_t at) {
    out.emplace_back(word.substr(0, at));
    out.emplace_back(word.substr(at));
  };
  if (folded.size() > 3 && folded.ends_with("n't")) {
    split_at(apos - 1);
    return;
  }
  static constexpr std::array<std::string_view, 6> kClitics = {"'s", "'re", "'ve", "'ll", "'d", "'m"};
  for (auto clitic : kClitics) {
    if (folded.size() > clitic.size() && folded.ends_with(clitic)) {
      split_at(apos);
      return;
    }
  }
  out.emplace_back(word);
}

}  // namespace text_detail

// Splits on whitespace and punctuation. Each punctuation code point is its own
// token, so "[6]" yields "[", "6", "]". Hyphens and apostrophes between word
// characters stay inside the word ("co-expression"); '.' and ',' between two
// digits stay inside numerals ("0.05", "1,000"). Clitics are split PTB-style.
inline RawTokens tokenize(std::string_view text) {
  using text_detail::CharClass;
  RawTokens out;
  std::size_t i = 0;
  const std::size_t n = text.size();
  while (i < n) {
    const auto cp = text_detail::decode_utf8(text, i);
    const auto cls = text_detail::classify(cp.value);
    if (cls == CharClass::kSpace) {
      i += cp.length;
      continue;
    }
    if (cls == CharClass::kPunct) {
      out.emplace_back(text.substr(i, cp.length));
      i += cp.length;
      continue;
    }
    std::size_t j = i + cp.length;
    char32_t prev = cp.value;
    while (j < n) {
      const auto c = text_detail::decode_utf8(text, j);
      const auto c_cls = text_detail::classify(c.value);
      if (c_cls == CharClass::kWord) {
        prev = c.value;
        j += c.length;
        continue;
      }
      if (c_cls != CharClass::kPunct || j + c.length >= n) break;
      const auto next = text_detail::decode_utf8(text, j + c.length);
      if (text_detail::classify(next.value) != CharClass::kWord) break;
      const bool join = text_detail::is_joiner(c.value) ||
                        ((c.value == U'.' || c.value == U',') && text_detail::is_ascii_digit(prev) &&
                         text_detail::is_ascii_digit(next.value));
      if (!join) break;
      prev = c.value;
      j += c.length;
    }
    text_detail::push_word(text.substr(i, j - i), out);
    i = j;
  }
  return out;
}

// True when the token holds no word-class code point.
inline bool is_punctuation(std::string_view token) {
  for (std::size_t i = 0; i < token.size();) {
    const auto cp = text_detail::decode_utf8(token, i);
    if (text_detail::classify(cp.value) == text_detail::CharClass::kWord) return false;
    i += cp.length;
  }
  return true;
}

// Digits with optional '.'/',' separators.
inline bool is_numeral(std::string_view token) {
  bool digit = false;
  for (char c : token) {
    if (c >= '0' && c <= '9') {
      digit = true;
    } else if (c != '.' && c != ',') {
      return false;
    }
  }
  return digit;
}

// Lowercases (ASCII) and drops pure-punctuation tokens. When `kept` is given it
// receives the input index of every surviving token, so parallel annotations
// (tags) can be carried across.
inline TokenSeq normalize(const RawTokens& tokens, std::vector<std::size_t>* kept = nullptr) {
  TokenSeq seq;
  seq.tokens.reserve(tokens.size());
  if (kept) kept->clear();
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (tokens[i].empty() || is_punctuation(tokens[i])) continue;
    seq.tokens.push_back(text_detail::ascii_lower(tokens[i]));
    if (kept) kept->push_back(i);
  }
  return seq;
}

class StopwordSet {
 public:
  StopwordSet() = default;

  template <typename Range>
  explicit StopwordSet(const Range& words) {
    for (const auto& w : words) insert(w);
  }

  void insert(std::string_view word) {
    if (!word.empty()) words_.insert(text_detail::ascii_lower(word));
  }

  bool contains(std::string_view word) const {
    return words_.contains(text_detail::ascii_lower(word));
  }

  std::size_t size() const noexcept { return words_.size(); }
  bool empty() const noexcept { return words_.empty(); }
  const std::unordered_set<std::string>& words() const noexcept { return words_; }

 private:
  std::unordered_set<std::string> words_;
};

// NLTK's English list plus the clitic tokens produced by tokenize().
inline const StopwordSet& default_stopwords() {
  static const StopwordSet kSet = [] {
    static constexpr std::array<std::string_view, 186> kWords = {
        "i", "me", "my", "myself", "we", "our", "ours", "ourselves", "you", "you're",
        "you've", "you'll", "you'd", "your", "yours", "yourself", "yourselves", "he", "him", "his",
        "himself", "she", "she's", "her", "hers", "herself", "it", "it's", "its", "itself",
        "they", "them", "their", "theirs", "themselves", "what", "which", "who", "whom", "this",
        "that", "that'll", "these", "those", "am", "is", "are", "was", "were", "be",
        "been", "being", "have", "has", "had", "having", "do", "does", "did", "doing",
        "a", "an", "the", "and", "but", "if", "or", "because", "as", "until",
        "while", "of", "at", "by", "for", "with", "about", "against", "between", "into",
        "through", "during", "before", "after", "above", "below", "to", "from", "up", "down",
        "in", "out", "on", "off", "over", "under", "again", "further", "then", "once",
        "here", "there", "when", "where", "why", "how", "all", "any", "both", "each",
        "few", "more", "most", "other", "some", "such", "no", "nor", "not", "only",
        "own", "same", "so", "than", "too", "very", "s", "t", "can", "will",
        "just", "don", "don't", "should", "should've", "now", "d", "ll", "m", "o",
        "re", "ve", "y", "ain", "aren", "aren't", "couldn", "couldn't", "didn", "didn't",
        "doesn", "doesn't", "hadn", "hadn't", "hasn", "hasn't", "haven", "haven't", "isn", "isn't",
        "ma", "mightn", "mightn't", "mustn", "mustn't", "needn", "needn't", "shan", "shan't", "shouldn",
        "shouldn't", "wasn", "wasn't", "weren", "weren't", "won", "won't", "wouldn", "wouldn't", "n't",
        "'s", "'re", "'ve", "'ll", "'d", "'m"};
    return StopwordSet(kWords);
  }();
  return kSet;
}

// Order-preserving filter. `kept` works as in normalize().
inline TokenSeq remove_stopwords(const TokenSeq& seq, const StopwordSet& stops,
                                 std::vector<std::size_t>* kept = nullptr) {
  TokenSeq out;
  out.source_id = seq.source_id;
  out.tokens.reserve(seq.tokens.size());
  if (kept) kept->clear();
  for (std::size_t i = 0; i < seq.tokens.size(); ++i) {
    if (stops.contains(seq.tokens[i])) continue;
    out.tokens.push_back(seq.tokens[i]);
    if (kept) kept->push_back(i);
  }
  return out;
}

// One word per line, '#' starts a comment line.
inline StopwordSet load_stopwords(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("load", "cannot open stopword file '" + path + "'");
  StopwordSet set;
  std::string line;
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    const auto last = line.find_last_not_of(" \t\r");
    set.insert(std::string_view(line).substr(first, last - first + 1));
  }
  return set;
}

}  // namespace citekey

#endif  // CITEKEY_TEXT_HPP_
