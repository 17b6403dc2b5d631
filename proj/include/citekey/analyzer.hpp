#ifndef CITEKEY_ANALYZER_HPP_
#define CITEKEY_ANALYZER_HPP_

// Per-statement text processing shared by every counting path:
//
//   tokenize -> tag (case-preserved stream) -> normalize -> drop stopwords
//
// Collocates are formed from the stopword-filtered tokens. Key-term
// candidates are additionally restricted to content-word tags and, unless
// configured otherwise, non-numerals.

#include <string>
#include <vector>

#include "citekey/corpus.hpp"
#include "citekey/tagger.hpp"
#include "citekey/text.hpp"

namespace citekey {

struct ProcessedStatement {
  TokenSeq counted;  // normalized, stopword-filtered
  TokenSeq terms;    // key-term candidates (empty unless tagging was requested)
};

class TextPipeline {
 public:
  TextPipeline(const StopwordSet& stops, const TaggerModel* tagger,
               std::vector<std::string> content_prefixes = default_content_prefixes(), bool keep_numerals = false)
      : stops_(&stops),
        tagger_(tagger),
        content_prefixes_(std::move(content_prefixes)),
        keep_numerals_(keep_numerals) {}

  const StopwordSet& stopwords() const noexcept { return *stops_; }
  const TaggerModel* tagger() const noexcept { return tagger_; }

  // `with_terms` requires a tagger; collocate-only callers skip tagging.
  ProcessedStatement process(const CitationStatement& st, bool with_terms) const {
    ProcessedStatement out;
    const RawTokens raw = tokenize(st.text);
    std::vector<std::size_t> kept_norm;
    TokenSeq norm = normalize(raw, &kept_norm);
    norm.source_id = st.id;
    std::vector<std::size_t> kept_stop;
    out.counted = remove_stopwords(norm, *stops_, &kept_stop);
    if (!with_terms) return out;
    if (tagger_ == nullptr) throw UsageError("tag", "key-term counting needs a tagger model", st.id);

    const auto raw_tags = tagger_->tag_tokens(raw);
    TagSeq tags;
    tags.tags.reserve(kept_stop.size());
    for (std::size_t k : kept_stop) tags.tags.push_back(raw_tags[kept_norm[k]]);
    out.terms = content_word_filter(out.counted, tags, content_prefixes_);
    if (!keep_numerals_) {
      std::erase_if(out.terms.tokens, [](const std::string& t) { return is_numeral(t); });
    }
    return out;
  }

 private:
  const StopwordSet* stops_;
  const TaggerModel* tagger_;
  std::vector<std::string> content_prefixes_;
  bool keep_numerals_;
};

}  // namespace citekey

#endif  // CITEKEY_ANALYZER_HPP_
