#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "citekey/analyzer.hpp"
#include "citekey/collocation.hpp"
#include "support.hpp"

namespace citekey {
namespace {

using Strings = std::vector<std::string>;

Strings keys(const std::vector<Collocate>& cs) {
  Strings out;
  for (const auto& c : cs) {
    std::string k;
    for (const auto& t : c.tokens) k += t;
    out.push_back(k);
  }
  return out;
}

TokenSeq letters(std::size_t n) {
  TokenSeq s;
  for (std::size_t i = 0; i < n; ++i) s.tokens.push_back(std::string(1, static_cast<char>('a' + i % 26)));
  return s;
}

// Independent oracle: scan all index tuples and keep those inside the span.
std::multiset<Strings> brute_force(const Strings& t, int order, std::size_t w) {
  std::multiset<Strings> out;
  const std::size_t n = t.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < (order == 3 ? n : 1); ++k) {
        if (order == 2 && i < j && j - i <= w - 1) out.insert({t[i], t[j]});
        if (order == 3 && i < j && j < k && k - i <= w - 1) out.insert({t[i], t[j], t[k]});
      }
  return out;
}

std::multiset<Strings> as_multiset(const std::vector<Collocate>& cs) {
  std::multiset<Strings> out;
  for (const auto& c : cs) out.insert(c.tokens);
  return out;
}

TEST(ExtractNgrams, FourTokensAllPairs) {
  EXPECT_EQ(keys(extract_ngrams(letters(4), 2, 5)), (Strings{"ab", "ac", "ad", "bc", "bd", "cd"}));
}

TEST(ExtractNgrams, TooShortForTrigram) { EXPECT_TRUE(extract_ngrams(letters(2), 3, 5).empty()); }

TEST(ExtractNgrams, NarrowWindow) {
  EXPECT_EQ(keys(extract_ngrams(letters(6), 2, 3)),
            (Strings{"ab", "ac", "bc", "bd", "cd", "ce", "de", "df", "ef"}));
}

TEST(ExtractNgrams, TrigramSpanIsInclusive) {
  // With w = 3 only adjacent triples fit.
  EXPECT_EQ(keys(extract_ngrams(letters(4), 3, 3)), (Strings{"abc", "bcd"}));
  EXPECT_EQ(extract_ngrams(letters(5), 3, 5).size(), 10u);
}

TEST(ExtractNgrams, RejectsBadArguments) {
  EXPECT_THROW(extract_ngrams(letters(3), 4, 5), UsageError);
  EXPECT_THROW(extract_ngrams(letters(3), 3, 2), UsageError);
}

TEST(ExtractNgrams, MatchesBruteForce) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 300; ++trial) {
    TokenSeq seq;
    for (std::size_t i = rng() % 15; i > 0; --i) seq.tokens.push_back(std::string(1, static_cast<char>('a' + rng() % 4)));
    const int order = 2 + static_cast<int>(rng() % 2);
    const std::size_t w = static_cast<std::size_t>(order) + rng() % 6;
    EXPECT_EQ(as_multiset(extract_ngrams(seq, order, w)), brute_force(seq.tokens, order, w));
  }
}

TEST(ExtractNgrams, PairCountFormula) {
  for (std::size_t w = 2; w <= 20; ++w) {
    for (std::size_t n = w; n <= 20; ++n) {
      const std::size_t expected = (w - 1) * n - (w - 1) * w / 2;
      EXPECT_EQ(extract_ngrams(letters(n), 2, w).size(), expected) << "n=" << n << " w=" << w;
      EXPECT_EQ(brute_force(letters(n).tokens, 2, w).size(), expected);
    }
  }
}

TEST(ExtractNgrams, WindowMonotonicity) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 100; ++trial) {
    TokenSeq seq;
    for (std::size_t i = rng() % 14; i > 0; --i) seq.tokens.push_back(std::string(1, static_cast<char>('a' + rng() % 3)));
    for (int order = 2; order <= 3; ++order) {
      for (std::size_t w = static_cast<std::size_t>(order); w < 10; ++w) {
        const auto small = as_multiset(extract_ngrams(seq, order, w));
        const auto large = as_multiset(extract_ngrams(seq, order, w + 1));
        EXPECT_TRUE(std::includes(large.begin(), large.end(), small.begin(), small.end()));
      }
    }
  }
}

Subcorpus make_sub(const std::string& label, const Strings& texts) {
  Subcorpus s;
  s.label = label;
  for (std::size_t i = 0; i < texts.size(); ++i) s.statements.push_back({label + std::to_string(i), texts[i], label});
  return s;
}

TextPipeline pipeline() { return TextPipeline(default_stopwords(), &testing::bundled_tagger()); }

TEST(CountTerms, ConfirmedThreeTimes) {
  const auto sub = make_sub("s", {"These data confirmed the model.", "It was confirmed by others.",
                                  "We confirmed this result."});
  EXPECT_EQ(count_terms(sub, pipeline()).count("confirmed"), 3u);
}

TEST(CountTerms, EmptySubcorpus) {
  const auto t = count_terms(make_sub("s", {}), pipeline());
  EXPECT_TRUE(t.counts.empty());
  EXPECT_EQ(t.total_items, 0u);
}

TEST(CountTerms, OccurrencesNotDocuments) {
  const auto t = count_terms(make_sub("s", {"Results confirmed confirmed it."}), pipeline());
  EXPECT_EQ(t.count("confirmed"), 2u);
}

TEST(CountTerms, TotalIsCountedTokens) {
  const auto t = count_terms(make_sub("s", {"Our results are consistent with previous studies [12].",
                                            "In contrast, we did not observe any change."}),
                             pipeline());
  std::uint64_t sum = 0;
  for (const auto& [item, c] : t.counts) sum += c;
  EXPECT_EQ(t.total_items, sum);
  EXPECT_EQ(t.count("12"), 0u);  // numerals are not key terms by default
  EXPECT_EQ(t.count("the"), 0u);
}

TEST(CountCollocates, MinFreqBoundary) {
  const auto twice = make_sub("s", {"strong agreement", "strong agreement"});
  const auto thrice = make_sub("s", {"strong agreement", "strong agreement", "strong agreement"});
  EXPECT_EQ(count_collocates(twice, pipeline(), 2, 5, 3).count("strong agreement"), 0u);
  const auto t = count_collocates(thrice, pipeline(), 2, 5, 3);
  EXPECT_EQ(t.count("strong agreement"), 3u);
  EXPECT_EQ(t.params.min_freq, 3u);
}

TEST(CountCollocates, MinFreqOneIsRawAggregation) {
  const auto sub = make_sub("s", {"alpha beta gamma delta", "beta gamma", "alpha delta epsilon zeta eta theta"});
  auto raw = count_range(sub, 0, sub.size(), pipeline(), CountRequest{{2}, 5}).front();
  const auto filtered = count_collocates(sub, pipeline(), 2, 5, 1);
  EXPECT_EQ(filtered.counts, raw.counts);
  EXPECT_EQ(filtered.total_items, raw.total_items);
}

TEST(CountCollocates, TotalItemsFixedBeforeFiltering) {
  const auto sub = make_sub("s", {"alpha beta gamma", "alpha beta"});
  const auto t = count_collocates(sub, pipeline(), 2, 5, 2);
  EXPECT_EQ(t.total_items, 4u);  // ab ac bc + ab
  EXPECT_EQ(t.counts.size(), 1u);
  for (const auto& [item, c] : t.counts) EXPECT_GE(c, 2u);
}

TEST(CountCollocates, BoundarySafety) {
  // Separate statements never pair their tokens.
  const auto sub = make_sub("s", {"alpha beta", "gamma delta"});
  const auto t = count_collocates(sub, pipeline(), 2, 5, 1);
  EXPECT_EQ(t.counts.size(), 2u);
  EXPECT_EQ(t.count("beta gamma"), 0u);
  const auto joined = count_collocates(make_sub("s", {"alpha beta gamma delta"}), pipeline(), 2, 5, 1);
  for (const auto& [item, c] : t.counts) EXPECT_LE(c, joined.count(item));
}

CountTable random_table(std::mt19937_64& rng, std::size_t max_items) {
  CountTable t;
  t.label = "x";
  t.params = CountParams{2, 5, 0};
  for (std::size_t i = rng() % (max_items + 1); i > 0; --i) {
    const auto c = 1 + rng() % 5;
    t.counts["w" + std::to_string(rng() % 8) + " v" + std::to_string(rng() % 3)] += c;
    t.total_items += c;
  }
  return t;
}

TEST(MergeTables, CommutativeMonoid) {
  std::mt19937_64 rng(31);
  CountTable empty;
  empty.label = "x";
  empty.params = CountParams{2, 5, 0};
  for (int trial = 0; trial < 200; ++trial) {
    const auto a = random_table(rng, 10), b = random_table(rng, 10), c = random_table(rng, 10);
    EXPECT_EQ(merge_tables(a, empty), a);
    EXPECT_EQ(merge_tables(empty, a), a);
    EXPECT_EQ(merge_tables(a, b), merge_tables(b, a));
    EXPECT_EQ(merge_tables(merge_tables(a, b), c), merge_tables(a, merge_tables(b, c)));
    const auto ab = merge_tables(a, b);
    EXPECT_EQ(ab.total_items, a.total_items + b.total_items);
    for (const auto& [item, n] : ab.counts) EXPECT_EQ(n, a.count(item) + b.count(item));
  }
}

TEST(MergeTables, ParameterMismatchFails) {
  CountTable a, b;
  a.label = b.label = "x";
  a.params = CountParams{2, 5, 0};
  b.params = CountParams{2, 4, 0};
  EXPECT_THROW(merge_tables(a, b), UsageError);
  b.params = a.params;
  b.label = "y";
  EXPECT_THROW(merge_tables(a, b), UsageError);
}

Subcorpus hundred_statements() {
  std::mt19937_64 rng(41);
  const Strings words = {"higher", "expression", "consistent", "previous", "studies", "reported", "the",
                         "results", "contrast", "observed", "similar", "not", "method", "described"};
  Strings texts;
  for (int i = 0; i < 100; ++i) {
    std::string s;
    for (std::size_t k = 3 + rng() % 10; k > 0; --k) s += words[rng() % words.size()] + " ";
    texts.push_back(s + "[" + std::to_string(i % 7) + "].");
  }
  return make_sub("c", texts);
}

TEST(Counting, ChunkedMergeEqualsSequential) {
  const auto sub = hundred_statements();
  const auto p = pipeline();
  const CountRequest req{{1, 2, 3}, 5};
  const auto seq = count_range(sub, 0, sub.size(), p, req);
  std::vector<CountTable> merged;
  for (std::size_t chunk = 0; chunk < 4; ++chunk) {
    auto part = count_range(sub, chunk * 25, chunk * 25 + 25, p, req);
    if (merged.empty()) {
      merged = std::move(part);
    } else {
      for (std::size_t i = 0; i < part.size(); ++i) merged[i] = merge_tables(merged[i], part[i]);
    }
  }
  EXPECT_EQ(merged, seq);
}

TEST(Counting, PartitionAndThreadCountDoNotMatter) {
  const auto sub = hundred_statements();
  const auto p = pipeline();
  const auto base = count_partitioned(sub, p, CountRequest{}, 1, 1);
  for (std::size_t parts : {2u, 3u, 7u, 100u, 500u}) {
    for (std::size_t threads : {1u, 4u}) EXPECT_EQ(count_partitioned(sub, p, CountRequest{}, parts, threads), base);
  }
}

TEST(Counting, UnfilteredTotalEqualsSum) {
  const auto sub = hundred_statements();
  for (const auto& t : count_range(sub, 0, sub.size(), pipeline(), CountRequest{})) {
    std::uint64_t sum = 0;
    for (const auto& [item, c] : t.counts) {
      EXPECT_GE(c, 1u);
      sum += c;
    }
    EXPECT_EQ(t.total_items, sum) << kind_name(t.params.order);
  }
}

TEST(MinFreq, GlobalScopeSumsAcrossTables) {
  std::map<std::string, CountTable> tables;
  tables["a"].counts = {{"x y", 2}, {"p q", 1}};
  tables["b"].counts = {{"x y", 1}, {"r s", 3}};
  apply_global_min_freq(tables, 3);
  EXPECT_EQ(tables["a"].count("x y"), 2u);
  EXPECT_EQ(tables["b"].count("x y"), 1u);
  EXPECT_EQ(tables["a"].count("p q"), 0u);
  EXPECT_EQ(tables["b"].count("r s"), 3u);
  EXPECT_THROW(apply_min_freq(tables["a"], 0), UsageError);
}

TEST(CountCsv, RoundTrip) {
  CountTable t;
  t.counts = {{"consistent previous", 5}, {"a,b \"c\"", 2}, {"zeta", 1}};
  std::ostringstream out;
  write_count_csv(t, out);
  EXPECT_TRUE(out.str().starts_with("item,count\n\"a,b \"\"c\"\"\",2\n"));
  EXPECT_EQ(read_count_csv(out.str()), t.counts);
  EXPECT_THROW(read_count_csv("wrong,header\n"), DataError);
  EXPECT_THROW(read_count_csv("item,count\nx,notanumber\n"), DataError);
}

}  // namespace
}  // namespace citekey
