#include <gtest/gtest.h>

#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "citekey/affect.hpp"
#include "support.hpp"

namespace citekey {
namespace {

using testing::bundled_lexicon;

AffectLexicon toy() {
  AffectLexicon lex;
  lex.set_version("toy");
  lex.add_entry("good", 0.7, 0.6);
  lex.add_entry("bad", -0.7, 0.67);
  lex.add_entry("strong", 0.4333, 0.7333);
  lex.add_entry("novel", 0.0, 0.9);
  lex.add_intensifier("very", 1.3);
  lex.add_intensifier("slightly", 0.5);
  lex.add_negator("not");
  lex.add_negator("never");
  return lex;
}

TokenSeq seq(std::vector<std::string> t) { return TokenSeq{std::move(t), ""}; }

TEST(Score, NoMatchesIsNeutral) {
  const auto s = score(seq({"the", "method", "was", "performed"}), toy());
  EXPECT_EQ(s, (AffectScore{0.0, 0.0}));
  EXPECT_EQ(score(seq({}), toy()), (AffectScore{0.0, 0.0}));
}

TEST(Score, NegatedPositive) { EXPECT_DOUBLE_EQ(polarity(seq({"not", "good"}), toy()), -0.35); }

TEST(Score, NegatorTwoBackStillApplies) {
  EXPECT_DOUBLE_EQ(polarity(seq({"not", "very", "good"}), toy()), -std::min(1.0, 0.7 * 1.3) / 2.0);
  EXPECT_DOUBLE_EQ(polarity(seq({"not", "x", "y", "good"}), toy()), 0.7);
}

TEST(Score, IntensifierScalesAndClamps) {
  AffectLexicon lex = toy();
  lex.add_entry("superb", 0.9, 1.0);
  EXPECT_DOUBLE_EQ(polarity(seq({"very", "good"}), lex), 0.7 * 1.3);
  EXPECT_DOUBLE_EQ(polarity(seq({"very", "superb"}), lex), 1.0);
  EXPECT_DOUBLE_EQ(polarity(seq({"slightly", "bad"}), lex), -0.35);
  // Subjectivity ignores the local rules.
  EXPECT_DOUBLE_EQ(subjectivity(seq({"very", "superb"}), lex), 1.0);
}

TEST(Score, MeanOverMatches) {
  const auto s = score(seq({"good", "results", "but", "bad", "novel", "design"}), toy());
  EXPECT_NEAR(s.polarity, (0.7 - 0.7 + 0.0) / 3.0, 1e-15);
  EXPECT_NEAR(s.subjectivity, (0.6 + 0.67 + 0.9) / 3.0, 1e-15);
  EXPECT_DOUBLE_EQ(subjectivity(seq({"novel"}), toy()), 0.9);
}

TEST(Score, NegationRuleForEveryBundledWord) {
  for (const auto& [word, entry] : bundled_lexicon().entries()) {
    if (entry.polarity == 0.0 || bundled_lexicon().is_negator(word)) continue;
    EXPECT_EQ(polarity(seq({"not", word}), bundled_lexicon()), -entry.polarity / 2.0) << word;
  }
}

TEST(Score, BoundsHoldOnRandomInput) {
  std::vector<std::string> vocab;
  for (const auto& [w, e] : bundled_lexicon().entries()) vocab.push_back(w);
  for (const auto& [w, m] : bundled_lexicon().intensifiers()) vocab.push_back(w);
  for (const auto& w : bundled_lexicon().negators()) vocab.push_back(w);
  vocab.push_back("unknownword");
  std::sort(vocab.begin(), vocab.end());
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 5000; ++trial) {
    TokenSeq s;
    for (std::size_t i = rng() % 12; i > 0; --i) s.tokens.push_back(vocab[rng() % vocab.size()]);
    const auto a = score(s, bundled_lexicon());
    EXPECT_GE(a.polarity, -1.0);
    EXPECT_LE(a.polarity, 1.0);
    EXPECT_GE(a.subjectivity, 0.0);
    EXPECT_LE(a.subjectivity, 1.0);
    EXPECT_EQ(score(s, bundled_lexicon()), a);
  }
}

TEST(ScoreText, WorkedExampleIsNeutralAndLowSubjectivity) {
  std::ifstream in(testing::data_path("fixtures/worked-example.txt"));
  std::string text;
  std::getline(in, text);
  ASSERT_FALSE(text.empty());
  const auto s = score_text(text, bundled_lexicon());
  EXPECT_GE(s.polarity, -0.2);
  EXPECT_LE(s.polarity, 0.2);
  EXPECT_GE(s.subjectivity, 0.0);
  EXPECT_LE(s.subjectivity, 0.4);
}

TEST(Lexicon, BundledFileIsLarge) {
  EXPECT_GE(bundled_lexicon().size(), 2000u);
  EXPECT_FALSE(bundled_lexicon().version().empty());
  EXPECT_TRUE(bundled_lexicon().is_negator("not"));
  for (const auto& [w, m] : bundled_lexicon().intensifiers()) EXPECT_GT(m, 0.0) << w;
}

TEST(Lexicon, ReloadScoresIdentically) {
  const auto again = load_affect_lexicon(testing::data_path("lexicon/affect-en.tsv"));
  const auto s = seq({"strong", "agreement", "not", "significant", "very", "similar"});
  EXPECT_EQ(score(s, again), score(s, bundled_lexicon()));
  EXPECT_EQ(again.version(), bundled_lexicon().version());
}

AffectLexicon parse(const std::string& text) {
  std::istringstream in(text);
  return AffectLexicon::parse(in, "t.tsv");
}

TEST(Lexicon, ParsesAllSections) {
  const auto lex = parse("# c\n[meta]\nversion\tv1\n[entries]\ngood\t0.7\t0.6\n[intensifiers]\nvery\t1.3\n[negators]\nnot\n");
  EXPECT_EQ(lex.version(), "v1");
  EXPECT_EQ(lex.size(), 1u);
  EXPECT_DOUBLE_EQ(lex.intensity("very"), 1.3);
  EXPECT_DOUBLE_EQ(lex.intensity("good"), 1.0);
}

TEST(Lexicon, RejectsOutOfRangeAndMalformedRows) {
  const std::string head = "[meta]\nversion\tv1\n[entries]\n";
  try {
    parse(head + "good\t1.5\t0.5\n");
    FAIL() << "expected DataError";
  } catch (const DataError& e) {
    EXPECT_NE(std::string(e.what()).find("line 4"), std::string::npos) << e.what();
  }
  EXPECT_THROW(parse(head + "good\t0.5\t1.2\n"), DataError);
  EXPECT_THROW(parse(head + "good\t0.5\n"), DataError);
  EXPECT_THROW(parse(head + "good\tabc\t0.5\n"), DataError);
  EXPECT_THROW(parse(head + "good\t0.5\t0.5\n[intensifiers]\nvery\t0\n"), DataError);
  EXPECT_THROW(parse(head + "good\t0.5\t0.5\n[bogus]\n"), DataError);
  EXPECT_THROW(parse("[entries]\ngood\t0.5\t0.5\n"), DataError);
  EXPECT_THROW(parse("[meta]\nversion\tv\n"), DataError);
  EXPECT_THROW(load_affect_lexicon("/nonexistent.tsv"), DataError);
}

KeynessTable ten_rows() {
  KeynessTable kt;
  const char* items[] = {"consistent previous", "strong agreement", "not significant", "good fit", "higher levels",
                         "similar results", "bad outcome", "x y", "novel method", "very good"};
  double ll = 100.0;
  for (const char* item : items) {
    KeynessRow row;
    row.item = item;
    row.ll = ll;
    ll -= 5.0;
    kt.rows.push_back(row);
  }
  return kt;
}

TEST(ScoreCollocates, EmptyTable) { EXPECT_TRUE(score_collocates(KeynessTable{}, toy()).empty()); }

TEST(ScoreCollocates, PreservesOrderAndBounds) {
  const auto kt = ten_rows();
  const auto scored = score_collocates(kt, bundled_lexicon());
  ASSERT_EQ(scored.size(), 10u);
  for (std::size_t i = 0; i < scored.size(); ++i) {
    EXPECT_EQ(scored[i].row, kt.rows[i]);
    EXPECT_TRUE(std::isfinite(scored[i].affect.polarity));
    EXPECT_GE(scored[i].affect.subjectivity, 0.0);
    EXPECT_LE(scored[i].affect.subjectivity, 1.0);
  }
  EXPECT_EQ(scored[9].affect, score(seq({"very", "good"}), bundled_lexicon()));
}

TEST(ItemTokens, SplitsOnSpaces) {
  EXPECT_EQ(item_tokens("consistent previous studies").tokens,
            (std::vector<std::string>{"consistent", "previous", "studies"}));
  EXPECT_TRUE(item_tokens("").empty());
}

}  // namespace
}  // namespace citekey
