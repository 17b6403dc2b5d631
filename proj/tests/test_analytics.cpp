#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "citekey/analytics.hpp"
#include "support.hpp"

namespace citekey {
namespace {

using V = std::vector<double>;

// Textbook two-pass formula, written out separately from the library.
double pearson_oracle(const V& x, const V& y) {
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double num = 0, dx2 = 0, dy2 = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    num += (x[i] - mx) * (y[i] - my);
    dx2 += (x[i] - mx) * (x[i] - mx);
    dy2 += (y[i] - my) * (y[i] - my);
  }
  return num / std::sqrt(dx2 * dy2);
}

TEST(Pearson, ReferenceValues) {
  EXPECT_NEAR(*pearson(V{1, 2, 3}, V{2, 4, 6}), 1.0, 1e-12);
  EXPECT_NEAR(*pearson(V{1, 2, 3}, V{6, 4, 2}), -1.0, 1e-12);
  EXPECT_NEAR(*pearson(V{1, 2, 3}, V{1, 1, 2}), 0.8660, 1e-4);
  EXPECT_NEAR(*pearson(V{1, 2, 3}, V{1, 1, 2}), std::sqrt(3.0) / 2.0, 1e-12);
}

TEST(Pearson, SymmetricAffineInvariantAndMatchesOracle) {
  std::mt19937_64 rng(19);
  std::normal_distribution<double> g(0.0, 1.0);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 2 + rng() % 50;
    V x(n), y(n);
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = g(rng);
      y[i] = 0.5 * x[i] + g(rng);
    }
    const double r = *pearson(x, y);
    EXPECT_NEAR(r, pearson_oracle(x, y), 1e-9);
    EXPECT_NEAR(r, *pearson(y, x), 1e-9);
    const double a = 0.1 + std::abs(g(rng)) * 10, b = g(rng) * 100;
    V ax(n);
    for (std::size_t i = 0; i < n; ++i) ax[i] = a * x[i] + b;
    EXPECT_NEAR(*pearson(ax, y), r, 1e-9);
    EXPECT_LE(std::abs(r), 1.0);
  }
}

TEST(Pearson, DegenerateInputs) {
  EXPECT_FALSE(pearson(V{1, 1, 1}, V{1, 2, 3}).has_value());
  EXPECT_FALSE(pearson(V{1, 2, 3}, V{0, 0, 0}).has_value());
  EXPECT_THROW(pearson(V{1, 2}, V{1, 2, 3}), UsageError);
  EXPECT_THROW(pearson(V{1}, V{1}), UsageError);
}

ScoredRow scored(double ll, double pol, double subj) {
  ScoredRow s;
  s.row.ll = ll;
  s.affect = {pol, subj};
  return s;
}

TEST(AffectCorrelation, AllNeutralIsUndefined) {
  std::vector<ScoredRow> rows{scored(40, 0, 0), scored(30, 0, 0), scored(20, 0, 0)};
  const auto c = affect_correlation(rows, AffectDimension::kPolarity);
  EXPECT_FALSE(c.defined());
  EXPECT_EQ(c.n, 3u);
}

TEST(AffectCorrelation, AffectProportionalToLlGivesOne) {
  std::vector<ScoredRow> rows;
  const V lls{80, 55.5, 40, 21, 16};
  for (double ll : lls) rows.push_back(scored(ll, ll / 80, ll / 80));
  for (auto dim : {AffectDimension::kPolarity, AffectDimension::kSubjectivity}) {
    const auto c = affect_correlation(rows, dim);
    ASSERT_TRUE(c.defined());
    EXPECT_NEAR(*c.r, 1.0, 1e-12);
    EXPECT_EQ(c.n, 5u);
  }
}

TEST(AffectCorrelation, TooFewRowsIsUndefined) {
  EXPECT_FALSE(affect_correlation({}, AffectDimension::kSubjectivity).defined());
  EXPECT_FALSE(affect_correlation({scored(20, 0.5, 0.5)}, AffectDimension::kPolarity).defined());
  EXPECT_EQ(dimension_name(AffectDimension::kPolarity), "sentiment");
}

KeynessTable rows_of(std::initializer_list<const char*> items) {
  KeynessTable kt;
  for (const char* item : items) {
    KeynessRow r;
    r.item = item;
    kt.rows.push_back(r);
  }
  return kt;
}

TEST(PosDistribution, SingleCollocate) {
  const auto cell = pos_distribution(rows_of({"consistent previous"}), testing::bundled_tagger());
  EXPECT_EQ(cell.percent, (std::map<std::string, double>{{"JJ", 100.0}}));
  EXPECT_EQ(cell.items, 1u);
  EXPECT_EQ(cell.tokens, 2u);
}

TEST(PosDistribution, TwoBigramsHandTally) {
  const auto cell = pos_distribution(rows_of({"consistent previous", "previously described"}),
                                     testing::bundled_tagger());
  EXPECT_EQ(cell.percent, (std::map<std::string, double>{{"JJ", 50.0}, {"RB", 25.0}, {"VBN", 25.0}}));
  const auto presence = pos_distribution(rows_of({"consistent previous", "previously described"}),
                                         testing::bundled_tagger(), PosDistMode::kPresence);
  EXPECT_EQ(presence.percent, (std::map<std::string, double>{{"JJ", 50.0}, {"RB", 50.0}, {"VBN", 50.0}}));
}

TEST(PosDistribution, EmptyTable) { EXPECT_TRUE(pos_distribution(KeynessTable{}, testing::bundled_tagger()).empty()); }

TEST(PosDistribution, SumsToHundred) {
  std::mt19937_64 rng(29);
  const std::vector<std::string> words = {"higher", "previous", "studies", "contrast", "consistent", "observed",
                                          "similar", "significantly", "reported", "lower", "not", "described"};
  for (int trial = 0; trial < 100; ++trial) {
    KeynessTable kt;
    for (std::size_t i = 1 + rng() % 20; i > 0; --i) {
      KeynessRow r;
      r.item = words[rng() % words.size()] + " " + words[rng() % words.size()];
      if (rng() % 2) r.item += " " + words[rng() % words.size()];
      kt.rows.push_back(r);
    }
    const auto cell = pos_distribution(kt, testing::bundled_tagger());
    double sum = 0;
    for (const auto& [tag, p] : cell.percent) sum += p;
    EXPECT_NEAR(sum, 100.0, 0.5);
    EXPECT_EQ(pos_distribution(kt, testing::bundled_tagger()), cell);
  }
}

}  // namespace
}  // namespace citekey
