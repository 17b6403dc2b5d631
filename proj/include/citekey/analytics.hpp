#ifndef CITEKEY_ANALYTICS_HPP_
#define CITEKEY_ANALYTICS_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "citekey/affect.hpp"
#include "citekey/error.hpp"
#include "citekey/keyness.hpp"
#include "citekey/tagger.hpp"

namespace citekey {

// Mean-centred Pearson r. nullopt when either series has zero variance.
inline std::optional<double> pearson(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) throw UsageError("analytics", "pearson: series lengths differ");
  if (xs.size() < 2) throw UsageError("analytics", "pearson: need at least 2 points");
  const double n = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double dx = xs[i] - mx, dy = ys[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) return std::nullopt;
  const double r = sxy / std::sqrt(sxx * syy);
  return std::clamp(r, -1.0, 1.0);
}

enum class AffectDimension { kPolarity, kSubjectivity };

inline std::string dimension_name(AffectDimension d) {
  return d == AffectDimension::kPolarity ? "sentiment" : "subjectivity";
}

struct Correlation {
  std::optional<double> r;  // nullopt: undefined (degenerate variance or n < 2)
  std::size_t n = 0;

  bool defined() const noexcept { return r.has_value(); }
  bool operator==(const Correlation&) const = default;
};

// r between each row's affect value (x) and its ll (y).
inline Correlation affect_correlation(const std::vector<ScoredRow>& scored, AffectDimension dim) {
  Correlation out;
  out.n = scored.size();
  if (scored.size() < 2) return out;
  std::vector<double> xs, ys;
  xs.reserve(scored.size());
  ys.reserve(scored.size());
  for (const auto& s : scored) {
    xs.push_back(dim == AffectDimension::kPolarity ? s.affect.polarity : s.affect.subjectivity);
    ys.push_back(s.row.ll);
  }
  out.r = pearson(xs, ys);
  return out;
}

enum class PosDistMode {
  kTokens,    // share of all tokens of retained items
  kPresence,  // share of retained items containing the tag at least once
};

struct PosDistCell {
  std::map<std::string, double> percent;  // tag -> [0,100]
  std::size_t items = 0;
  std::size_t tokens = 0;

  bool empty() const noexcept { return percent.empty(); }
  bool operator==(const PosDistCell&) const = default;
};

// Tags each retained item as a standalone token sequence.
// kTokens: 100 * (tokens tagged T) / (all tokens); sums to 100.
// kPresence: 100 * (items with a T token) / (items); may exceed 100 in sum.
inline PosDistCell pos_distribution(const KeynessTable& table, const TaggerModel& tagger,
                                    PosDistMode mode = PosDistMode::kTokens) {
  PosDistCell cell;
  std::map<std::string, std::size_t> hits;
  for (const auto& row : table.rows) {
    const TokenSeq seq = item_tokens(row.item);
    const auto tags = tagger.tag_tokens(seq.tokens);
    ++cell.items;
    cell.tokens += tags.size();
    if (mode == PosDistMode::kTokens) {
      for (const auto& t : tags) ++hits[t];
    } else {
      std::set<std::string> seen(tags.begin(), tags.end());
      for (const auto& t : seen) ++hits[t];
    }
  }
  const std::size_t denom = mode == PosDistMode::kTokens ? cell.tokens : cell.items;
  if (denom == 0) return cell;
  for (const auto& [tag, c] : hits) {
    cell.percent[tag] = 100.0 * static_cast<double>(c) / static_cast<double>(denom);
  }
  return cell;
}

}  // namespace citekey

#endif  // CITEKEY_ANALYTICS_HPP_
