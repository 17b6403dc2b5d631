#ifndef CITEKEY_KEYNESS_HPP_
#define CITEKEY_KEYNESS_HPP_

// Log-likelihood keyness of items in a target count table against a
// reference table, using the two-cell G2 form:
//
//   E1 = c(a+b)/(c+d)   E2 = d(a+b)/(c+d)
//   LL = 2 (a ln(a/E1) + b ln(b/E2)),   0 ln(0/E) = 0
//
// a, b are the item's target and reference counts; c, d the tables'
// total_items.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <unordered_set>
#include <vector>

#include "citekey/collocation.hpp"
#include "citekey/error.hpp"

namespace citekey {

inline constexpr double kDefaultLlThreshold = 15.13;

namespace keyness_detail {

inline void check_counts(std::uint64_t a, std::uint64_t b, std::uint64_t c, std::uint64_t d) {
  if (c == 0 || d == 0) throw UsageError("keyness", "corpus sizes must be positive");
  if (a > c || b > d) throw UsageError("keyness", "item count exceeds corpus size");
  if (a + b == 0) throw UsageError("keyness", "item does not occur in either corpus");
}

inline double term(double x, double e) { return x == 0.0 ? 0.0 : x * std::log(x / e); }

}  // namespace keyness_detail

inline double log_likelihood(std::uint64_t a, std::uint64_t b, std::uint64_t c, std::uint64_t d) {
  keyness_detail::check_counts(a, b, c, d);
  // Equal relative frequencies score exactly zero.
  if (static_cast<unsigned __int128>(a) * d == static_cast<unsigned __int128>(b) * c) return 0.0;
  const double A = static_cast<double>(a), B = static_cast<double>(b);
  const double C = static_cast<double>(c), D = static_cast<double>(d);
  const double e1 = C * (A + B) / (C + D);
  const double e2 = D * (A + B) / (C + D);
  const double ll = 2.0 * (keyness_detail::term(A, e1) + keyness_detail::term(B, e2));
  // Rounding can leave a tiny negative value at independence.
  return ll > 0.0 ? ll : 0.0;
}

// log2 of the relative-frequency ratio with 0.5 added to a and b.
inline double log_ratio(std::uint64_t a, std::uint64_t b, std::uint64_t c, std::uint64_t d) {
  keyness_detail::check_counts(a, b, c, d);
  const double ra = (static_cast<double>(a) + 0.5) / static_cast<double>(c);
  const double rb = (static_cast<double>(b) + 0.5) / static_cast<double>(d);
  return std::log2(ra / rb);
}

// a/c > b/d, decided exactly.
inline bool is_overused(std::uint64_t a, std::uint64_t b, std::uint64_t c, std::uint64_t d) {
  return static_cast<unsigned __int128>(a) * d > static_cast<unsigned __int128>(b) * c;
}

struct KeynessRow {
  std::string item;
  std::uint64_t freq_target = 0;
  std::uint64_t freq_reference = 0;
  std::uint64_t target_size = 0;
  std::uint64_t reference_size = 0;
  double ll = 0.0;
  double log_ratio = 0.0;
  bool overused = false;

  bool operator==(const KeynessRow&) const = default;
};

// ll desc, then freq_target desc, then item.
inline bool keyness_order(const KeynessRow& x, const KeynessRow& y) {
  if (x.ll != y.ll) return x.ll > y.ll;
  if (x.freq_target != y.freq_target) return x.freq_target > y.freq_target;
  return x.item < y.item;
}

struct KeynessTable {
  std::string label;
  std::string reference_label;
  int order = 1;
  std::uint64_t target_size = 0;
  std::uint64_t reference_size = 0;
  double threshold = kDefaultLlThreshold;
  bool include_underused = false;
  std::vector<KeynessRow> rows;

  bool operator==(const KeynessTable&) const = default;
};

struct KeynessOptions {
  double threshold = kDefaultLlThreshold;
  // Also keep items significantly more frequent in the reference.
  bool include_underused = false;
};

// Scores every item present in either table (absent = 0) and keeps those at
// or above the threshold; by default only overused ones.
inline KeynessTable keyness_table(const CountTable& target, const CountTable& reference,
                                  const KeynessOptions& opts = {}) {
  if (target.params.order != reference.params.order || target.params.window != reference.params.window ||
      target.params.min_freq != reference.params.min_freq) {
    throw UsageError("keyness", "target and reference tables were counted with different parameters");
  }
  if (opts.threshold < 0.0 || std::isnan(opts.threshold)) throw UsageError("keyness", "threshold must be >= 0");
  KeynessTable out;
  out.label = target.label;
  out.reference_label = reference.label;
  out.order = target.params.order;
  out.threshold = opts.threshold;
  out.include_underused = opts.include_underused;
  const std::uint64_t c = target.total_items, d = reference.total_items;
  out.target_size = c;
  out.reference_size = d;
  if (c == 0 || d == 0) return out;

  const auto consider = [&](const std::string& item, std::uint64_t a, std::uint64_t b) {
    const double ll = log_likelihood(a, b, c, d);
    if (ll < opts.threshold) return;
    const bool over = is_overused(a, b, c, d);
    if (!over && !opts.include_underused) return;
    out.rows.push_back({item, a, b, c, d, ll, log_ratio(a, b, c, d), over});
  };
  for (const auto& [item, a] : target.counts) consider(item, a, reference.count(item));
  for (const auto& [item, b] : reference.counts) {
    if (!target.counts.contains(item)) consider(item, 0, b);
  }
  std::sort(out.rows.begin(), out.rows.end(), keyness_order);
  return out;
}

inline std::string rest_label(const std::string& label) { return "rest-of-" + label; }

// Each label against the pooled tables of all other labels.
inline std::map<std::string, KeynessTable> one_vs_rest(const std::map<std::string, CountTable>& tables,
                                                       const KeynessOptions& opts = {}) {
  if (tables.size() < 2) throw UsageError("keyness", "one-vs-rest comparison needs at least 2 labels");
  std::map<std::string, KeynessTable> out;
  for (const auto& [label, target] : tables) {
    std::vector<const CountTable*> others;
    for (const auto& [other, t] : tables) {
      if (other != label) others.push_back(&t);
    }
    out.emplace(label, keyness_table(target, pool_tables(others, rest_label(label)), opts));
  }
  return out;
}

// Every ordered pair (target, reference) of distinct labels, keyed
// "target-vs-reference".
inline std::map<std::string, KeynessTable> pairwise(const std::map<std::string, CountTable>& tables,
                                                    const KeynessOptions& opts = {}) {
  if (tables.size() < 2) throw UsageError("keyness", "pairwise comparison needs at least 2 labels");
  std::map<std::string, KeynessTable> out;
  for (const auto& [label, target] : tables) {
    for (const auto& [other, reference] : tables) {
      if (other == label) continue;
      out.emplace(label + "-vs-" + other, keyness_table(target, reference, opts));
    }
  }
  return out;
}

}  // namespace citekey

#endif  // CITEKEY_KEYNESS_HPP_
