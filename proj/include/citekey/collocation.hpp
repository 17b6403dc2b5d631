#ifndef CITEKEY_COLLOCATION_HPP_
#define CITEKEY_COLLOCATION_HPP_

// Windowed n-gram extraction and mergeable per-subcorpus count tables.
//
// A window of w admits ordered tuples whose first and last indices differ by
// at most w-1: pairs (i,j) with i<j, j-i <= w-1 and triples (i,j,k) with
// i<j<k, k-i <= w-1. N-grams never cross statement boundaries.

#include <algorithm>
#include <charconv>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <ostream>
#include <string>
#include <string_view>
#include <thread>
#include <unordered_map>
#include <utility>
#include <vector>

#include "citekey/analyzer.hpp"
#include "citekey/corpus.hpp"
#include "citekey/csv.hpp"
#include "citekey/error.hpp"
#include "citekey/text.hpp"

namespace citekey {

struct Collocate {
  std::vector<std::string> tokens;

  std::size_t order() const noexcept { return tokens.size(); }
  // Items are keyed by their tokens joined with single spaces.
  std::string key() const {
    std::string out;
    for (const auto& t : tokens) {
      if (!out.empty()) out += ' ';
      out += t;
    }
    return out;
  }
  bool operator==(const Collocate&) const = default;
};

// Calls fn(i, j) or fn(i, j, k) for every windowed index tuple, in
// lexicographic index order.
template <typename Fn>
void for_each_ngram_index(std::size_t n, int order, std::size_t window, Fn&& fn) {
  if (window < 2) return;
  const std::size_t span = window - 1;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t last = std::min(n - 1, i + span);
    for (std::size_t j = i + 1; j <= last; ++j) {
      if (order == 2) {
        fn(i, j, std::size_t{0});
      } else {
        for (std::size_t k = j + 1; k <= last; ++k) fn(i, j, k);
      }
    }
  }
}

inline std::vector<Collocate> extract_ngrams(const TokenSeq& seq, int order, std::size_t window) {
  if (order != 2 && order != 3) throw UsageError("count", "n-gram order must be 2 or 3");
  if (window < static_cast<std::size_t>(order)) {
    throw UsageError("count", "window " + std::to_string(window) + " is smaller than order " + std::to_string(order));
  }
  std::vector<Collocate> out;
  const auto& t = seq.tokens;
  for_each_ngram_index(t.size(), order, window, [&](std::size_t i, std::size_t j, std::size_t k) {
    if (order == 2) {
      out.push_back({{t[i], t[j]}});
    } else {
      out.push_back({{t[i], t[j], t[k]}});
    }
  });
  return out;
}

struct CountParams {
  int order = 1;            // 1 = terms, 2 = bigrams, 3 = trigrams
  std::size_t window = 0;   // 0 for terms
  std::size_t min_freq = 0;  // threshold applied, 0 when unfiltered

  bool operator==(const CountParams&) const = default;
};

// item -> frequency for one subcorpus. total_items is the population size
// (all counted occurrences) and is fixed before any min-frequency pruning,
// so after pruning it exceeds the sum of the remaining counts.
struct CountTable {
  std::string label;
  CountParams params;
  std::unordered_map<std::string, std::uint64_t> counts;
  std::uint64_t total_items = 0;

  std::uint64_t count(const std::string& item) const {
    const auto it = counts.find(item);
    return it == counts.end() ? 0 : it->second;
  }

  std::vector<std::pair<std::string, std::uint64_t>> sorted() const {
    std::vector<std::pair<std::string, std::uint64_t>> out(counts.begin(), counts.end());
    std::sort(out.begin(), out.end());
    return out;
  }

  bool operator==(const CountTable&) const = default;
};

inline std::string kind_name(int order) {
  switch (order) {
    case 1:
      return "terms";
    case 2:
      return "bigrams";
    case 3:
      return "trigrams";
    default:
      return "order" + std::to_string(order);
  }
}

inline void add_counts(CountTable& into, const CountTable& from) {
  for (const auto& [item, c] : from.counts) into.counts[item] += c;
  into.total_items += from.total_items;
}

// Pointwise sum. Label and params must match.
inline CountTable merge_tables(const CountTable& a, const CountTable& b) {
  if (!(a.params == b.params)) throw UsageError("count", "cannot merge count tables with different parameters");
  if (a.label != b.label) {
    throw UsageError("count", "cannot merge count tables of labels '" + a.label + "' and '" + b.label + "'");
  }
  CountTable out = a;
  add_counts(out, b);
  return out;
}

// Pools tables of different labels (e.g. a one-vs-rest reference) under
// `label`. Params must match.
inline CountTable pool_tables(const std::vector<const CountTable*>& tables, std::string label) {
  CountTable out;
  out.label = std::move(label);
  bool first = true;
  for (const CountTable* t : tables) {
    if (first) {
      out.params = t->params;
      first = false;
    } else if (!(t->params == out.params)) {
      throw UsageError("count", "cannot pool count tables with different parameters");
    }
    add_counts(out, *t);
  }
  return out;
}

// Drops items seen fewer than min_freq times; total_items is untouched.
inline void apply_min_freq(CountTable& table, std::size_t min_freq) {
  if (min_freq < 1) throw UsageError("count", "min_freq must be >= 1");
  std::erase_if(table.counts, [&](const auto& kv) { return kv.second < min_freq; });
  table.params.min_freq = min_freq;
}

// Global variant: an item survives in every table when its frequency summed
// over all tables reaches min_freq.
template <typename Map>
void apply_global_min_freq(Map& tables, std::size_t min_freq) {
  if (min_freq < 1) throw UsageError("count", "min_freq must be >= 1");
  std::unordered_map<std::string, std::uint64_t> global;
  for (const auto& [label, t] : tables) {
    for (const auto& [item, c] : t.counts) global[item] += c;
  }
  for (auto& [label, t] : tables) {
    std::erase_if(t.counts, [&](const auto& kv) { return global[kv.first] < min_freq; });
    t.params.min_freq = min_freq;
  }
}

namespace collocation_detail {

inline void count_ngrams_into(const TokenSeq& seq, int order, std::size_t window, CountTable& table,
                              std::string& key) {
  const auto& t = seq.tokens;
  for_each_ngram_index(t.size(), order, window, [&](std::size_t i, std::size_t j, std::size_t k) {
    key.assign(t[i]);
    key += ' ';
    key += t[j];
    if (order == 3) {
      key += ' ';
      key += t[k];
    }
    ++table.counts[key];
    ++table.total_items;
  });
}

}  // namespace collocation_detail

// What to count in one pass over a subcorpus.
struct CountRequest {
  std::vector<int> orders = {1, 2, 3};
  std::size_t window = 5;
};

// Raw (unpruned) tables for every requested order, one pass over
// statements [begin, end).
inline std::vector<CountTable> count_range(const Subcorpus& sub, std::size_t begin, std::size_t end,
                                           const TextPipeline& pipeline, const CountRequest& req) {
  std::vector<CountTable> tables;
  bool want_terms = false;
  for (int order : req.orders) {
    if (order < 1 || order > 3) throw UsageError("count", "orders must be within {1,2,3}");
    if (order > 1 && req.window < static_cast<std::size_t>(order)) {
      throw UsageError("count", "window " + std::to_string(req.window) + " is smaller than order " +
                                    std::to_string(order));
    }
    CountTable t;
    t.label = sub.label;
    t.params = CountParams{order, order == 1 ? 0 : req.window, 0};
    tables.push_back(std::move(t));
    want_terms = want_terms || order == 1;
  }
  std::string key;
  for (std::size_t s = begin; s < end; ++s) {
    const auto processed = pipeline.process(sub.statements[s], want_terms);
    for (auto& t : tables) {
      if (t.params.order == 1) {
        for (const auto& term : processed.terms.tokens) ++t.counts[term];
        t.total_items += processed.terms.tokens.size();
      } else {
        collocation_detail::count_ngrams_into(processed.counted, t.params.order, req.window, t, key);
      }
    }
  }
  return tables;
}

// Counts in `partitions` contiguous chunks (run on up to `threads` workers)
// and merges the partial tables. The result does not depend on either number.
inline std::vector<CountTable> count_partitioned(const Subcorpus& sub, const TextPipeline& pipeline,
                                                 const CountRequest& req, std::size_t partitions = 1,
                                                 std::size_t threads = 1) {
  partitions = std::max<std::size_t>(1, std::min(partitions, std::max<std::size_t>(1, sub.size())));
  threads = std::max<std::size_t>(1, std::min(threads, partitions));
  std::vector<std::vector<CountTable>> parts(partitions);
  const auto bounds = [&](std::size_t p) {
    return std::pair{sub.size() * p / partitions, sub.size() * (p + 1) / partitions};
  };
  if (threads == 1) {
    for (std::size_t p = 0; p < partitions; ++p) {
      const auto [b, e] = bounds(p);
      parts[p] = count_range(sub, b, e, pipeline, req);
    }
  } else {
    std::vector<std::exception_ptr> errors(threads);
    std::vector<std::thread> workers;
    for (std::size_t w = 0; w < threads; ++w) {
      workers.emplace_back([&, w] {
        try {
          for (std::size_t p = w; p < partitions; p += threads) {
            const auto [b, e] = bounds(p);
            parts[p] = count_range(sub, b, e, pipeline, req);
          }
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    for (auto& t : workers) t.join();
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }
  std::vector<CountTable> out = std::move(parts[0]);
  for (std::size_t p = 1; p < partitions; ++p) {
    // Same label and params by construction, so accumulate in place.
    for (std::size_t i = 0; i < out.size(); ++i) add_counts(out[i], parts[p][i]);
  }
  return out;
}

// Unigram key-term counts: content-word, stopword-filtered tokens.
inline CountTable count_terms(const Subcorpus& sub, const TextPipeline& pipeline) {
  return count_range(sub, 0, sub.size(), pipeline, CountRequest{{1}, 0}).front();
}

// Windowed collocate counts, pruned below min_freq.
inline CountTable count_collocates(const Subcorpus& sub, const TextPipeline& pipeline, int order,
                                   std::size_t window, std::size_t min_freq) {
  if (order != 2 && order != 3) throw UsageError("count", "n-gram order must be 2 or 3");
  auto table = count_range(sub, 0, sub.size(), pipeline, CountRequest{{order}, window}).front();
  apply_min_freq(table, min_freq);
  return table;
}

// "item,count" rows sorted by item, with a header line.
inline void write_count_csv(const CountTable& table, std::ostream& out) {
  out << "item,count\n";
  for (const auto& [item, c] : table.sorted()) {
    out << csv_escape(item) << ',' << c << '\n';
  }
}

inline std::unordered_map<std::string, std::uint64_t> read_count_csv(std::string_view data,
                                                                     const std::string& source = "<counts>") {
  std::unordered_map<std::string, std::uint64_t> counts;
  const auto records = parse_csv(data);
  if (records.empty() || records.front().fields != std::vector<std::string>{"item", "count"}) {
    throw DataError("load", source + ": expected header 'item,count'");
  }
  for (std::size_t r = 1; r < records.size(); ++r) {
    const auto& f = records[r].fields;
    std::uint64_t c = 0;
    if (f.size() != 2 || f[1].empty() ||
        std::from_chars(f[1].data(), f[1].data() + f[1].size(), c).ptr != f[1].data() + f[1].size()) {
      throw DataError("load", source + " line " + std::to_string(records[r].line) + ": bad count row");
    }
    counts[f[0]] = c;
  }
  return counts;
}

}  // namespace citekey

#endif  // CITEKEY_COLLOCATION_HPP_
