#ifndef CITEKEY_SYNTHETIC_HPP_
#define CITEKEY_SYNTHETIC_HPP_

// Deterministic synthetic citation corpora for tests, benchmarks and the
// bundled fixtures. All draws come from mt19937_64 through rng.hpp, so a
// (generator, size, seed) triple always yields the same corpus.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "citekey/corpus.hpp"
#include "citekey/rng.hpp"

namespace citekey::synthetic {

namespace detail {

inline constexpr std::string_view kNouns[] = {
    "patients", "cells", "expression", "levels", "analysis", "model", "data", "protein", "treatment",
    "samples", "group", "response", "activity", "function", "concentration", "gene", "tissue", "mice",
    "cohort", "method", "rate", "risk", "effect", "mechanism", "pathway", "signal", "structure", "region",
    "population", "participants", "species", "growth", "temperature", "dose", "exposure", "outcome",
    "factor", "measurement", "sequence", "network", "surface", "density", "variation", "frequency",
    "phase", "size", "age", "infection", "mutation", "receptor", "enzyme", "binding", "membrane",
    "plasma", "serum", "blood", "brain", "liver", "tumor", "cancer", "disease", "therapy", "diet",
    "weight", "mass", "volume", "pressure", "flow", "energy", "water", "soil", "plants", "leaves",
    "bacteria", "strain", "virus", "antibody", "marker", "score", "scale", "index", "survey", "interview",
    "students", "children", "women", "men", "animals", "rats", "neurons", "muscle", "bone", "skin",
    "material", "particles", "film", "layer", "crystal", "solution", "reaction", "catalyst",
    "algorithm", "system", "design", "framework", "performance", "accuracy", "error", "distribution",
    "parameter", "variable", "correlation", "estimate", "interval", "period", "duration", "onset",
    "symptoms", "diagnosis", "mortality", "incidence", "prevalence", "quality", "behavior", "memory",
    "attention", "stress", "anxiety", "depression", "sleep", "exercise", "intake", "metabolism",
};

// Adjectives and adverbs mix neutral and affect-bearing words.
inline constexpr std::string_view kAdjectives[] = {
    "high", "low", "significant", "different", "important", "novel", "positive", "negative", "strong",
    "weak", "large", "small", "early", "late", "clinical", "human", "specific", "total", "major",
    "common", "normal", "severe", "good", "poor", "recent", "new", "potential", "mean", "average",
    "maximum", "minimal", "initial", "final", "primary", "secondary", "chronic", "acute", "healthy",
    "elevated", "reduced", "mild", "moderate", "relevant", "useful", "effective", "stable", "rapid",
    "slow", "direct", "indirect", "local", "global", "natural", "genetic", "cellular", "molecular",
    "social", "cognitive", "physical", "environmental", "experimental", "clear", "complex", "simple",
    "free", "active", "critical", "unique", "rare", "frequent", "overall", "additional", "various",
};

inline constexpr std::string_view kVerbs[] = {
    "observed", "measured", "reported", "found", "showed", "increased", "decreased", "induced",
    "associated", "identified", "detected", "examined", "analyzed", "evaluated", "assessed", "estimated",
    "calculated", "collected", "recorded", "expressed", "activated", "inhibited", "reduced", "improved",
    "affected", "regulated", "enhanced", "suppressed", "maintained", "changed", "tested", "treated",
};

inline constexpr std::string_view kAdverbs[] = {
    "significantly", "strongly", "highly", "markedly", "slightly", "rapidly", "clearly", "largely",
    "mainly", "partially", "generally", "directly", "frequently", "consistently", "substantially",
};

// Class cue templates. Slots: {N} noun, {A} adjective, {V} verb, {R} adverb,
// {C} citation marker.
inline constexpr std::string_view kSupporting[] = {
    "these results are consistent with previous studies {C}",
    "this is consistent with previous reports on {A} {N} {C}",
    "similar results were obtained in {N} {C}",
    "similar findings were reported for {A} {N} {C}",
    "this is in agreement with previous studies {C}",
    "our data confirmed that {N} {V} {N} {C}",
    "the role of {N} was confirmed in {A} {N} {C}",
    "this agrees with earlier work on {N} {C}",
    "these observations supported the {A} {N} hypothesis {C}",
    "as shown previously {N} {V} {A} {N} {C}",
    "in line with {C} demonstrating that {N} {V} {N}",
    "our findings corroborate earlier studies of {N} {C}",
    "similar to that reported in {A} {N} {C}",
};

inline constexpr std::string_view kDisputing[] = {
    "in contrast to previous reports {N} {V} {A} {N} {C}",
    "in contrast to previous studies {C}",
    "however the present study found no {A} {N}",
    "however the present results did not support {N} {C}",
    "these results differ from those reported for {N} {C}",
    "{N} was higher than reported in {A} {N} {C}",
    "{N} was lower than reported previously {C}",
    "our data contradict the {A} {N} model {C}",
    "previous attempts failed to detect {N} {C}",
    "results were inconsistent with {A} {N} {C}",
    "unlike previous studies we observed no {N} {C}",
    "although previous studies reported {A} {N} {C}",
    "{N} differed from earlier estimates {C}",
};

inline constexpr std::string_view kMentioning[] = {
    "{N} was performed as described previously {C}",
    "{N} were measured as described previously briefly {C}",
    "the widely used {A} {N} scale {C}",
    "we used the {A} {N} method {C}",
    "{A} {N} were reviewed in {C}",
    "a randomized {N} trial was implemented {C}",
    "{N} models were developed {C}",
    "recommended {N} guidelines include {A} {N} {C}",
    "previous work focused on {A} {N} {C}",
    "{N} was assessed using {A} {N} {C}",
    "samples were collected as described {C}",
    "methods include {A} {N} and {N} {C}",
};

inline constexpr std::string_view kFillerPatterns[] = {
    "the {A} {N} of {N} was {V}",
    "{N} {V} {R} in {A} {N}",
    "{A} {N} and {N} were {V}",
    "the {N} {V} {N} levels",
    "{N} was {R} {V} after {N}",
    "in {A} {N} the {N} was {A}",
    "{N} {V} with {A} {N}",
    "we {V} {N} in {N}",
};

// Zipf-like pick: word i has weight floor(100000 / (i + 2)); the affect
// words are spread through the ranks so frequency and affect are unrelated.
template <std::size_t N>
std::string_view zipf_pick(const std::string_view (&words)[N], Mt64& rng) {
  static const std::vector<std::uint64_t> cumulative = [] {
    std::vector<std::uint64_t> c(N);
    std::uint64_t total = 0;
    for (std::size_t i = 0; i < N; ++i) {
      total += 100000 / (i + 2);
      c[i] = total;
    }
    return c;
  }();
  const auto x = uniform_below(rng, cumulative.back());
  const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), x);
  return words[static_cast<std::size_t>(it - cumulative.begin())];
}

template <std::size_t N>
std::string_view uniform_pick(const std::string_view (&words)[N], Mt64& rng) {
  return words[uniform_below(rng, N)];
}

inline std::string marker(Mt64& rng) {
  static constexpr std::string_view kNames[] = {"Smith", "Wang", "Garcia", "Kim", "Muller", "Rossi", "Silva", "Chen"};
  if (uniform_below(rng, 2) == 0) return "[" + std::to_string(1 + uniform_below(rng, 60)) + "]";
  return "(" + std::string(uniform_pick(kNames, rng)) + " et al., " + std::to_string(1990 + uniform_below(rng, 32)) +
         ")";
}

inline std::string expand(std::string_view pattern, Mt64& rng) {
  std::string out;
  for (std::size_t i = 0; i < pattern.size(); ++i) {
    if (pattern[i] == '{' && i + 2 < pattern.size() && pattern[i + 2] == '}') {
      switch (pattern[i + 1]) {
        case 'N':
          out += zipf_pick(kNouns, rng);
          break;
        case 'A':
          out += zipf_pick(kAdjectives, rng);
          break;
        case 'V':
          out += uniform_pick(kVerbs, rng);
          break;
        case 'R':
          out += uniform_pick(kAdverbs, rng);
          break;
        case 'C':
          out += marker(rng);
          break;
        default:
          out += pattern.substr(i, 3);
      }
      i += 2;
    } else {
      out += pattern[i];
    }
  }
  return out;
}

inline std::string capitalize(std::string s) {
  if (!s.empty() && s[0] >= 'a' && s[0] <= 'z') s[0] = static_cast<char>(s[0] - 'a' + 'A');
  return s;
}

inline std::string make_id(std::string_view prefix, std::size_t i) {
  std::string n = std::to_string(i);
  return std::string(prefix) + std::string(n.size() < 6 ? 6 - n.size() : 0, '0') + n;
}

}  // namespace detail

inline const std::vector<std::string>& class_labels() {
  static const std::vector<std::string> kLabels = {"disputing", "mentioning", "supporting"};
  return kLabels;
}

// Template corpus of `n` statements with labels assigned round-robin. Each
// statement is a neutral filler clause plus one cue template of its class
// (with probability `leak` a template of another class instead), in random
// order, optionally followed by a second filler clause.
inline LabeledCorpus realistic_corpus(std::size_t n, std::uint64_t seed, double leak = 0.03) {
  using namespace detail;
  Mt64 rng(seed);
  LabeledCorpus corpus;
  const auto& labels = class_labels();
  const auto leak_per_million = static_cast<std::uint64_t>(leak * 1e6);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t cls = i % labels.size();
    std::size_t tmpl_cls = cls;
    if (uniform_below(rng, 1000000) < leak_per_million) tmpl_cls = (cls + 1 + uniform_below(rng, 2)) % 3;
    std::string_view cue;
    switch (tmpl_cls) {
      case 0:
        cue = uniform_pick(kDisputing, rng);
        break;
      case 1:
        cue = uniform_pick(kMentioning, rng);
        break;
      default:
        cue = uniform_pick(kSupporting, rng);
    }
    const std::string filler = expand(uniform_pick(kFillerPatterns, rng), rng);
    const std::string cue_text = expand(cue, rng);
    std::string text = uniform_below(rng, 2) == 0 ? capitalize(filler) + " and " + cue_text
                                                  : capitalize(cue_text) + " while " + filler;
    if (uniform_below(rng, 3) == 0) text += "; " + expand(uniform_pick(kFillerPatterns, rng), rng);
    text += '.';
    corpus.label_set.insert(labels[cls]);
    corpus.statements.push_back({make_id("r", i), std::move(text), labels[cls]});
  }
  return corpus;
}

// Planted-cue corpus: `per_class` statements per class made of neutral
// filler. Every statement of class k carries cue word k; each other class
// carries it in per_class/skew statements.
struct PlantedCues {
  LabeledCorpus corpus;
  std::vector<std::pair<std::string, std::string>> cues;  // (label, cue word)
};

inline PlantedCues planted_cue_corpus(std::size_t per_class = 200, std::size_t skew = 50, std::uint64_t seed = 7) {
  using namespace detail;
  static constexpr std::string_view kCues[] = {"contradicted", "utilized", "corroborated"};
  Mt64 rng(seed);
  PlantedCues out;
  const auto& labels = class_labels();
  for (std::size_t k = 0; k < labels.size(); ++k) out.cues.emplace_back(labels[k], std::string(kCues[k]));
  const std::size_t leaked = per_class / skew;
  std::size_t id = 0;
  for (std::size_t k = 0; k < labels.size(); ++k) {
    for (std::size_t i = 0; i < per_class; ++i) {
      std::string text = capitalize(expand(uniform_pick(kFillerPatterns, rng), rng));
      text += " and " + expand(uniform_pick(kFillerPatterns, rng), rng);
      text += " as " + std::string(kCues[k]) + " by " + marker(rng);
      // Statements i < leaked also mention the other classes' cues.
      if (i < leaked) {
        for (std::size_t o = 0; o < labels.size(); ++o) {
          if (o != k) text += " and " + std::string(kCues[o]) + " " + std::string(zipf_pick(kNouns, rng));
        }
      }
      text += '.';
      out.corpus.label_set.insert(labels[k]);
      out.corpus.statements.push_back({make_id("p", id++), std::move(text), labels[k]});
    }
  }
  return out;
}

}  // namespace citekey::synthetic

#endif  // CITEKEY_SYNTHETIC_HPP_
