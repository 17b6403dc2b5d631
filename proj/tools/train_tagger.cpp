// Offline trainer for the bundled POS model. Not part of the analysis path.
//
//   citekey-train-tagger --train silver.tsv --train extra.tsv
//       --gold data/gold/ptb-gold.tsv --out data/models/ptb-perceptron.model

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "citekey/rng.hpp"
#include "citekey/tagger.hpp"

namespace {

void clean(std::vector<citekey::TaggedSentence>& corpus) {
  for (auto& s : corpus) {
    for (auto& t : s.tags) {
      if (t == "\"") t = "''";
    }
  }
  std::erase_if(corpus, [](const citekey::TaggedSentence& s) {
    for (const auto& tok : s.tokens) {
      if (tok.find_first_of(" \t") != std::string::npos) return true;
    }
    return false;
  });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Train the averaged-perceptron POS model"};
  std::vector<std::string> train_paths;
  std::vector<int> weights;
  std::string gold_path, out_path, version = "ptb-perceptron";
  citekey::PerceptronTrainer::Options opts;
  double lowercase_rate = 0.3;
  app.add_option("--train", train_paths, "token<TAB>tag training file (repeatable)")->required();
  app.add_option("--repeat", weights, "times each --train file is included (default 1)");
  app.add_option("--gold", gold_path, "held-out gold set to report accuracy on");
  app.add_option("--out", out_path, "model output path")->required();
  app.add_option("--version", version, "version string embedded in the model");
  app.add_option("--iterations", opts.iterations);
  app.add_option("--seed", opts.seed);
  app.add_option("--lowercase-rate", lowercase_rate, "fraction of sentences also added lowercased");
  CLI11_PARSE(app, argc, argv);

  try {
    std::vector<citekey::TaggedSentence> corpus;
    for (std::size_t i = 0; i < train_paths.size(); ++i) {
      auto part = citekey::read_tagged_corpus(train_paths[i]);
      clean(part);
      const int reps = i < weights.size() ? weights[i] : 1;
      for (int r = 0; r < reps; ++r) corpus.insert(corpus.end(), part.begin(), part.end());
    }
    citekey::Mt64 rng(opts.seed);
    const std::size_t base = corpus.size();
    for (std::size_t i = 0; i < base; ++i) {
      if (citekey::uniform_unit(rng) >= lowercase_rate) continue;
      auto copy = corpus[i];
      for (auto& t : copy.tokens) t = citekey::text_detail::ascii_lower(t);
      corpus.push_back(std::move(copy));
    }
    std::cerr << "training on " << corpus.size() << " sentences\n";
    citekey::PerceptronTrainer trainer(citekey::ptb_tagset(), opts);
    const auto model = trainer.train(corpus, version);
    std::ofstream out(out_path, std::ios::binary);
    model.save(out);
    std::cerr << "features: " << model.feature_count() << '\n';
    if (!gold_path.empty()) {
      const auto gold = citekey::read_tagged_corpus(gold_path);
      const auto acc = citekey::evaluate_tagger(model, gold);
      std::cerr << "gold accuracy: " << acc.correct << "/" << acc.total << " = " << acc.rate() << '\n';
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
