#include <gtest/gtest.h>

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "citekey/tagger.hpp"
#include "citekey/text.hpp"
#include "support.hpp"

namespace citekey {
namespace {

using Strings = std::vector<std::string>;
using testing::bundled_tagger;

TEST(TaggerModel, BundledModelLoads) {
  const auto& m = bundled_tagger();
  EXPECT_FALSE(m.version().empty());
  EXPECT_GT(m.feature_count(), 1000u);
  for (const char* t : {"JJR", "NNS", "VBP", "DT", "RB"}) EXPECT_TRUE(m.has_tag(t)) << t;
}

TEST(TaggerModel, TruncatedFileFails) {
  std::ifstream in(testing::data_path("models/ptb-perceptron.model"));
  std::string head;
  for (int i = 0; i < 40; ++i) {
    std::string line;
    std::getline(in, line);
    head += line + "\n";
  }
  std::istringstream cut(head);
  EXPECT_THROW(TaggerModel::parse(cut), DataError);
  std::istringstream garbage("not a model\n");
  EXPECT_THROW(TaggerModel::parse(garbage), DataError);
  EXPECT_THROW(load_tagger_model("/nonexistent.model"), DataError);
}

TEST(TaggerModel, ReloadTagsIdentically) {
  const auto again = load_tagger_model(testing::data_path("models/ptb-perceptron.model"));
  const auto toks = tokenize("These findings are consistent with earlier reports of higher expression [12].");
  EXPECT_EQ(again.tag_tokens(toks), bundled_tagger().tag_tokens(toks));
  EXPECT_EQ(again.version(), bundled_tagger().version());
}

TEST(TaggerModel, SaveParseRoundTrip) {
  std::stringstream ss;
  bundled_tagger().save(ss);
  const auto copy = TaggerModel::parse(ss);
  EXPECT_EQ(copy.version(), bundled_tagger().version());
  EXPECT_EQ(copy.feature_count(), bundled_tagger().feature_count());
  std::stringstream again;
  copy.save(again);
  std::stringstream first;
  bundled_tagger().save(first);
  EXPECT_EQ(again.str(), first.str());
}

TEST(Tag, Comparative) { EXPECT_EQ(tag(TokenSeq{{"higher"}, ""}, bundled_tagger()).tags, Strings{"JJR"}); }

TEST(Tag, DeterminerNounVerb) {
  EXPECT_EQ(tag(TokenSeq{{"the", "results", "differ"}, ""}, bundled_tagger()).tags,
            (Strings{"DT", "NNS", "VBP"}));
}

TEST(Tag, EmptyInput) { EXPECT_TRUE(tag(TokenSeq{}, bundled_tagger()).tags.empty()); }

TEST(Tag, AlignedAndInTagsetForUnknownWords) {
  const TokenSeq seq{{"zorblification", "xq-17", "frobnicated", "3.14", "glorptastic", "ly"}, ""};
  const auto tags = tag(seq, bundled_tagger());
  ASSERT_EQ(tags.size(), seq.size());
  for (const auto& t : tags.tags) EXPECT_TRUE(bundled_tagger().has_tag(t)) << t;
}

TEST(Tag, DeterministicAcrossCalls) {
  const auto toks = tokenize("In contrast, we did not observe any change in body weight.");
  const auto a = bundled_tagger().tag_tokens(toks);
  for (int i = 0; i < 5; ++i) EXPECT_EQ(bundled_tagger().tag_tokens(toks), a);
}

TEST(Tag, GoldAccuracyFloor) {
  const auto gold = read_tagged_corpus(testing::data_path("gold/ptb-gold.tsv"));
  EXPECT_EQ(gold.size(), 50u);
  const auto acc = evaluate_tagger(bundled_tagger(), gold);
  EXPECT_GT(acc.total, 900u);
  EXPECT_GE(acc.rate(), 0.85);
}

TEST(ContentFilter, KeepsContentTags) {
  const TokenSeq seq{{"the", "results", "differ"}, "x"};
  const auto out = content_word_filter(seq, TagSeq{{"DT", "NNS", "VBP"}});
  EXPECT_EQ(out.tokens, (Strings{"results", "differ"}));
  EXPECT_EQ(out.source_id, "x");
}

TEST(ContentFilter, EmptyAndAllDeterminers) {
  EXPECT_TRUE(content_word_filter(TokenSeq{}, TagSeq{}).empty());
  EXPECT_TRUE(content_word_filter(TokenSeq{{"the", "a"}, ""}, TagSeq{{"DT", "DT"}}).empty());
}

TEST(ContentFilter, CustomPrefixes) {
  const TokenSeq seq{{"very", "high", "levels"}, ""};
  const auto out = content_word_filter(seq, TagSeq{{"RB", "JJ", "NNS"}}, {"JJ"});
  EXPECT_EQ(out.tokens, Strings{"high"});
}

TEST(ContentFilter, MisalignedInputsFail) {
  EXPECT_THROW(content_word_filter(TokenSeq{{"a", "b"}, ""}, TagSeq{{"DT"}}), UsageError);
}

TEST(TaggedCorpus, RejectsMalformedLines) {
  std::istringstream in("word\tNN\nbroken line\n");
  EXPECT_THROW(read_tagged_corpus(in), DataError);
}

TEST(Trainer, LearnsSeparableToyData) {
  std::vector<TaggedSentence> corpus;
  for (int i = 0; i < 30; ++i) {
    corpus.push_back({{"the", "cat", "sat"}, {"DT", "NN", "VBD"}});
    corpus.push_back({{"a", "dog", "ran"}, {"DT", "NN", "VBD"}});
  }
  PerceptronTrainer::Options opts;
  opts.iterations = 4;
  PerceptronTrainer trainer({"DT", "NN", "VBD"}, opts);
  const auto model = trainer.train(corpus, "toy-1");
  EXPECT_EQ(model.version(), "toy-1");
  EXPECT_EQ(model.tag_tokens(Strings{"the", "dog", "sat"}), (Strings{"DT", "NN", "VBD"}));
  EXPECT_DOUBLE_EQ(evaluate_tagger(model, corpus).rate(), 1.0);
}

}  // namespace
}  // namespace citekey
