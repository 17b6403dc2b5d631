#ifndef CITEKEY_TESTS_SUPPORT_HPP_
#define CITEKEY_TESTS_SUPPORT_HPP_

#include <unistd.h>

#include <atomic>
#include <filesystem>
#include <string>

#include "citekey/affect.hpp"
#include "citekey/tagger.hpp"

#ifndef CITEKEY_TEST_DATA_DIR
#error "CITEKEY_TEST_DATA_DIR must point at the data/ directory"
#endif

namespace citekey::testing {

inline std::string data_path(const std::string& rel) { return std::string(CITEKEY_TEST_DATA_DIR) + "/" + rel; }

inline const TaggerModel& bundled_tagger() {
  static const TaggerModel kModel = load_tagger_model(data_path("models/ptb-perceptron.model"));
  return kModel;
}

inline const AffectLexicon& bundled_lexicon() {
  static const AffectLexicon kLex = load_affect_lexicon(data_path("lexicon/affect-en.tsv"));
  return kLex;
}

// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    static std::atomic<int> counter{0};
    path_ = std::filesystem::temp_directory_path() /
            ("citekey-" + tag + "-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const noexcept { return path_; }
  std::string file(const std::string& name) const { return (path_ / name).string(); }

 private:
  std::filesystem::path path_;
};

}  // namespace citekey::testing

#endif  // CITEKEY_TESTS_SUPPORT_HPP_
