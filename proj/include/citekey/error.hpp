#ifndef CITEKEY_ERROR_HPP_
#define CITEKEY_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <utility>

namespace citekey {

// Base for every error the library raises. `stage` names the pipeline stage
// (load, tokenize, tag, count, keyness, affect, analytics, emit) and
// `record_id` the offending statement when one is known.
class Error : public std::runtime_error {
 public:
  Error(std::string stage, const std::string& message, std::string record_id = {})
      : std::runtime_error(format(stage, message, record_id)),
        stage_(std::move(stage)),
        message_(message),
        record_id_(std::move(record_id)) {}

  const std::string& stage() const noexcept { return stage_; }
  // Message without the stage prefix and record suffix.
  const std::string& message() const noexcept { return message_; }
  const std::string& record_id() const noexcept { return record_id_; }

 private:
  static std::string format(const std::string& stage, const std::string& message,
                            const std::string& record_id) {
    std::string out = stage.empty() ? message : stage + ": " + message;
    if (!record_id.empty()) out += " (record " + record_id + ")";
    return out;
  }

  std::string stage_;
  std::string message_;
  std::string record_id_;
};

// Bad input data: unreadable files, malformed records, corrupt models.
class DataError : public Error {
 public:
  using Error::Error;
};

// Caller violated an operation's precondition or passed an invalid config.
class UsageError : public Error {
 public:
  using Error::Error;
};

}  // namespace citekey

#endif  // CITEKEY_ERROR_HPP_
