#pragma once

#include <stdexcept>
#include <string>

namespace cascade_ner {

/// Error taxonomy shared by all modules. Data errors map to CLI exit code 2,
/// configuration/usage errors to exit code 3.
enum class ErrorKind {
  // data errors
  kMalformedLine,
  kUnknownLabel,
  kEmptyCorpus,
  kInvalidCorpus,
  kOverlappingSpans,
  kSpanOutOfRange,
  kMissingTypeForFullScheme,
  kLengthMismatch,
  kIndexOutOfRange,
  kNoSpansInCorpus,
  kUnknownSentenceId,
  kMalformedJson,
  kMissingPrediction,
  kDuplicatePrediction,
  // configuration errors
  kSchemeMismatch,
  kInvalidSpec,
  kInvalidArgument,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);

  ErrorKind kind() const { return kind_; }
  bool is_config_error() const;

 private:
  ErrorKind kind_;
};

}  // namespace cascade_ner
