#include "cascade_ner/error.hpp"

namespace cascade_ner {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kMalformedLine: return "MalformedLine";
    case ErrorKind::kUnknownLabel: return "UnknownLabel";
    case ErrorKind::kEmptyCorpus: return "EmptyCorpus";
    case ErrorKind::kInvalidCorpus: return "InvalidCorpus";
    case ErrorKind::kOverlappingSpans: return "OverlappingSpans";
    case ErrorKind::kSpanOutOfRange: return "SpanOutOfRange";
    case ErrorKind::kMissingTypeForFullScheme: return "MissingTypeForFullScheme";
    case ErrorKind::kLengthMismatch: return "LengthMismatch";
    case ErrorKind::kIndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::kNoSpansInCorpus: return "NoSpansInCorpus";
    case ErrorKind::kUnknownSentenceId: return "UnknownSentenceId";
    case ErrorKind::kMalformedJson: return "MalformedJson";
    case ErrorKind::kMissingPrediction: return "MissingPrediction";
    case ErrorKind::kDuplicatePrediction: return "DuplicatePrediction";
    case ErrorKind::kSchemeMismatch: return "SchemeMismatch";
    case ErrorKind::kInvalidSpec: return "InvalidSpec";
    case ErrorKind::kInvalidArgument: return "InvalidArgument";
  }
  return "UnknownError";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message),
      kind_(kind) {}

bool Error::is_config_error() const {
  switch (kind_) {
    case ErrorKind::kSchemeMismatch:
    case ErrorKind::kInvalidSpec:
    case ErrorKind::kInvalidArgument:
      return true;
    default:
      return false;
  }
}

}  // namespace cascade_ner
