#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cascade_ner/corpus.hpp"
#include "cascade_ner/span.hpp"

namespace cascade_ner {

/// Externally produced predictions for one sentence; any subset of fields.
struct ExternalRecord {
  std::optional<std::vector<std::string>> tags;
  std::optional<int> gate;
  std::optional<std::vector<Span>> span_types;  // typed spans
};

/// File-based prediction adapter. Loads the JSONL interchange format
/// (one record per sentence: tags and/or gate and/or span_types) and serves
/// the values to pipelines exactly as native model outputs.
class ExternalPredictions {
 public:
  /// Throws kMalformedJson, kUnknownLabel, kDuplicatePrediction,
  /// kSpanOutOfRange, kOverlappingSpans.
  static ExternalPredictions load_jsonl(std::istream& in);
  static ExternalPredictions load_jsonl(const std::string& path);

  /// Checks every record against a target corpus: ids exist, tag lengths
  /// match token counts, spans are in range. Throws kUnknownSentenceId,
  /// kLengthMismatch, kSpanOutOfRange.
  void validate_against(const Corpus& corpus) const;

  bool has_tags() const;
  bool has_gate() const;
  bool has_span_types() const;

  const ExternalRecord* find(const std::string& sentence_id) const;
  size_t size() const { return records_.size(); }

  /// Tags for a sentence under the required scheme. Throws kMissingPrediction
  /// if the record or field is absent, kSchemeMismatch if a tag does not
  /// parse under the scheme.
  TagSequence tags_for(const std::string& sentence_id, TagScheme scheme) const;

  /// Throws kMissingPrediction.
  int gate_for(const std::string& sentence_id) const;

  /// Type for a span with the given boundaries. Throws kMissingPrediction if
  /// no span_types entry covers exactly [span.start, span.end).
  EntityType type_for(const std::string& sentence_id, const Span& span) const;

 private:
  std::map<std::string, ExternalRecord> records_;
};

}  // namespace cascade_ner
