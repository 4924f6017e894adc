#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cascade_ner/corpus.hpp"
#include "cascade_ner/span.hpp"

namespace cascade_ner {

using FeatureId = std::uint64_t;

/// Sparse weight-1 activations, keyed by 64-bit feature-string hashes
/// (FNV-1a; see hash.hpp). Repeated ids accumulate.
struct FeatureVector {
  std::vector<FeatureId> ids;

  void add(std::string_view feature);
  bool contains(std::string_view feature) const;
  size_t size() const { return ids.size(); }
};

/// Context window (tokens per side) for span-classifier features.
inline constexpr int kSpanContextWindow = 3;

/// A detected span plus the context needed to classify it.
struct SpanQuery {
  std::string span_text;
  std::vector<std::string> left_context;   // sentence order, up to k tokens
  std::vector<std::string> right_context;  // sentence order, up to k tokens
  std::string sentence_text;

  /// "What is <span_text> in the sentence: <sentence_text>"
  std::string prompt() const;
};

SpanQuery make_span_query(const Sentence& sentence, const Span& span,
                          int context_window = kSpanContextWindow);

/// Word identity, lowercase, shape, prefixes/suffixes 1-3 and character-class
/// flags for the token at i, plus the same templates at offsets -2..+2
/// (out-of-range slots emit <BOS>/<EOS> sentinels).
/// Throws kIndexOutOfRange.
FeatureVector featurize_token(const Sentence& sentence, int i);

/// Bag of per-token features (word, lowercase, shape) plus lowercased word
/// bigrams.
FeatureVector featurize_sentence(const Sentence& sentence);

/// Features over the span text, its context windows, a span-length bucket
/// and the sentence bag -- the same information as the query prompt.
FeatureVector featurize_span_query(const SpanQuery& query);

/// Character-class word shape: A-Z -> 'X', a-z -> 'x', 0-9 -> 'd', other
/// bytes -> '#'.
std::string word_shape(std::string_view word);

}  // namespace cascade_ner
