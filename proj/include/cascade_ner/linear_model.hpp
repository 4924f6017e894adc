#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "cascade_ner/corpus.hpp"
#include "cascade_ner/features.hpp"

namespace cascade_ner {

struct TrainOptions {
  int epochs = 10;
  std::uint64_t seed = 42;
  double learning_rate = 1.0;
};

struct TrainMeta {
  int epochs = 0;
  std::uint64_t seed = 0;
  double learning_rate = 1.0;
  std::string corpus_fingerprint;
  std::string train_subset;  // tagger only: "gated" / "all"

  bool operator==(const TrainMeta&) const = default;
};

using WeightTable = std::unordered_map<FeatureId, std::vector<double>>;

/// Multiclass linear scorer over hashed features. Ties in argmax break to the
/// lowest label index.
class LinearModel {
 public:
  LinearModel(std::vector<std::string> labels, WeightTable weights,
              TrainMeta meta = {});

  const std::vector<std::string>& labels() const { return labels_; }
  int label_count() const { return static_cast<int>(labels_.size()); }
  const WeightTable& weights() const { return weights_; }
  const TrainMeta& meta() const { return meta_; }

  std::vector<double> scores(const FeatureVector& features) const;
  int predict(const FeatureVector& features) const;

 private:
  std::vector<std::string> labels_;
  WeightTable weights_;
  TrainMeta meta_;
};

/// Averaged-perceptron binary sentence gate (labels "0", "1"); training
/// labels come from sentence_entity_label over the gold tags. Warns on a
/// single-class corpus and still trains the majority model.
/// Throws kEmptyCorpus, kInvalidArgument (epochs < 1).
LinearModel train_gate(const Corpus& corpus, const TrainOptions& options = {});

/// Averaged-perceptron 13-class span-type classifier over featurize_span_query
/// of every gold span. Throws kNoSpansInCorpus.
LinearModel train_span_classifier(const Corpus& corpus,
                                  const TrainOptions& options = {});

int predict_gate(const LinearModel& model, const Sentence& sentence);
EntityType predict_span_type(const LinearModel& model, const SpanQuery& query);

/// Lowest-index argmax.
int argmax(const std::vector<double>& scores);

/// Deterministic Fisher-Yates over indices [0, n), driven by the given
/// generator state (not std::shuffle, whose draws are implementation-defined).
void deterministic_shuffle(std::vector<int>& order, std::uint64_t& state);

/// splitmix64 step; the RNG used for epoch shuffling.
std::uint64_t next_random(std::uint64_t& state);

/// FNV-1a fingerprint of the serialized corpus, as 16 hex digits.
std::string corpus_fingerprint(const Corpus& corpus);

}  // namespace cascade_ner
