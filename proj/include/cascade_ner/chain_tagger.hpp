#pragma once

#include <vector>

#include "cascade_ner/corpus.hpp"
#include "cascade_ner/linear_model.hpp"

namespace cascade_ner {

/// Which sentences the tagger trains on.
enum class TrainSubset {
  kGated,  // entity-containing sentences only
  kAll,
};

const char* to_string(TrainSubset subset);

struct TaggerTrainOptions {
  int epochs = 10;
  std::uint64_t seed = 42;
  double learning_rate = 1.0;
  TrainSubset subset = TrainSubset::kGated;
};

/// Linear-chain tagger: per-label emission weights over token features plus
/// dense label-transition weights with explicit start/stop scores.
class ChainTaggerModel {
 public:
  ChainTaggerModel(TagScheme scheme, WeightTable emission,
                   std::vector<std::vector<double>> transition,
                   std::vector<double> start, std::vector<double> stop,
                   TrainMeta meta = {});

  static ChainTaggerModel zero(TagScheme scheme);

  TagScheme scheme() const { return scheme_; }
  int label_count() const { return static_cast<int>(start_.size()); }
  const WeightTable& emission() const { return emission_; }
  const std::vector<std::vector<double>>& transition() const { return transition_; }
  const std::vector<double>& start() const { return start_; }
  const std::vector<double>& stop() const { return stop_; }
  const TrainMeta& meta() const { return meta_; }

  /// Per-label emission scores for one feature vector.
  std::vector<double> emission_scores(const FeatureVector& features) const;

 private:
  TagScheme scheme_;
  WeightTable emission_;
  std::vector<std::vector<double>> transition_;  // [from][to]
  std::vector<double> start_;
  std::vector<double> stop_;
  TrainMeta meta_;
};

/// Argmax label path under emission + transition scores; ties break to the
/// lowest label index at every backpointer and at the final label.
TagSequence viterbi_decode(const ChainTaggerModel& model, const Sentence& sentence);

/// Structured averaged perceptron: per epoch, Viterbi-decode each training
/// sentence and update emission and transition weights on mismatch.
/// For kUntyped3 the gold tags are collapsed first. Throws kEmptyCorpus,
/// kInvalidArgument (epochs < 1).
ChainTaggerModel train_tagger(const Corpus& corpus, TagScheme scheme,
                              const TaggerTrainOptions& options = {});

}  // namespace cascade_ner
