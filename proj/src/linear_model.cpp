#include "cascade_ner/linear_model.hpp"

#include <cmath>
#include <iostream>

#include "cascade_ner/error.hpp"
#include "cascade_ner/hash.hpp"
#include "cascade_ner/span.hpp"
#include "cascade_ner/util.hpp"

namespace cascade_ner {

LinearModel::LinearModel(std::vector<std::string> labels, WeightTable weights,
                         TrainMeta meta)
    : labels_(std::move(labels)), weights_(std::move(weights)),
      meta_(std::move(meta)) {
  if (labels_.size() < 2) {
    throw Error(ErrorKind::kInvalidArgument, "a linear model needs >= 2 labels");
  }
  for (const auto& [id, row] : weights_) {
    if (row.size() != labels_.size()) {
      throw Error(ErrorKind::kLengthMismatch,
                  "weight row size does not match the label set");
    }
  }
}

std::vector<double> LinearModel::scores(const FeatureVector& features) const {
  std::vector<double> out(labels_.size(), 0.0);
  for (FeatureId id : features.ids) {
    auto it = weights_.find(id);
    if (it == weights_.end()) continue;
    for (size_t k = 0; k < out.size(); ++k) out[k] += it->second[k];
  }
  return out;
}

int LinearModel::predict(const FeatureVector& features) const {
  return argmax(scores(features));
}

int argmax(const std::vector<double>& scores) {
  int best = 0;
  for (int i = 1; i < static_cast<int>(scores.size()); ++i) {
    if (scores[i] > scores[best]) best = i;
  }
  return best;
}

std::uint64_t next_random(std::uint64_t& state) {
  // splitmix64
  state += 0x9e3779b97f4a7c15ull;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

void deterministic_shuffle(std::vector<int>& order, std::uint64_t& state) {
  for (size_t i = order.size(); i > 1; --i) {
    const size_t j = next_random(state) % i;
    std::swap(order[i - 1], order[j]);
  }
}

std::string corpus_fingerprint(const Corpus& corpus) {
  return to_hex(fnv1a64(serialize_conll(corpus)));
}

namespace {

// Averaged multiclass perceptron over precomputed feature vectors.
// Weight rows hold [w | u] where u accumulates step * update for averaging.
class AveragedTrainer {
 public:
  AveragedTrainer(int label_count) : label_count_(label_count) {}

  void update(const FeatureVector& features, int gold, int predicted,
              double rate, std::uint64_t step) {
    if (gold == predicted) return;
    for (FeatureId id : features.ids) {
      std::vector<double>& row = table_[id];
      if (row.empty()) row.assign(2 * label_count_, 0.0);
      row[gold] += rate;
      row[predicted] -= rate;
      row[label_count_ + gold] += rate * static_cast<double>(step);
      row[label_count_ + predicted] -= rate * static_cast<double>(step);
    }
  }

  std::vector<double> scores(const FeatureVector& features) const {
    std::vector<double> out(label_count_, 0.0);
    for (FeatureId id : features.ids) {
      auto it = table_.find(id);
      if (it == table_.end()) continue;
      for (int k = 0; k < label_count_; ++k) out[k] += it->second[k];
    }
    return out;
  }

  WeightTable averaged(std::uint64_t final_step) const {
    WeightTable out;
    out.reserve(table_.size());
    const double steps = static_cast<double>(final_step);
    for (const auto& [id, row] : table_) {
      std::vector<double> averaged_row(label_count_, 0.0);
      bool nonzero = false;
      for (int k = 0; k < label_count_; ++k) {
        averaged_row[k] = row[k] - row[label_count_ + k] / steps;
        if (averaged_row[k] != 0.0) nonzero = true;
      }
      if (nonzero) out.emplace(id, std::move(averaged_row));
    }
    return out;
  }

 private:
  int label_count_;
  std::unordered_map<FeatureId, std::vector<double>> table_;
};

LinearModel train_multiclass(const std::vector<FeatureVector>& examples,
                             const std::vector<int>& gold,
                             std::vector<std::string> labels,
                             const TrainOptions& options, TrainMeta meta) {
  AveragedTrainer trainer(static_cast<int>(labels.size()));
  std::vector<int> order(examples.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);

  std::uint64_t rng = options.seed;
  std::uint64_t step = 1;
  for (int epoch = 0; epoch < options.epochs; ++epoch) {
    deterministic_shuffle(order, rng);
    for (int idx : order) {
      const int predicted = argmax(trainer.scores(examples[idx]));
      trainer.update(examples[idx], gold[idx], predicted, options.learning_rate,
                     step);
      ++step;
    }
  }
  return LinearModel(std::move(labels), trainer.averaged(step), std::move(meta));
}

void check_options(const TrainOptions& options) {
  if (options.epochs < 1) {
    throw Error(ErrorKind::kInvalidArgument, "epochs must be >= 1");
  }
  if (!(options.learning_rate > 0.0)) {
    throw Error(ErrorKind::kInvalidArgument, "learning rate must be positive");
  }
}

TrainMeta make_meta(const Corpus& corpus, const TrainOptions& options) {
  TrainMeta meta;
  meta.epochs = options.epochs;
  meta.seed = options.seed;
  meta.learning_rate = options.learning_rate;
  meta.corpus_fingerprint = corpus_fingerprint(corpus);
  return meta;
}

}  // namespace

LinearModel train_gate(const Corpus& corpus, const TrainOptions& options) {
  check_options(options);
  if (corpus.sentences.empty()) {
    throw Error(ErrorKind::kEmptyCorpus, "cannot train a gate on an empty corpus");
  }

  std::vector<FeatureVector> examples;
  std::vector<int> gold;
  examples.reserve(corpus.sentences.size());
  gold.reserve(corpus.sentences.size());
  bool seen[2] = {false, false};
  for (const LabeledSentence& labeled : corpus.sentences) {
    examples.push_back(featurize_sentence(labeled.sentence));
    const int label = sentence_entity_label(labeled.tags);
    gold.push_back(label);
    seen[label] = true;
  }
  if (!seen[0] || !seen[1]) {
    std::cerr << "warning: SingleClassCorpus: all gate training labels are "
              << (seen[1] ? 1 : 0) << "; training the majority model\n";
  }
  return train_multiclass(examples, gold, {"0", "1"}, options,
                          make_meta(corpus, options));
}

LinearModel train_span_classifier(const Corpus& corpus,
                                  const TrainOptions& options) {
  check_options(options);
  std::vector<FeatureVector> examples;
  std::vector<int> gold;
  for (const LabeledSentence& labeled : corpus.sentences) {
    for (const Span& span : decode_bio(labeled.tags)) {
      examples.push_back(
          featurize_span_query(make_span_query(labeled.sentence, span)));
      gold.push_back(static_cast<int>(*span.type));
    }
  }
  if (examples.empty()) {
    throw Error(ErrorKind::kNoSpansInCorpus,
                "the corpus has no entity spans to train on");
  }
  std::vector<std::string> labels;
  labels.reserve(kEntityTypeCount);
  for (EntityType type : all_entity_types()) labels.push_back(to_string(type));
  return train_multiclass(examples, gold, std::move(labels), options,
                          make_meta(corpus, options));
}

int predict_gate(const LinearModel& model, const Sentence& sentence) {
  return model.predict(featurize_sentence(sentence));
}

EntityType predict_span_type(const LinearModel& model, const SpanQuery& query) {
  return static_cast<EntityType>(model.predict(featurize_span_query(query)));
}

}  // namespace cascade_ner
