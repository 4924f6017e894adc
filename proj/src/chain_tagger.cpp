#include "cascade_ner/chain_tagger.hpp"

#include <algorithm>

#include "cascade_ner/error.hpp"
#include "cascade_ner/span.hpp"

namespace cascade_ner {

const char* to_string(TrainSubset subset) {
  return subset == TrainSubset::kGated ? "gated" : "all";
}

ChainTaggerModel::ChainTaggerModel(TagScheme scheme, WeightTable emission,
                                   std::vector<std::vector<double>> transition,
                                   std::vector<double> start,
                                   std::vector<double> stop, TrainMeta meta)
    : scheme_(scheme), emission_(std::move(emission)),
      transition_(std::move(transition)), start_(std::move(start)),
      stop_(std::move(stop)), meta_(std::move(meta)) {
  const size_t n = static_cast<size_t>(cascade_ner::label_count(scheme));
  if (start_.size() != n || stop_.size() != n || transition_.size() != n) {
    throw Error(ErrorKind::kLengthMismatch,
                "transition tables do not match the label set size");
  }
  for (const auto& row : transition_) {
    if (row.size() != n) {
      throw Error(ErrorKind::kLengthMismatch, "transition matrix is not square");
    }
  }
  for (const auto& [id, row] : emission_) {
    if (row.size() != n) {
      throw Error(ErrorKind::kLengthMismatch,
                  "emission row size does not match the label set");
    }
  }
}

ChainTaggerModel ChainTaggerModel::zero(TagScheme scheme) {
  const size_t n = static_cast<size_t>(cascade_ner::label_count(scheme));
  return ChainTaggerModel(
      scheme, {}, std::vector<std::vector<double>>(n, std::vector<double>(n, 0.0)),
      std::vector<double>(n, 0.0), std::vector<double>(n, 0.0));
}

std::vector<double> ChainTaggerModel::emission_scores(
    const FeatureVector& features) const {
  std::vector<double> out(static_cast<size_t>(label_count()), 0.0);
  for (FeatureId id : features.ids) {
    auto it = emission_.find(id);
    if (it == emission_.end()) continue;
    for (size_t k = 0; k < out.size(); ++k) out[k] += it->second[k];
  }
  return out;
}

namespace {

std::vector<FeatureVector> featurize_all(const Sentence& sentence) {
  std::vector<FeatureVector> features;
  features.reserve(static_cast<size_t>(sentence.size()));
  for (int i = 0; i < sentence.size(); ++i) {
    features.push_back(featurize_token(sentence, i));
  }
  return features;
}

/// Generic Viterbi over callbacks, shared by inference and training.
/// emit(i, scores) fills per-label emission scores for position i;
/// trans(p, y), start(y), stop(y) provide the chain scores.
template <typename Emit, typename Trans, typename StartFn, typename StopFn>
std::vector<int> viterbi_generic(int n, int labels, Emit&& emit, Trans&& trans,
                                 StartFn&& start, StopFn&& stop) {
  std::vector<std::vector<double>> best(n, std::vector<double>(labels));
  std::vector<std::vector<int>> back(n, std::vector<int>(labels, 0));
  std::vector<double> emission(labels);

  emit(0, emission);
  for (int y = 0; y < labels; ++y) best[0][y] = start(y) + emission[y];

  for (int i = 1; i < n; ++i) {
    emit(i, emission);
    for (int y = 0; y < labels; ++y) {
      int best_prev = 0;
      double best_score = best[i - 1][0] + trans(0, y);
      for (int p = 1; p < labels; ++p) {
        const double score = best[i - 1][p] + trans(p, y);
        if (score > best_score) {  // strict: ties keep the lowest index
          best_score = score;
          best_prev = p;
        }
      }
      best[i][y] = best_score + emission[y];
      back[i][y] = best_prev;
    }
  }

  int last = 0;
  double last_score = best[n - 1][0] + stop(0);
  for (int y = 1; y < labels; ++y) {
    const double score = best[n - 1][y] + stop(y);
    if (score > last_score) {
      last_score = score;
      last = y;
    }
  }

  std::vector<int> path(static_cast<size_t>(n));
  path[n - 1] = last;
  for (int i = n - 1; i > 0; --i) path[i - 1] = back[i][path[i]];
  return path;
}

}  // namespace

TagSequence viterbi_decode(const ChainTaggerModel& model, const Sentence& sentence) {
  const std::vector<FeatureVector> features = featurize_all(sentence);
  const int labels = model.label_count();
  std::vector<int> path = viterbi_generic(
      static_cast<int>(features.size()), labels,
      [&](int i, std::vector<double>& out) { out = model.emission_scores(features[i]); },
      [&](int p, int y) { return model.transition()[p][y]; },
      [&](int y) { return model.start()[y]; },
      [&](int y) { return model.stop()[y]; });
  return TagSequence(model.scheme(), std::move(path));
}

namespace {

// Dense [w | u] pair for averaging, mirroring the sparse emission table.
struct DenseAveraged {
  std::vector<double> w;
  std::vector<double> u;

  explicit DenseAveraged(size_t n) : w(n, 0.0), u(n, 0.0) {}

  void bump(size_t i, double delta, std::uint64_t step) {
    w[i] += delta;
    u[i] += delta * static_cast<double>(step);
  }

  std::vector<double> averaged(double steps) const {
    std::vector<double> out(w.size());
    for (size_t i = 0; i < w.size(); ++i) out[i] = w[i] - u[i] / steps;
    return out;
  }
};

}  // namespace

ChainTaggerModel train_tagger(const Corpus& corpus, TagScheme scheme,
                              const TaggerTrainOptions& options) {
  if (options.epochs < 1) {
    throw Error(ErrorKind::kInvalidArgument, "epochs must be >= 1");
  }
  if (!(options.learning_rate > 0.0)) {
    throw Error(ErrorKind::kInvalidArgument, "learning rate must be positive");
  }
  if (corpus.sentences.empty()) {
    throw Error(ErrorKind::kEmptyCorpus, "cannot train a tagger on an empty corpus");
  }

  TrainMeta meta;
  meta.epochs = options.epochs;
  meta.seed = options.seed;
  meta.learning_rate = options.learning_rate;
  meta.corpus_fingerprint = corpus_fingerprint(corpus);
  meta.train_subset = to_string(options.subset);

  // Materialize the training view: feature vectors + gold label paths.
  std::vector<std::vector<FeatureVector>> features;
  std::vector<std::vector<int>> gold;
  for (const LabeledSentence& labeled : corpus.sentences) {
    if (options.subset == TrainSubset::kGated &&
        sentence_entity_label(labeled.tags) == 0) {
      continue;
    }
    const TagSequence tags = scheme == TagScheme::kUntyped3
                                 ? collapse_scheme(labeled.tags)
                                 : labeled.tags;
    features.push_back(featurize_all(labeled.sentence));
    gold.push_back(tags.labels);
  }

  const int labels = label_count(scheme);
  const size_t n_labels = static_cast<size_t>(labels);
  std::unordered_map<FeatureId, std::vector<double>> emission;  // rows [w | u]
  DenseAveraged start(n_labels), stop(n_labels);
  DenseAveraged transition(n_labels * n_labels);

  auto emission_bump = [&](const FeatureVector& fv, int label, double delta,
                           std::uint64_t step) {
    for (FeatureId id : fv.ids) {
      std::vector<double>& row = emission[id];
      if (row.empty()) row.assign(2 * n_labels, 0.0);
      row[label] += delta;
      row[n_labels + label] += delta * static_cast<double>(step);
    }
  };

  auto emit_current = [&](const FeatureVector& fv, std::vector<double>& out) {
    std::fill(out.begin(), out.end(), 0.0);
    for (FeatureId id : fv.ids) {
      auto it = emission.find(id);
      if (it == emission.end()) continue;
      for (size_t k = 0; k < n_labels; ++k) out[k] += it->second[k];
    }
  };

  std::vector<int> order(features.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);

  std::uint64_t rng = options.seed;
  std::uint64_t step = 1;
  const double rate = options.learning_rate;
  for (int epoch = 0; epoch < options.epochs; ++epoch) {
    deterministic_shuffle(order, rng);
    for (int idx : order) {
      const std::vector<FeatureVector>& fv = features[idx];
      const std::vector<int>& y_gold = gold[idx];
      const int n = static_cast<int>(fv.size());
      const std::vector<int> y_pred = viterbi_generic(
          n, labels,
          [&](int i, std::vector<double>& out) { emit_current(fv[i], out); },
          [&](int p, int y) { return transition.w[static_cast<size_t>(p) * n_labels + y]; },
          [&](int y) { return start.w[y]; }, [&](int y) { return stop.w[y]; });
      if (y_pred != y_gold) {
        for (int i = 0; i < n; ++i) {
          if (y_gold[i] != y_pred[i]) {
            emission_bump(fv[i], y_gold[i], rate, step);
            emission_bump(fv[i], y_pred[i], -rate, step);
          }
        }
        if (y_gold[0] != y_pred[0]) {
          start.bump(y_gold[0], rate, step);
          start.bump(y_pred[0], -rate, step);
        }
        if (y_gold[n - 1] != y_pred[n - 1]) {
          stop.bump(y_gold[n - 1], rate, step);
          stop.bump(y_pred[n - 1], -rate, step);
        }
        for (int i = 1; i < n; ++i) {
          const size_t g = static_cast<size_t>(y_gold[i - 1]) * n_labels + y_gold[i];
          const size_t p = static_cast<size_t>(y_pred[i - 1]) * n_labels + y_pred[i];
          if (g != p) {
            transition.bump(g, rate, step);
            transition.bump(p, -rate, step);
          }
        }
      }
      ++step;
    }
  }

  const double steps = static_cast<double>(step);
  WeightTable emission_avg;
  emission_avg.reserve(emission.size());
  for (const auto& [id, row] : emission) {
    std::vector<double> averaged(n_labels);
    bool nonzero = false;
    for (size_t k = 0; k < n_labels; ++k) {
      averaged[k] = row[k] - row[n_labels + k] / steps;
      if (averaged[k] != 0.0) nonzero = true;
    }
    if (nonzero) emission_avg.emplace(id, std::move(averaged));
  }
  const std::vector<double> transition_flat = transition.averaged(steps);
  std::vector<std::vector<double>> matrix(n_labels, std::vector<double>(n_labels));
  for (size_t p = 0; p < n_labels; ++p) {
    for (size_t y = 0; y < n_labels; ++y) {
      matrix[p][y] = transition_flat[p * n_labels + y];
    }
  }
  return ChainTaggerModel(scheme, std::move(emission_avg), std::move(matrix),
                          start.averaged(steps), stop.averaged(steps),
                          std::move(meta));
}

}  // namespace cascade_ner
