#pragma once

#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cascade_ner/chain_tagger.hpp"
#include "cascade_ner/corpus.hpp"
#include "cascade_ner/external.hpp"
#include "cascade_ner/linear_model.hpp"
#include "cascade_ner/span.hpp"

namespace cascade_ner {

/// Stage components. Implementations are immutable and safe to share across
/// threads; a pipeline's output depends only on the values they return, not
/// on whether they are native models or file-based predictions.
class Gate {
 public:
  virtual ~Gate() = default;
  virtual int predict(const Sentence& sentence) const = 0;
};

class Tagger {
 public:
  virtual ~Tagger() = default;
  virtual TagScheme scheme() const = 0;
  virtual TagSequence predict(const Sentence& sentence) const = 0;
};

class Typer {
 public:
  virtual ~Typer() = default;
  virtual EntityType predict(const Sentence& sentence, const Span& span,
                             const SpanQuery& query) const = 0;
};

class NativeGate : public Gate {
 public:
  explicit NativeGate(LinearModel model) : model_(std::move(model)) {}
  int predict(const Sentence& sentence) const override;

 private:
  LinearModel model_;
};

class NativeTagger : public Tagger {
 public:
  explicit NativeTagger(ChainTaggerModel model) : model_(std::move(model)) {}
  TagScheme scheme() const override { return model_.scheme(); }
  TagSequence predict(const Sentence& sentence) const override;

 private:
  ChainTaggerModel model_;
};

class NativeTyper : public Typer {
 public:
  explicit NativeTyper(LinearModel model);
  EntityType predict(const Sentence& sentence, const Span& span,
                     const SpanQuery& query) const override;

 private:
  LinearModel model_;
};

class ExternalGate : public Gate {
 public:
  explicit ExternalGate(const ExternalPredictions* predictions)
      : predictions_(predictions) {}
  int predict(const Sentence& sentence) const override;

 private:
  const ExternalPredictions* predictions_;
};

class ExternalTagger : public Tagger {
 public:
  ExternalTagger(const ExternalPredictions* predictions, TagScheme scheme)
      : predictions_(predictions), scheme_(scheme) {}
  TagScheme scheme() const override { return scheme_; }
  TagSequence predict(const Sentence& sentence) const override;

 private:
  const ExternalPredictions* predictions_;
  TagScheme scheme_;
};

class ExternalTyper : public Typer {
 public:
  explicit ExternalTyper(const ExternalPredictions* predictions)
      : predictions_(predictions) {}
  EntityType predict(const Sentence& sentence, const Span& span,
                     const SpanQuery& query) const override;

 private:
  const ExternalPredictions* predictions_;
};

/// Intermediate stage outputs, recorded for diagnostics. A field is present
/// only if the stage actually ran.
struct StageTrace {
  std::optional<int> gate;
  std::optional<std::vector<Span>> untyped;
  std::optional<std::vector<EntityType>> types;

  bool operator==(const StageTrace&) const = default;
};

struct SentencePrediction {
  std::string sentence_id;
  std::vector<Span> spans;  // disjoint, sorted, all typed
  StageTrace trace;

  bool operator==(const SentencePrediction&) const = default;
};

/// One of the three pipeline shapes, over non-owning component refs.
struct PipelineSpec {
  int approach = 1;  // 1, 2 or 3
  const Gate* gate = nullptr;      // approach 3
  const Tagger* tagger = nullptr;  // all approaches
  const Typer* typer = nullptr;    // approaches 2, 3

  /// Throws kInvalidSpec on missing components, kSchemeMismatch on a tagger
  /// scheme that does not fit the approach (1 -> Full27, 2/3 -> Untyped3).
  void validate() const;
};

SentencePrediction run_approach1(const Tagger& tagger, const Sentence& sentence);
SentencePrediction run_approach2(const Tagger& tagger, const Typer& typer,
                                 const Sentence& sentence);
SentencePrediction run_approach3(const Gate& gate, const Tagger& tagger,
                                 const Typer& typer, const Sentence& sentence);

/// One prediction per sentence, corpus order preserved. Sentences may be
/// processed in parallel (threads: 0 = hardware concurrency); output is
/// independent of scheduling.
std::vector<SentencePrediction> predict_corpus(const PipelineSpec& spec,
                                               const Corpus& corpus,
                                               int threads = 1);

std::string predictions_to_jsonl(const std::vector<SentencePrediction>& predictions,
                                 bool include_trace);

/// Parses the prediction JSONL format. Throws kMalformedJson, kUnknownLabel,
/// kSpanOutOfRange, kOverlappingSpans.
std::vector<SentencePrediction> parse_predictions_jsonl(std::istream& in);
std::vector<SentencePrediction> parse_predictions_jsonl(const std::string& path);

}  // namespace cascade_ner
