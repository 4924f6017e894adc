#include "cascade_ner/pipeline.hpp"

#include <fstream>
#include <sstream>

#include "cascade_ner/error.hpp"
#include "cascade_ner/util.hpp"
#include "json.hpp"

namespace cascade_ner {

using nlohmann::json;

int NativeGate::predict(const Sentence& sentence) const {
  return predict_gate(model_, sentence);
}

TagSequence NativeTagger::predict(const Sentence& sentence) const {
  return viterbi_decode(model_, sentence);
}

NativeTyper::NativeTyper(LinearModel model) : model_(std::move(model)) {
  if (model_.label_count() != kEntityTypeCount) {
    throw Error(ErrorKind::kInvalidSpec,
                "a typer model needs the 13 entity-type labels");
  }
}

EntityType NativeTyper::predict(const Sentence&, const Span&,
                                const SpanQuery& query) const {
  return predict_span_type(model_, query);
}

int ExternalGate::predict(const Sentence& sentence) const {
  return predictions_->gate_for(sentence.id());
}

TagSequence ExternalTagger::predict(const Sentence& sentence) const {
  TagSequence tags = predictions_->tags_for(sentence.id(), scheme_);
  if (tags.size() != sentence.size()) {
    throw Error(ErrorKind::kLengthMismatch,
                "external tags for sentence '" + sentence.id() +
                    "' do not match its token count");
  }
  return tags;
}

EntityType ExternalTyper::predict(const Sentence& sentence, const Span& span,
                                  const SpanQuery&) const {
  return predictions_->type_for(sentence.id(), span);
}

void PipelineSpec::validate() const {
  if (approach < 1 || approach > 3) {
    throw Error(ErrorKind::kInvalidSpec,
                "approach must be 1, 2 or 3, got " + std::to_string(approach));
  }
  if (tagger == nullptr) {
    throw Error(ErrorKind::kInvalidSpec, "a tagger component is required");
  }
  const TagScheme wanted =
      approach == 1 ? TagScheme::kFull27 : TagScheme::kUntyped3;
  if (tagger->scheme() != wanted) {
    throw Error(ErrorKind::kSchemeMismatch,
                "approach " + std::to_string(approach) + " needs a " +
                    scheme_name(wanted) + " tagger, got " +
                    scheme_name(tagger->scheme()));
  }
  if (approach >= 2 && typer == nullptr) {
    throw Error(ErrorKind::kInvalidSpec,
                "approach " + std::to_string(approach) + " needs a typer");
  }
  if (approach == 3 && gate == nullptr) {
    throw Error(ErrorKind::kInvalidSpec, "approach 3 needs a gate");
  }
}

SentencePrediction run_approach1(const Tagger& tagger, const Sentence& sentence) {
  if (tagger.scheme() != TagScheme::kFull27) {
    throw Error(ErrorKind::kSchemeMismatch, "approach 1 needs a full27 tagger");
  }
  SentencePrediction prediction;
  prediction.sentence_id = sentence.id();
  prediction.spans = decode_bio(tagger.predict(sentence));
  return prediction;
}

SentencePrediction run_approach2(const Tagger& tagger, const Typer& typer,
                                 const Sentence& sentence) {
  if (tagger.scheme() != TagScheme::kUntyped3) {
    throw Error(ErrorKind::kSchemeMismatch, "approach 2 needs an untyped3 tagger");
  }
  SentencePrediction prediction;
  prediction.sentence_id = sentence.id();
  std::vector<Span> untyped = decode_bio(tagger.predict(sentence));
  std::vector<EntityType> types;
  types.reserve(untyped.size());
  for (const Span& span : untyped) {
    types.push_back(typer.predict(sentence, span, make_span_query(sentence, span)));
  }
  prediction.spans = apply_types(untyped, types);
  prediction.trace.untyped = std::move(untyped);
  prediction.trace.types = std::move(types);
  return prediction;
}

SentencePrediction run_approach3(const Gate& gate, const Tagger& tagger,
                                 const Typer& typer, const Sentence& sentence) {
  const int decision = gate.predict(sentence);
  if (decision == 0) {
    SentencePrediction prediction;
    prediction.sentence_id = sentence.id();
    prediction.trace.gate = 0;
    return prediction;
  }
  SentencePrediction prediction = run_approach2(tagger, typer, sentence);
  prediction.trace.gate = 1;
  return prediction;
}

std::vector<SentencePrediction> predict_corpus(const PipelineSpec& spec,
                                               const Corpus& corpus,
                                               int threads) {
  spec.validate();
  std::vector<SentencePrediction> predictions(corpus.sentences.size());
  parallel_for(corpus.sentences.size(), threads, [&](std::size_t i) {
    const Sentence& sentence = corpus.sentences[i].sentence;
    switch (spec.approach) {
      case 1:
        predictions[i] = run_approach1(*spec.tagger, sentence);
        break;
      case 2:
        predictions[i] = run_approach2(*spec.tagger, *spec.typer, sentence);
        break;
      default:
        predictions[i] = run_approach3(*spec.gate, *spec.tagger, *spec.typer,
                                       sentence);
        break;
    }
  });
  return predictions;
}

namespace {

json span_to_json(const Span& span) {
  json out{{"start", span.start}, {"end", span.end}};
  if (span.type) out["type"] = to_string(*span.type);
  return out;
}

}  // namespace

std::string predictions_to_jsonl(const std::vector<SentencePrediction>& predictions,
                                 bool include_trace) {
  std::string out;
  for (const SentencePrediction& prediction : predictions) {
    json record{{"sentence_id", prediction.sentence_id}};
    json spans = json::array();
    for (const Span& span : prediction.spans) spans.push_back(span_to_json(span));
    record["spans"] = std::move(spans);
    if (include_trace) {
      json trace = json::object();
      if (prediction.trace.gate) trace["gate"] = *prediction.trace.gate;
      if (prediction.trace.untyped) {
        json untyped = json::array();
        for (const Span& span : *prediction.trace.untyped) {
          untyped.push_back(json::array({span.start, span.end}));
        }
        trace["untyped"] = std::move(untyped);
      }
      record["trace"] = std::move(trace);
    }
    out += record.dump();
    out += '\n';
  }
  return out;
}

std::vector<SentencePrediction> parse_predictions_jsonl(std::istream& in) {
  std::vector<SentencePrediction> predictions;
  std::string line;
  size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.empty()) continue;
    json record = json::parse(line, nullptr, false);
    if (record.is_discarded() || !record.is_object() ||
        !record.contains("sentence_id") || !record["sentence_id"].is_string() ||
        !record.contains("spans") || !record["spans"].is_array()) {
      throw Error(ErrorKind::kMalformedJson,
                  "prediction line " + std::to_string(line_number) +
                      " needs sentence_id and spans");
    }
    SentencePrediction prediction;
    prediction.sentence_id = record["sentence_id"].get<std::string>();
    for (const json& item : record["spans"]) {
      if (!item.is_object() || !item.contains("start") || !item.contains("end") ||
          !item.contains("type") || !item["start"].is_number_integer() ||
          !item["end"].is_number_integer() || !item["type"].is_string()) {
        throw Error(ErrorKind::kMalformedJson,
                    "span entry on line " + std::to_string(line_number) +
                        " needs integer start/end and string type");
      }
      const std::optional<EntityType> type =
          parse_entity_type(item["type"].get<std::string>());
      if (!type) {
        throw Error(ErrorKind::kUnknownLabel,
                    "'" + item["type"].get<std::string>() + "' (line " +
                        std::to_string(line_number) + ")");
      }
      prediction.spans.emplace_back(item["start"].get<int>(),
                                    item["end"].get<int>(), *type);
    }
    std::sort(prediction.spans.begin(), prediction.spans.end(),
              [](const Span& a, const Span& b) { return a.start < b.start; });
    for (size_t i = 1; i < prediction.spans.size(); ++i) {
      if (prediction.spans[i].start < prediction.spans[i - 1].end) {
        throw Error(ErrorKind::kOverlappingSpans,
                    "spans overlap on line " + std::to_string(line_number));
      }
    }
    if (record.contains("trace") && record["trace"].is_object()) {
      const json& trace = record["trace"];
      if (trace.contains("gate") && trace["gate"].is_number_integer()) {
        prediction.trace.gate = trace["gate"].get<int>();
      }
      if (trace.contains("untyped") && trace["untyped"].is_array()) {
        std::vector<Span> untyped;
        for (const json& pair : trace["untyped"]) {
          if (pair.is_array() && pair.size() == 2) {
            untyped.emplace_back(pair[0].get<int>(), pair[1].get<int>());
          }
        }
        prediction.trace.untyped = std::move(untyped);
      }
    }
    predictions.push_back(std::move(prediction));
  }
  return predictions;
}

std::vector<SentencePrediction> parse_predictions_jsonl(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorKind::kInvalidArgument, "cannot open '" + path + "'");
  }
  return parse_predictions_jsonl(static_cast<std::istream&>(in));
}

}  // namespace cascade_ner
