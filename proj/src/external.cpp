#include "cascade_ner/external.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "cascade_ner/error.hpp"
#include "json.hpp"

namespace cascade_ner {

using nlohmann::json;

namespace {

/// A label string usable in at least one scheme (O/B/I or O/B-X/I-X).
bool is_known_label(const std::string& name) {
  return label_id(TagScheme::kUntyped3, name).has_value() ||
         label_id(TagScheme::kFull27, name).has_value();
}

std::vector<Span> parse_span_types(const json& array, size_t line_number) {
  if (!array.is_array()) {
    throw Error(ErrorKind::kMalformedJson,
                "span_types must be an array (line " +
                    std::to_string(line_number) + ")");
  }
  std::vector<Span> spans;
  spans.reserve(array.size());
  for (const json& item : array) {
    if (!item.is_object() || !item.contains("start") || !item.contains("end") ||
        !item.contains("type") || !item["start"].is_number_integer() ||
        !item["end"].is_number_integer() || !item["type"].is_string()) {
      throw Error(ErrorKind::kMalformedJson,
                  "span_types entry needs integer start/end and string type "
                  "(line " + std::to_string(line_number) + ")");
    }
    const std::optional<EntityType> type =
        parse_entity_type(item["type"].get<std::string>());
    if (!type) {
      throw Error(ErrorKind::kUnknownLabel,
                  "'" + item["type"].get<std::string>() + "' (line " +
                      std::to_string(line_number) + ")");
    }
    spans.emplace_back(item["start"].get<int>(), item["end"].get<int>(), *type);
  }
  std::sort(spans.begin(), spans.end(),
            [](const Span& a, const Span& b) { return a.start < b.start; });
  for (size_t i = 1; i < spans.size(); ++i) {
    if (spans[i].start < spans[i - 1].end) {
      throw Error(ErrorKind::kOverlappingSpans,
                  "span_types overlap (line " + std::to_string(line_number) + ")");
    }
  }
  return spans;
}

}  // namespace

ExternalPredictions ExternalPredictions::load_jsonl(std::istream& in) {
  ExternalPredictions predictions;
  std::string line;
  size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.empty()) continue;
    json record = json::parse(line, nullptr, false);
    if (record.is_discarded() || !record.is_object()) {
      throw Error(ErrorKind::kMalformedJson,
                  "line " + std::to_string(line_number) + " is not a JSON object");
    }
    if (!record.contains("sentence_id") || !record["sentence_id"].is_string()) {
      throw Error(ErrorKind::kMalformedJson,
                  "missing sentence_id (line " + std::to_string(line_number) + ")");
    }
    const std::string id = record["sentence_id"].get<std::string>();
    if (predictions.records_.count(id) > 0) {
      throw Error(ErrorKind::kDuplicatePrediction,
                  "sentence id '" + id + "' appears twice");
    }

    ExternalRecord entry;
    if (record.contains("tags")) {
      if (!record["tags"].is_array()) {
        throw Error(ErrorKind::kMalformedJson,
                    "tags must be an array (line " + std::to_string(line_number) +
                        ")");
      }
      std::vector<std::string> tags;
      for (const json& tag : record["tags"]) {
        if (!tag.is_string()) {
          throw Error(ErrorKind::kMalformedJson,
                      "tags must be strings (line " + std::to_string(line_number) +
                          ")");
        }
        std::string name = tag.get<std::string>();
        if (!is_known_label(name)) {
          throw Error(ErrorKind::kUnknownLabel,
                      "'" + name + "' (line " + std::to_string(line_number) + ")");
        }
        tags.push_back(std::move(name));
      }
      entry.tags = std::move(tags);
    }
    if (record.contains("gate")) {
      if (!record["gate"].is_number_integer() ||
          (record["gate"].get<int>() != 0 && record["gate"].get<int>() != 1)) {
        throw Error(ErrorKind::kMalformedJson,
                    "gate must be 0 or 1 (line " + std::to_string(line_number) +
                        ")");
      }
      entry.gate = record["gate"].get<int>();
    }
    if (record.contains("span_types")) {
      entry.span_types = parse_span_types(record["span_types"], line_number);
    }
    predictions.records_.emplace(id, std::move(entry));
  }
  return predictions;
}

ExternalPredictions ExternalPredictions::load_jsonl(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorKind::kInvalidArgument, "cannot open '" + path + "'");
  }
  return load_jsonl(static_cast<std::istream&>(in));
}

void ExternalPredictions::validate_against(const Corpus& corpus) const {
  std::map<std::string, const LabeledSentence*> by_id;
  for (const LabeledSentence& labeled : corpus.sentences) {
    by_id.emplace(labeled.sentence.id(), &labeled);
  }
  for (const auto& [id, record] : records_) {
    auto it = by_id.find(id);
    if (it == by_id.end()) {
      throw Error(ErrorKind::kUnknownSentenceId,
                  "'" + id + "' is not in the target corpus");
    }
    const int length = it->second->sentence.size();
    if (record.tags && static_cast<int>(record.tags->size()) != length) {
      throw Error(ErrorKind::kLengthMismatch,
                  "sentence '" + id + "' has " + std::to_string(length) +
                      " tokens but " + std::to_string(record.tags->size()) +
                      " external tags");
    }
    if (record.span_types) {
      for (const Span& span : *record.span_types) {
        if (span.end > length) {
          throw Error(ErrorKind::kSpanOutOfRange,
                      "external span [" + std::to_string(span.start) + ", " +
                          std::to_string(span.end) + ") exceeds sentence '" + id +
                          "'");
        }
      }
    }
  }
}

bool ExternalPredictions::has_tags() const {
  return std::any_of(records_.begin(), records_.end(),
                     [](const auto& kv) { return kv.second.tags.has_value(); });
}

bool ExternalPredictions::has_gate() const {
  return std::any_of(records_.begin(), records_.end(),
                     [](const auto& kv) { return kv.second.gate.has_value(); });
}

bool ExternalPredictions::has_span_types() const {
  return std::any_of(records_.begin(), records_.end(), [](const auto& kv) {
    return kv.second.span_types.has_value();
  });
}

const ExternalRecord* ExternalPredictions::find(const std::string& sentence_id) const {
  auto it = records_.find(sentence_id);
  return it == records_.end() ? nullptr : &it->second;
}

TagSequence ExternalPredictions::tags_for(const std::string& sentence_id,
                                          TagScheme scheme) const {
  const ExternalRecord* record = find(sentence_id);
  if (record == nullptr || !record->tags) {
    throw Error(ErrorKind::kMissingPrediction,
                "no external tags for sentence '" + sentence_id + "'");
  }
  std::vector<int> ids;
  ids.reserve(record->tags->size());
  for (const std::string& name : *record->tags) {
    const std::optional<int> id = label_id(scheme, name);
    if (!id) {
      throw Error(ErrorKind::kSchemeMismatch,
                  "external tag '" + name + "' for sentence '" + sentence_id +
                      "' is not a " + scheme_name(scheme) + " label");
    }
    ids.push_back(*id);
  }
  return TagSequence(scheme, std::move(ids));
}

int ExternalPredictions::gate_for(const std::string& sentence_id) const {
  const ExternalRecord* record = find(sentence_id);
  if (record == nullptr || !record->gate) {
    throw Error(ErrorKind::kMissingPrediction,
                "no external gate decision for sentence '" + sentence_id + "'");
  }
  return *record->gate;
}

EntityType ExternalPredictions::type_for(const std::string& sentence_id,
                                         const Span& span) const {
  const ExternalRecord* record = find(sentence_id);
  if (record != nullptr && record->span_types) {
    for (const Span& typed : *record->span_types) {
      if (typed.start == span.start && typed.end == span.end) {
        return *typed.type;
      }
    }
  }
  throw Error(ErrorKind::kMissingPrediction,
              "no external type for span [" + std::to_string(span.start) + ", " +
                  std::to_string(span.end) + ") of sentence '" + sentence_id + "'");
}

}  // namespace cascade_ner
