#pragma once

#include <optional>
#include <string>

#include "cascade_ner/chain_tagger.hpp"
#include "cascade_ner/linear_model.hpp"

namespace cascade_ner {

enum class ModelKind { kGate, kTagger, kTyper };

const char* to_string(ModelKind kind);
std::optional<ModelKind> parse_model_kind(std::string_view name);

/// Serializes to the versioned JSON model format with sorted keys; output is
/// byte-deterministic for identical models.
std::string model_to_json(const LinearModel& model, ModelKind kind);
std::string model_to_json(const ChainTaggerModel& model);

void save_model(const LinearModel& model, ModelKind kind, const std::string& path);
void save_model(const ChainTaggerModel& model, const std::string& path);

struct LoadedModel {
  ModelKind kind;
  std::optional<LinearModel> linear;       // kGate / kTyper
  std::optional<ChainTaggerModel> tagger;  // kTagger
};

/// Throws kMalformedJson on structural problems, kUnknownLabel on a label set
/// that does not match the declared kind/scheme.
LoadedModel load_model(const std::string& path);
LoadedModel parse_model_json(const std::string& text);

}  // namespace cascade_ner
