#include "cascade_ner/model_io.hpp"

#include <charconv>

#include "cascade_ner/error.hpp"
#include "cascade_ner/util.hpp"
#include "json.hpp"

namespace cascade_ner {

using nlohmann::json;

const char* to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::kGate: return "gate";
    case ModelKind::kTagger: return "tagger";
    case ModelKind::kTyper: return "typer";
  }
  return "unknown";
}

std::optional<ModelKind> parse_model_kind(std::string_view name) {
  if (name == "gate") return ModelKind::kGate;
  if (name == "tagger") return ModelKind::kTagger;
  if (name == "typer") return ModelKind::kTyper;
  return std::nullopt;
}

namespace {

constexpr const char* kFormatName = "cascade-ner-model";
constexpr int kFormatVersion = 1;

json weights_to_json(const WeightTable& weights) {
  json out = json::object();
  for (const auto& [id, row] : weights) {
    out[std::to_string(id)] = row;
  }
  return out;
}

json meta_to_json(const TrainMeta& meta) {
  json out{{"epochs", meta.epochs},
           {"seed", meta.seed},
           {"learning_rate", meta.learning_rate},
           {"corpus_fp", meta.corpus_fingerprint}};
  if (!meta.train_subset.empty()) out["train_subset"] = meta.train_subset;
  return out;
}

json base_json(ModelKind kind, const std::vector<std::string>& labels,
               const WeightTable& weights, const TrainMeta& meta) {
  return json{{"format", kFormatName}, {"version", kFormatVersion},
              {"kind", to_string(kind)}, {"labels", labels},
              {"weights", weights_to_json(weights)}, {"meta", meta_to_json(meta)}};
}

[[noreturn]] void bad_model(const std::string& what) {
  throw Error(ErrorKind::kMalformedJson, "model file: " + what);
}

WeightTable weights_from_json(const json& object, size_t label_count) {
  if (!object.is_object()) bad_model("'weights' must be an object");
  WeightTable out;
  out.reserve(object.size());
  for (const auto& [key, value] : object.items()) {
    FeatureId id = 0;
    const auto [ptr, ec] = std::from_chars(key.data(), key.data() + key.size(), id);
    if (ec != std::errc() || ptr != key.data() + key.size()) {
      bad_model("weight key '" + key + "' is not a feature id");
    }
    if (!value.is_array() || value.size() != label_count) {
      bad_model("weight row for '" + key + "' has the wrong arity");
    }
    out.emplace(id, value.get<std::vector<double>>());
  }
  return out;
}

TrainMeta meta_from_json(const json& object) {
  TrainMeta meta;
  if (!object.is_object()) return meta;
  meta.epochs = object.value("epochs", 0);
  meta.seed = object.value("seed", std::uint64_t{0});
  meta.learning_rate = object.value("learning_rate", 1.0);
  meta.corpus_fingerprint = object.value("corpus_fp", std::string());
  meta.train_subset = object.value("train_subset", std::string());
  return meta;
}

}  // namespace

std::string model_to_json(const LinearModel& model, ModelKind kind) {
  if (kind == ModelKind::kTagger) {
    throw Error(ErrorKind::kInvalidArgument,
                "a linear model cannot be saved as a tagger");
  }
  return base_json(kind, model.labels(), model.weights(), model.meta()).dump(2) +
         "\n";
}

std::string model_to_json(const ChainTaggerModel& model) {
  std::vector<std::string> labels;
  labels.reserve(static_cast<size_t>(model.label_count()));
  for (int i = 0; i < model.label_count(); ++i) {
    labels.push_back(label_name(model.scheme(), i));
  }
  json out = base_json(ModelKind::kTagger, labels, model.emission(), model.meta());
  out["scheme"] = scheme_name(model.scheme());
  out["transitions"] = json{{"start", model.start()},
                            {"stop", model.stop()},
                            {"matrix", model.transition()}};
  return out.dump(2) + "\n";
}

void save_model(const LinearModel& model, ModelKind kind, const std::string& path) {
  write_file(path, model_to_json(model, kind));
}

void save_model(const ChainTaggerModel& model, const std::string& path) {
  write_file(path, model_to_json(model));
}

LoadedModel parse_model_json(const std::string& text) {
  json root = json::parse(text, nullptr, false);
  if (root.is_discarded() || !root.is_object()) bad_model("not a JSON object");
  if (root.value("format", std::string()) != kFormatName) {
    bad_model("unexpected format field");
  }
  if (root.value("version", 0) != kFormatVersion) bad_model("unsupported version");

  const std::optional<ModelKind> kind =
      parse_model_kind(root.value("kind", std::string()));
  if (!kind) bad_model("unknown kind");
  if (!root.contains("labels") || !root["labels"].is_array()) {
    bad_model("missing labels");
  }
  const auto labels = root["labels"].get<std::vector<std::string>>();
  WeightTable weights = weights_from_json(root.value("weights", json::object()),
                                          labels.size());
  TrainMeta meta = meta_from_json(root.value("meta", json::object()));

  LoadedModel loaded;
  loaded.kind = *kind;
  if (*kind == ModelKind::kTagger) {
    const std::optional<TagScheme> scheme =
        parse_scheme(root.value("scheme", std::string()));
    if (!scheme) bad_model("tagger without a valid scheme");
    const size_t n = static_cast<size_t>(label_count(*scheme));
    if (labels.size() != n) bad_model("label set does not match the scheme");
    for (size_t i = 0; i < n; ++i) {
      if (labels[i] != label_name(*scheme, static_cast<int>(i))) {
        throw Error(ErrorKind::kUnknownLabel,
                    "model label '" + labels[i] + "' out of canonical order");
      }
    }
    if (!root.contains("transitions")) bad_model("tagger without transitions");
    const json& tr = root["transitions"];
    if (!tr.is_object() || !tr.contains("start") || !tr.contains("stop") ||
        !tr.contains("matrix")) {
      bad_model("incomplete transitions");
    }
    auto start = tr["start"].get<std::vector<double>>();
    auto stop = tr["stop"].get<std::vector<double>>();
    auto matrix = tr["matrix"].get<std::vector<std::vector<double>>>();
    loaded.tagger.emplace(*scheme, std::move(weights), std::move(matrix),
                          std::move(start), std::move(stop), std::move(meta));
  } else {
    // Validate the label inventory for the fixed-kind models.
    if (*kind == ModelKind::kGate) {
      if (labels != std::vector<std::string>{"0", "1"}) {
        throw Error(ErrorKind::kUnknownLabel, "gate labels must be [\"0\", \"1\"]");
      }
    } else {
      if (labels.size() != static_cast<size_t>(kEntityTypeCount)) {
        throw Error(ErrorKind::kUnknownLabel, "typer needs the 13 entity types");
      }
      for (size_t i = 0; i < labels.size(); ++i) {
        if (labels[i] != to_string(static_cast<EntityType>(i))) {
          throw Error(ErrorKind::kUnknownLabel,
                      "typer label '" + labels[i] + "' out of canonical order");
        }
      }
    }
    loaded.linear.emplace(labels, std::move(weights), std::move(meta));
  }
  return loaded;
}

LoadedModel load_model(const std::string& path) {
  return parse_model_json(read_file(path));
}

}  // namespace cascade_ner
