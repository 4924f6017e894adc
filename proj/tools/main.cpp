// cascade-ner command-line tool: corpus statistics, model training,
// pipeline prediction, exact-match evaluation, per-stage diagnostics and
// approach comparison over the CoNLL / JSONL formats.

#include <cstdlib>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cascade_ner/chain_tagger.hpp"
#include "cascade_ner/corpus.hpp"
#include "cascade_ner/error.hpp"
#include "cascade_ner/eval.hpp"
#include "cascade_ner/external.hpp"
#include "cascade_ner/hash.hpp"
#include "cascade_ner/model_io.hpp"
#include "cascade_ner/pipeline.hpp"
#include "cascade_ner/util.hpp"
#include "json.hpp"

namespace {

using namespace cascade_ner;
using nlohmann::json;

constexpr const char* kToolVersion = "0.1.0";

int env_thread_count() {
  const char* value = std::getenv("CASCADE_NER_THREADS");
  if (value == nullptr || *value == '\0') return 1;
  const long parsed = std::strtol(value, nullptr, 10);
  if (parsed < 0) return 1;
  return resolve_thread_count(static_cast<int>(parsed));
}

Corpus load_corpus(const std::string& path) {
  std::istringstream in(read_file(path));
  return parse_conll(static_cast<std::istream&>(in));
}

/// Every run that writes an output file also writes
/// `<output>.manifest.json`: command, flags, seed and input fingerprints.
/// Identical runs produce identical manifests.
void write_manifest(const std::string& output_path, const std::string& command,
                    const std::map<std::string, std::string>& flags,
                    const std::vector<std::string>& inputs, std::uint64_t seed) {
  json fingerprints = json::object();
  for (const std::string& input : inputs) {
    fingerprints[input] = "fnv1a64:" + to_hex(fnv1a64(read_file(input)));
  }
  json manifest{{"tool", "cascade-ner"},
                {"version", kToolVersion},
                {"command", command},
                {"flags", flags},
                {"seed", seed},
                {"inputs", fingerprints},
                {"output", output_path}};
  write_file(output_path + ".manifest.json", manifest.dump(2) + "\n");
}

struct StatsArgs {
  std::string input;
  std::string format = "table";
};

int cmd_stats(const StatsArgs& args) {
  const StatsReport stats = corpus_stats(load_corpus(args.input));
  std::cout << (args.format == "json" ? stats_to_json(stats)
                                      : stats_to_table(stats));
  return 0;
}

struct TrainArgs {
  std::string task;
  std::string input;
  std::string out;
  std::string scheme;
  std::string subset;
  int epochs = 10;
  std::uint64_t seed = 42;
  double learning_rate = 1.0;
};

int cmd_train(const TrainArgs& args) {
  if (args.task != "gate" && args.task != "tagger" && args.task != "typer" &&
      args.task != "flat") {
    throw Error(ErrorKind::kInvalidArgument,
                "task must be gate, tagger, typer or flat");
  }
  const bool is_tagger_task = args.task == "tagger" || args.task == "flat";
  if (!args.scheme.empty() && !is_tagger_task) {
    throw Error(ErrorKind::kInvalidArgument,
                "--scheme only applies to tagger/flat training");
  }
  if (!args.subset.empty() && !is_tagger_task) {
    throw Error(ErrorKind::kInvalidArgument,
                "--train-subset only applies to tagger/flat training");
  }

  const Corpus corpus = load_corpus(args.input);
  std::map<std::string, std::string> flags{
      {"task", args.task},
      {"input", args.input},
      {"out", args.out},
      {"epochs", std::to_string(args.epochs)},
      {"seed", std::to_string(args.seed)},
      {"learning_rate", std::to_string(args.learning_rate)}};

  if (args.task == "gate" || args.task == "typer") {
    TrainOptions options{args.epochs, args.seed, args.learning_rate};
    const LinearModel model = args.task == "gate"
                                  ? train_gate(corpus, options)
                                  : train_span_classifier(corpus, options);
    save_model(model, args.task == "gate" ? ModelKind::kGate : ModelKind::kTyper,
               args.out);
  } else {
    TagScheme scheme =
        args.task == "flat" ? TagScheme::kFull27 : TagScheme::kUntyped3;
    if (!args.scheme.empty()) {
      const std::optional<TagScheme> parsed = parse_scheme(args.scheme);
      if (!parsed) {
        throw Error(ErrorKind::kInvalidArgument,
                    "--scheme must be full27 or untyped3");
      }
      if (args.task == "flat" && *parsed != TagScheme::kFull27) {
        throw Error(ErrorKind::kInvalidArgument,
                    "task flat forces --scheme full27");
      }
      scheme = *parsed;
    }
    // The gate filters at inference, so the cascade tagger defaults to the
    // entity-containing subset; the flat tagger sees every sentence.
    TrainSubset subset =
        args.task == "flat" ? TrainSubset::kAll : TrainSubset::kGated;
    if (!args.subset.empty()) {
      if (args.subset == "gated") subset = TrainSubset::kGated;
      else if (args.subset == "all") subset = TrainSubset::kAll;
      else throw Error(ErrorKind::kInvalidArgument,
                       "--train-subset must be gated or all");
    }
    TaggerTrainOptions options{args.epochs, args.seed, args.learning_rate, subset};
    save_model(train_tagger(corpus, scheme, options), args.out);
    flags["scheme"] = scheme_name(scheme);
    flags["train_subset"] = to_string(subset);
  }

  write_manifest(args.out, "train", flags, {args.input}, args.seed);
  std::cout << "trained " << args.task << " model -> " << args.out
            << " (seed " << args.seed << ")\n";
  return 0;
}

struct PredictArgs {
  std::string input;
  std::string out;
  int approach = 0;
  std::string tagger_path;
  std::string typer_path;
  std::string gate_path;
  std::string external_path;
  bool trace = false;
};

/// Owns the components referenced by a PipelineSpec.
struct PipelineBundle {
  std::vector<std::unique_ptr<Gate>> gates;
  std::vector<std::unique_ptr<Tagger>> taggers;
  std::vector<std::unique_ptr<Typer>> typers;
  std::unique_ptr<ExternalPredictions> external;
  PipelineSpec spec;
};

PipelineBundle build_pipeline(int approach, const std::string& gate_path,
                              const std::string& tagger_path,
                              const std::string& typer_path,
                              const std::string& external_path,
                              const Corpus& corpus) {
  PipelineBundle bundle;
  bundle.spec.approach = approach;
  if (!external_path.empty()) {
    bundle.external = std::make_unique<ExternalPredictions>(
        ExternalPredictions::load_jsonl(external_path));
    bundle.external->validate_against(corpus);
  }

  const TagScheme tagger_scheme =
      approach == 1 ? TagScheme::kFull27 : TagScheme::kUntyped3;

  const bool external_tags = bundle.external && bundle.external->has_tags();
  if (!tagger_path.empty() && external_tags) {
    throw Error(ErrorKind::kInvalidSpec,
                "both --tagger and external tags supplied");
  }
  if (!tagger_path.empty()) {
    LoadedModel loaded = load_model(tagger_path);
    if (loaded.kind != ModelKind::kTagger) {
      throw Error(ErrorKind::kInvalidSpec,
                  "'" + tagger_path + "' is not a tagger model");
    }
    bundle.taggers.push_back(
        std::make_unique<NativeTagger>(std::move(*loaded.tagger)));
  } else if (external_tags) {
    bundle.taggers.push_back(std::make_unique<ExternalTagger>(
        bundle.external.get(), tagger_scheme));
  }
  if (!bundle.taggers.empty()) bundle.spec.tagger = bundle.taggers.back().get();

  if (approach >= 2) {
    const bool external_types = bundle.external && bundle.external->has_span_types();
    if (!typer_path.empty() && external_types) {
      throw Error(ErrorKind::kInvalidSpec,
                  "both --typer and external span types supplied");
    }
    if (!typer_path.empty()) {
      LoadedModel loaded = load_model(typer_path);
      if (loaded.kind != ModelKind::kTyper) {
        throw Error(ErrorKind::kInvalidSpec,
                    "'" + typer_path + "' is not a typer model");
      }
      bundle.typers.push_back(
          std::make_unique<NativeTyper>(std::move(*loaded.linear)));
    } else if (external_types) {
      bundle.typers.push_back(
          std::make_unique<ExternalTyper>(bundle.external.get()));
    }
    if (!bundle.typers.empty()) bundle.spec.typer = bundle.typers.back().get();
  }

  if (approach == 3) {
    const bool external_gate = bundle.external && bundle.external->has_gate();
    if (!gate_path.empty() && external_gate) {
      throw Error(ErrorKind::kInvalidSpec,
                  "both --gate and external gate decisions supplied");
    }
    if (!gate_path.empty()) {
      LoadedModel loaded = load_model(gate_path);
      if (loaded.kind != ModelKind::kGate) {
        throw Error(ErrorKind::kInvalidSpec,
                    "'" + gate_path + "' is not a gate model");
      }
      bundle.gates.push_back(
          std::make_unique<NativeGate>(std::move(*loaded.linear)));
    } else if (external_gate) {
      bundle.gates.push_back(std::make_unique<ExternalGate>(bundle.external.get()));
    }
    if (!bundle.gates.empty()) bundle.spec.gate = bundle.gates.back().get();
  }

  bundle.spec.validate();
  return bundle;
}

int cmd_predict(const PredictArgs& args) {
  const Corpus corpus = load_corpus(args.input);
  PipelineBundle bundle =
      build_pipeline(args.approach, args.gate_path, args.tagger_path,
                     args.typer_path, args.external_path, corpus);
  const std::vector<SentencePrediction> predictions =
      predict_corpus(bundle.spec, corpus, env_thread_count());
  write_file(args.out, predictions_to_jsonl(predictions, args.trace));

  std::map<std::string, std::string> flags{
      {"input", args.input},
      {"out", args.out},
      {"approach", std::to_string(args.approach)},
      {"trace", args.trace ? "1" : "0"}};
  std::vector<std::string> inputs{args.input};
  for (const std::string& path :
       {args.tagger_path, args.typer_path, args.gate_path, args.external_path}) {
    if (!path.empty()) inputs.push_back(path);
  }
  if (!args.tagger_path.empty()) flags["tagger"] = args.tagger_path;
  if (!args.typer_path.empty()) flags["typer"] = args.typer_path;
  if (!args.gate_path.empty()) flags["gate"] = args.gate_path;
  if (!args.external_path.empty()) flags["external"] = args.external_path;
  write_manifest(args.out, "predict", flags, inputs, 0);
  std::cout << "wrote " << predictions.size() << " predictions -> " << args.out
            << "\n";
  return 0;
}

struct EvaluateArgs {
  std::string gold;
  std::string pred;
  std::string report;
  std::string format = "table";
};

int cmd_evaluate(const EvaluateArgs& args) {
  const Corpus gold = load_corpus(args.gold);
  const std::vector<SentencePrediction> predictions =
      parse_predictions_jsonl(args.pred);
  const EvalReport report = evaluate(gold, predictions);
  const std::string rendered =
      args.format == "json" ? report_to_json(report) : report_to_table(report);
  std::cout << rendered;
  if (!args.report.empty()) {
    write_file(args.report, report_to_json(report));
    write_manifest(args.report, "evaluate",
                   {{"gold", args.gold}, {"pred", args.pred}},
                   {args.gold, args.pred}, 0);
  }
  return 0;
}

struct DiagnoseArgs {
  int stage = 0;
  std::string gold;
  std::string model_path;
  std::string external_path;
  std::string report;
  std::string format = "table";
};

int cmd_diagnose(const DiagnoseArgs& args) {
  if ((args.model_path.empty()) == (args.external_path.empty())) {
    throw Error(ErrorKind::kInvalidSpec,
                "exactly one of --model / --external is required");
  }
  const Corpus gold = load_corpus(args.gold);

  std::unique_ptr<ExternalPredictions> external;
  if (!args.external_path.empty()) {
    external = std::make_unique<ExternalPredictions>(
        ExternalPredictions::load_jsonl(args.external_path));
    external->validate_against(gold);
  }

  EvalReport report;
  if (args.stage == 1) {
    std::unique_ptr<Gate> gate;
    if (external) {
      gate = std::make_unique<ExternalGate>(external.get());
    } else {
      LoadedModel loaded = load_model(args.model_path);
      if (loaded.kind != ModelKind::kGate) {
        throw Error(ErrorKind::kInvalidSpec, "stage 1 needs a gate model");
      }
      gate = std::make_unique<NativeGate>(std::move(*loaded.linear));
    }
    report = diagnose_stage1(*gate, gold);
  } else if (args.stage == 2) {
    std::unique_ptr<Tagger> tagger;
    if (external) {
      // Accept either scheme: stage-2 scoring is boundary-only.
      TagScheme scheme = TagScheme::kUntyped3;
      for (const LabeledSentence& labeled : gold.sentences) {
        const ExternalRecord* record = external->find(labeled.sentence.id());
        if (record != nullptr && record->tags) {
          for (const std::string& tag : *record->tags) {
            if (!label_id(TagScheme::kUntyped3, tag)) scheme = TagScheme::kFull27;
          }
        }
      }
      tagger = std::make_unique<ExternalTagger>(external.get(), scheme);
    } else {
      LoadedModel loaded = load_model(args.model_path);
      if (loaded.kind != ModelKind::kTagger) {
        throw Error(ErrorKind::kInvalidSpec, "stage 2 needs a tagger model");
      }
      tagger = std::make_unique<NativeTagger>(std::move(*loaded.tagger));
    }
    report = diagnose_stage2(*tagger, gold);
  } else if (args.stage == 3) {
    std::unique_ptr<Typer> typer;
    if (external) {
      typer = std::make_unique<ExternalTyper>(external.get());
    } else {
      LoadedModel loaded = load_model(args.model_path);
      if (loaded.kind != ModelKind::kTyper) {
        throw Error(ErrorKind::kInvalidSpec, "stage 3 needs a typer model");
      }
      typer = std::make_unique<NativeTyper>(std::move(*loaded.linear));
    }
    report = diagnose_stage3(*typer, gold);
  } else {
    throw Error(ErrorKind::kInvalidArgument, "--stage must be 1, 2 or 3");
  }

  std::cout << (args.format == "json" ? report_to_json(report)
                                      : report_to_table(report));
  if (!args.report.empty()) {
    write_file(args.report, report_to_json(report));
    std::vector<std::string> inputs{args.gold};
    if (!args.model_path.empty()) inputs.push_back(args.model_path);
    if (!args.external_path.empty()) inputs.push_back(args.external_path);
    write_manifest(args.report, "diagnose",
                   {{"stage", std::to_string(args.stage)}, {"gold", args.gold}},
                   inputs, 0);
  }
  return 0;
}

struct CompareArgs {
  std::string config;
  std::string gold;
  std::string report;
  std::string format = "table";
};

int cmd_compare(const CompareArgs& args) {
  const Corpus gold = load_corpus(args.gold);
  json config = json::parse(read_file(args.config), nullptr, false);
  if (config.is_discarded() || !config.is_object() ||
      !config.contains("specs") || !config["specs"].is_array()) {
    throw Error(ErrorKind::kInvalidSpec,
                "compare config needs a top-level 'specs' array");
  }

  std::vector<PipelineBundle> bundles;
  std::vector<NamedPipelineSpec> specs;
  for (const json& entry : config["specs"]) {
    if (!entry.is_object() || !entry.contains("name") ||
        !entry.contains("approach")) {
      throw Error(ErrorKind::kInvalidSpec,
                  "each spec needs 'name' and 'approach'");
    }
    bundles.push_back(build_pipeline(
        entry["approach"].get<int>(), entry.value("gate", std::string()),
        entry.value("tagger", std::string()), entry.value("typer", std::string()),
        entry.value("external", std::string()), gold));
    specs.push_back({entry["name"].get<std::string>(), bundles.back().spec});
  }

  const std::vector<ComparisonRow> rows =
      compare_approaches(specs, gold, env_thread_count());
  std::cout << (args.format == "json" ? comparison_to_json(rows)
                                      : comparison_to_table(rows));
  if (!args.report.empty()) {
    write_file(args.report, comparison_to_json(rows));
    write_manifest(args.report, "compare",
                   {{"config", args.config}, {"gold", args.gold}},
                   {args.config, args.gold}, 0);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cascade-ner: cascade pipelines for software mention recognition"};
  app.require_subcommand(1);

  StatsArgs stats;
  CLI::App* stats_cmd = app.add_subcommand("stats", "Corpus statistics");
  stats_cmd->add_option("input", stats.input, "CoNLL corpus")->required();
  stats_cmd->add_option("--format", stats.format, "table|json")
      ->check(CLI::IsMember({"table", "json"}));

  TrainArgs train;
  CLI::App* train_cmd = app.add_subcommand("train", "Train a native model");
  train_cmd->add_option("task", train.task, "gate|tagger|typer|flat")->required();
  train_cmd->add_option("input", train.input, "labeled CoNLL corpus")->required();
  train_cmd->add_option("--out", train.out, "model file")->required();
  train_cmd->add_option("--scheme", train.scheme, "full27|untyped3");
  train_cmd->add_option("--epochs", train.epochs, "training epochs");
  train_cmd->add_option("--seed", train.seed, "shuffle seed");
  train_cmd->add_option("--learning-rate", train.learning_rate, "update step");
  train_cmd->add_option("--train-subset", train.subset, "gated|all");

  PredictArgs predict;
  CLI::App* predict_cmd = app.add_subcommand("predict", "Run a pipeline");
  predict_cmd->add_option("input", predict.input, "CoNLL corpus")->required();
  predict_cmd->add_option("--approach", predict.approach, "1|2|3")->required();
  predict_cmd->add_option("--out", predict.out, "predictions JSONL")->required();
  predict_cmd->add_option("--tagger", predict.tagger_path, "tagger model");
  predict_cmd->add_option("--typer", predict.typer_path, "typer model");
  predict_cmd->add_option("--gate", predict.gate_path, "gate model");
  predict_cmd->add_option("--external", predict.external_path,
                          "external predictions JSONL");
  predict_cmd->add_flag("--trace", predict.trace, "include stage traces");

  EvaluateArgs evaluate_args;
  CLI::App* evaluate_cmd =
      app.add_subcommand("evaluate", "Exact-match span evaluation");
  evaluate_cmd->add_option("--gold", evaluate_args.gold, "gold CoNLL")->required();
  evaluate_cmd->add_option("--pred", evaluate_args.pred, "predictions JSONL")
      ->required();
  evaluate_cmd->add_option("--report", evaluate_args.report, "JSON report file");
  evaluate_cmd->add_option("--format", evaluate_args.format, "table|json")
      ->check(CLI::IsMember({"table", "json"}));

  DiagnoseArgs diagnose;
  CLI::App* diagnose_cmd =
      app.add_subcommand("diagnose", "Stage-isolated diagnostics");
  diagnose_cmd->add_option("--stage", diagnose.stage, "1|2|3")->required();
  diagnose_cmd->add_option("--gold", diagnose.gold, "gold CoNLL")->required();
  diagnose_cmd->add_option("--model", diagnose.model_path, "native model file");
  diagnose_cmd->add_option("--external", diagnose.external_path,
                           "external predictions JSONL");
  diagnose_cmd->add_option("--report", diagnose.report, "JSON report file");
  diagnose_cmd->add_option("--format", diagnose.format, "table|json")
      ->check(CLI::IsMember({"table", "json"}));

  CompareArgs compare;
  CLI::App* compare_cmd =
      app.add_subcommand("compare", "Evaluate several pipeline specs");
  compare_cmd->add_option("--config", compare.config, "spec list JSON")->required();
  compare_cmd->add_option("--gold", compare.gold, "gold CoNLL")->required();
  compare_cmd->add_option("--report", compare.report, "JSON report file");
  compare_cmd->add_option("--format", compare.format, "table|json")
      ->check(CLI::IsMember({"table", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 3;
  }

  try {
    if (stats_cmd->parsed()) return cmd_stats(stats);
    if (train_cmd->parsed()) return cmd_train(train);
    if (predict_cmd->parsed()) return cmd_predict(predict);
    if (evaluate_cmd->parsed()) return cmd_evaluate(evaluate_args);
    if (diagnose_cmd->parsed()) return cmd_diagnose(diagnose);
    if (compare_cmd->parsed()) return cmd_compare(compare);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.is_config_error() ? 3 : 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
