#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cascade_ner/corpus.hpp"
#include "cascade_ner/pipeline.hpp"

namespace cascade_ner {

/// Exact-match counts and metrics for one class. 0/0 ratios are defined as 0.
struct ClassMetrics {
  std::string label;
  int64_t tp = 0;
  int64_t fp = 0;
  int64_t fn = 0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  int64_t support = 0;  // tp + fn
};

struct Aggregate {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

struct EvalReport {
  std::vector<ClassMetrics> per_class;
  Aggregate weighted;   // support-weighted over classes with support > 0
  Aggregate macro_avg;  // unweighted over classes with support > 0
  Aggregate micro;      // from summed counts
  int64_t gold_total = 0;
  int64_t predicted_total = 0;
  int64_t matched_total = 0;
};

/// Pairs of (gold index, pred index) whose spans agree on start, end and
/// type. Exact equality over disjoint span sets makes the matching unique.
std::vector<std::pair<int, int>> match_exact(std::span<const Span> gold,
                                             std::span<const Span> pred);

/// Span-level exact-match evaluation with per-class (13 types) and
/// support-weighted metrics. Every gold sentence needs exactly one
/// prediction. Throws kMissingPrediction, kDuplicatePrediction,
/// kUnknownSentenceId, kSpanOutOfRange.
EvalReport evaluate(const Corpus& gold,
                    std::span<const SentencePrediction> predictions);

/// Stage 1 in isolation: gate output vs sentence_entity_label, per-class
/// ("0"/"1") and weighted metrics.
EvalReport diagnose_stage1(const Gate& gate, const Corpus& corpus);

/// Stage 2 with a perfect upstream gate: untyped exact-match span metrics
/// restricted to gold entity-containing sentences (class "span").
EvalReport diagnose_stage2(const Tagger& tagger, const Corpus& corpus);

/// Stage 3 with perfect upstream extraction: the typer applied to gold
/// boundaries, 13-class metrics. Throws kNoSpansInCorpus.
EvalReport diagnose_stage3(const Typer& typer, const Corpus& corpus);

struct NamedPipelineSpec {
  std::string name;
  PipelineSpec spec;
};

struct ComparisonRow {
  std::string name;
  int approach = 0;
  EvalReport report;
};

std::vector<ComparisonRow> compare_approaches(
    std::span<const NamedPipelineSpec> specs, const Corpus& gold,
    int threads = 1);

/// Presentation rounding, half-up. Metrics keep full precision until here.
double round_half_up(double value, int decimals);

std::string report_to_json(const EvalReport& report);
std::string report_to_table(const EvalReport& report);
std::string comparison_to_json(const std::vector<ComparisonRow>& rows);
std::string comparison_to_table(const std::vector<ComparisonRow>& rows);

}  // namespace cascade_ner
