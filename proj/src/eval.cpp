#include "cascade_ner/eval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>

#include "cascade_ner/error.hpp"
#include "json.hpp"

namespace cascade_ner {

using nlohmann::json;

std::vector<std::pair<int, int>> match_exact(std::span<const Span> gold,
                                             std::span<const Span> pred) {
  std::vector<std::pair<int, int>> matches;
  std::vector<bool> used(pred.size(), false);
  for (int g = 0; g < static_cast<int>(gold.size()); ++g) {
    for (int p = 0; p < static_cast<int>(pred.size()); ++p) {
      if (!used[p] && gold[g] == pred[p]) {
        used[p] = true;
        matches.emplace_back(g, p);
        break;
      }
    }
  }
  return matches;
}

namespace {

struct Counts {
  int64_t tp = 0;
  int64_t fp = 0;
  int64_t fn = 0;
};

double ratio(int64_t numerator, int64_t denominator) {
  return denominator == 0 ? 0.0
                          : static_cast<double>(numerator) /
                                static_cast<double>(denominator);
}

double f1_of(double precision, double recall) {
  return precision + recall == 0.0
             ? 0.0
             : 2.0 * precision * recall / (precision + recall);
}

/// Builds the report from ordered per-class counts. Weighted and macro
/// averages run over classes with positive support; micro over the sums.
EvalReport finalize(const std::vector<std::pair<std::string, Counts>>& counts) {
  EvalReport report;
  int64_t tp_sum = 0, fp_sum = 0, fn_sum = 0, support_sum = 0;
  double weighted_p = 0.0, weighted_r = 0.0, weighted_f = 0.0;
  double macro_p = 0.0, macro_r = 0.0, macro_f = 0.0;
  int64_t supported_classes = 0;

  for (const auto& [label, c] : counts) {
    ClassMetrics metrics;
    metrics.label = label;
    metrics.tp = c.tp;
    metrics.fp = c.fp;
    metrics.fn = c.fn;
    metrics.support = c.tp + c.fn;
    metrics.precision = ratio(c.tp, c.tp + c.fp);
    metrics.recall = ratio(c.tp, c.tp + c.fn);
    metrics.f1 = f1_of(metrics.precision, metrics.recall);
    report.per_class.push_back(metrics);

    tp_sum += c.tp;
    fp_sum += c.fp;
    fn_sum += c.fn;
    if (metrics.support > 0) {
      support_sum += metrics.support;
      weighted_p += static_cast<double>(metrics.support) * metrics.precision;
      weighted_r += static_cast<double>(metrics.support) * metrics.recall;
      weighted_f += static_cast<double>(metrics.support) * metrics.f1;
      macro_p += metrics.precision;
      macro_r += metrics.recall;
      macro_f += metrics.f1;
      ++supported_classes;
    }
  }

  if (support_sum > 0) {
    report.weighted.precision = weighted_p / static_cast<double>(support_sum);
    report.weighted.recall = weighted_r / static_cast<double>(support_sum);
    report.weighted.f1 = weighted_f / static_cast<double>(support_sum);
  }
  if (supported_classes > 0) {
    report.macro_avg.precision = macro_p / static_cast<double>(supported_classes);
    report.macro_avg.recall = macro_r / static_cast<double>(supported_classes);
    report.macro_avg.f1 = macro_f / static_cast<double>(supported_classes);
  }
  report.micro.precision = ratio(tp_sum, tp_sum + fp_sum);
  report.micro.recall = ratio(tp_sum, tp_sum + fn_sum);
  report.micro.f1 = f1_of(report.micro.precision, report.micro.recall);
  report.gold_total = tp_sum + fn_sum;
  report.predicted_total = tp_sum + fp_sum;
  report.matched_total = tp_sum;
  return report;
}

}  // namespace

EvalReport evaluate(const Corpus& gold,
                    std::span<const SentencePrediction> predictions) {
  std::map<std::string, const LabeledSentence*> by_id;
  for (const LabeledSentence& labeled : gold.sentences) {
    if (!by_id.emplace(labeled.sentence.id(), &labeled).second) {
      throw Error(ErrorKind::kInvalidCorpus,
                  "gold corpus repeats sentence id '" + labeled.sentence.id() +
                      "'");
    }
  }

  std::map<std::string, Counts> per_type;
  std::set<std::string> seen;
  for (const SentencePrediction& prediction : predictions) {
    auto it = by_id.find(prediction.sentence_id);
    if (it == by_id.end()) {
      throw Error(ErrorKind::kUnknownSentenceId,
                  "prediction for unknown sentence '" + prediction.sentence_id +
                      "'");
    }
    if (!seen.insert(prediction.sentence_id).second) {
      throw Error(ErrorKind::kDuplicatePrediction,
                  "two predictions for sentence '" + prediction.sentence_id + "'");
    }
    const LabeledSentence& labeled = *it->second;
    for (const Span& span : prediction.spans) {
      if (span.end > labeled.sentence.size()) {
        throw Error(ErrorKind::kSpanOutOfRange,
                    "predicted span [" + std::to_string(span.start) + ", " +
                        std::to_string(span.end) + ") exceeds sentence '" +
                        prediction.sentence_id + "'");
      }
      if (!span.type) {
        throw Error(ErrorKind::kMissingTypeForFullScheme,
                    "untyped predicted span in sentence '" +
                        prediction.sentence_id + "'");
      }
    }

    const std::vector<Span> gold_spans = decode_bio(labeled.tags);
    const auto matches = match_exact(gold_spans, prediction.spans);
    std::vector<bool> gold_matched(gold_spans.size(), false);
    std::vector<bool> pred_matched(prediction.spans.size(), false);
    for (const auto& [g, p] : matches) {
      gold_matched[g] = true;
      pred_matched[p] = true;
      ++per_type[to_string(*gold_spans[g].type)].tp;
    }
    for (size_t g = 0; g < gold_spans.size(); ++g) {
      if (!gold_matched[g]) ++per_type[to_string(*gold_spans[g].type)].fn;
    }
    for (size_t p = 0; p < prediction.spans.size(); ++p) {
      if (!pred_matched[p]) ++per_type[to_string(*prediction.spans[p].type)].fp;
    }
  }

  if (seen.size() != by_id.size()) {
    for (const auto& kv : by_id) {
      if (seen.count(kv.first) == 0) {
        throw Error(ErrorKind::kMissingPrediction,
                    "no prediction for sentence '" + kv.first + "'");
      }
    }
  }

  std::vector<std::pair<std::string, Counts>> ordered;
  ordered.reserve(kEntityTypeCount);
  for (EntityType type : all_entity_types()) {
    const std::string& name = to_string(type);
    auto it = per_type.find(name);
    ordered.emplace_back(name, it == per_type.end() ? Counts{} : it->second);
  }
  return finalize(ordered);
}

EvalReport diagnose_stage1(const Gate& gate, const Corpus& corpus) {
  Counts counts[2];
  for (const LabeledSentence& labeled : corpus.sentences) {
    const int truth = sentence_entity_label(labeled.tags);
    const int decision = gate.predict(labeled.sentence);
    if (decision == truth) {
      ++counts[truth].tp;
    } else {
      ++counts[decision].fp;
      ++counts[truth].fn;
    }
  }
  return finalize({{"0", counts[0]}, {"1", counts[1]}});
}

EvalReport diagnose_stage2(const Tagger& tagger, const Corpus& corpus) {
  Counts counts;
  for (const LabeledSentence& labeled : corpus.sentences) {
    const std::vector<Span> gold = erase_types(decode_bio(labeled.tags));
    if (gold.empty()) continue;  // perfect upstream gate
    const std::vector<Span> pred =
        erase_types(decode_bio(tagger.predict(labeled.sentence)));
    const int64_t matched =
        static_cast<int64_t>(match_exact(gold, pred).size());
    counts.tp += matched;
    counts.fn += static_cast<int64_t>(gold.size()) - matched;
    counts.fp += static_cast<int64_t>(pred.size()) - matched;
  }
  return finalize({{"span", counts}});
}

EvalReport diagnose_stage3(const Typer& typer, const Corpus& corpus) {
  std::map<std::string, Counts> per_type;
  int64_t total_spans = 0;
  for (const LabeledSentence& labeled : corpus.sentences) {
    for (const Span& gold_span : decode_bio(labeled.tags)) {
      ++total_spans;
      const Span untyped(gold_span.start, gold_span.end);
      const EntityType predicted =
          typer.predict(labeled.sentence, untyped,
                        make_span_query(labeled.sentence, untyped));
      const EntityType truth = *gold_span.type;
      if (predicted == truth) {
        ++per_type[to_string(truth)].tp;
      } else {
        ++per_type[to_string(predicted)].fp;
        ++per_type[to_string(truth)].fn;
      }
    }
  }
  if (total_spans == 0) {
    throw Error(ErrorKind::kNoSpansInCorpus,
                "stage-3 diagnosis needs at least one gold span");
  }
  std::vector<std::pair<std::string, Counts>> ordered;
  for (EntityType type : all_entity_types()) {
    const std::string& name = to_string(type);
    auto it = per_type.find(name);
    ordered.emplace_back(name, it == per_type.end() ? Counts{} : it->second);
  }
  return finalize(ordered);
}

std::vector<ComparisonRow> compare_approaches(
    std::span<const NamedPipelineSpec> specs, const Corpus& gold, int threads) {
  std::vector<ComparisonRow> rows;
  rows.reserve(specs.size());
  for (const NamedPipelineSpec& named : specs) {
    const std::vector<SentencePrediction> predictions =
        predict_corpus(named.spec, gold, threads);
    rows.push_back(
        {named.name, named.spec.approach, evaluate(gold, predictions)});
  }
  return rows;
}

double round_half_up(double value, int decimals) {
  double scale = 1.0;
  for (int i = 0; i < decimals; ++i) scale *= 10.0;
  return static_cast<double>(std::llround(value * scale)) / scale;
}

namespace {

json aggregate_to_json(const Aggregate& aggregate) {
  return json{{"precision", round_half_up(aggregate.precision, 3)},
              {"recall", round_half_up(aggregate.recall, 3)},
              {"f1", round_half_up(aggregate.f1, 3)}};
}

json report_json(const EvalReport& report) {
  json per_class = json::array();
  for (const ClassMetrics& metrics : report.per_class) {
    per_class.push_back(json{{"type", metrics.label},
                             {"tp", metrics.tp},
                             {"fp", metrics.fp},
                             {"fn", metrics.fn},
                             {"precision", round_half_up(metrics.precision, 3)},
                             {"recall", round_half_up(metrics.recall, 3)},
                             {"f1", round_half_up(metrics.f1, 3)},
                             {"support", metrics.support}});
  }
  return json{{"per_class", per_class},
              {"weighted", aggregate_to_json(report.weighted)},
              {"macro", aggregate_to_json(report.macro_avg)},
              {"micro", aggregate_to_json(report.micro)},
              {"totals", json{{"gold", report.gold_total},
                              {"predicted", report.predicted_total},
                              {"matched", report.matched_total}}}};
}

void append_metric_row(std::ostringstream& out, const std::string& label,
                       double precision, double recall, double f1,
                       const std::string& support) {
  char row[160];
  std::snprintf(row, sizeof(row), "%-34s %9.3f %9.3f %9.3f %9s\n", label.c_str(),
                round_half_up(precision, 3), round_half_up(recall, 3),
                round_half_up(f1, 3), support.c_str());
  out << row;
}

}  // namespace

std::string report_to_json(const EvalReport& report) {
  return report_json(report).dump(2) + "\n";
}

std::string report_to_table(const EvalReport& report) {
  std::ostringstream out;
  char header[160];
  std::snprintf(header, sizeof(header), "%-34s %9s %9s %9s %9s\n", "Class",
                "Precision", "Recall", "F1-score", "Support");
  out << header;
  for (const ClassMetrics& metrics : report.per_class) {
    append_metric_row(out, metrics.label, metrics.precision, metrics.recall,
                      metrics.f1, std::to_string(metrics.support));
  }
  append_metric_row(out, "weighted", report.weighted.precision,
                    report.weighted.recall, report.weighted.f1,
                    std::to_string(report.gold_total));
  append_metric_row(out, "macro", report.macro_avg.precision,
                    report.macro_avg.recall, report.macro_avg.f1, "");
  append_metric_row(out, "micro", report.micro.precision, report.micro.recall,
                    report.micro.f1, "");
  return out.str();
}

std::string comparison_to_json(const std::vector<ComparisonRow>& rows) {
  json out = json::array();
  for (const ComparisonRow& row : rows) {
    out.push_back(json{{"name", row.name},
                       {"approach", row.approach},
                       {"report", report_json(row.report)}});
  }
  return json{{"rows", out}}.dump(2) + "\n";
}

std::string comparison_to_table(const std::vector<ComparisonRow>& rows) {
  std::ostringstream out;
  char header[160];
  std::snprintf(header, sizeof(header), "%-24s %8s %9s %9s %9s\n", "Name",
                "Approach", "Precision", "Recall", "F1-score");
  out << header;
  for (const ComparisonRow& row : rows) {
    char line[160];
    std::snprintf(line, sizeof(line), "%-24s %8d %9.3f %9.3f %9.3f\n",
                  row.name.c_str(), row.approach,
                  round_half_up(row.report.weighted.precision, 3),
                  round_half_up(row.report.weighted.recall, 3),
                  round_half_up(row.report.weighted.f1, 3));
    out << line;
  }
  return out.str();
}

}  // namespace cascade_ner
