#include "cascade_ner/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <sstream>

#include "cascade_ner/error.hpp"
#include "cascade_ner/span.hpp"
#include "json.hpp"

namespace cascade_ner {

Sentence::Sentence(std::string id, std::vector<std::string> token_texts)
    : id_(std::move(id)) {
  if (token_texts.empty()) {
    throw Error(ErrorKind::kInvalidArgument, "sentence '" + id_ + "' has no tokens");
  }
  tokens_.reserve(token_texts.size());
  for (size_t i = 0; i < token_texts.size(); ++i) {
    std::string& text = token_texts[i];
    if (text.empty()) {
      throw Error(ErrorKind::kInvalidArgument,
                  "empty token at index " + std::to_string(i) + " in sentence '" +
                      id_ + "'");
    }
    if (text.find('\t') != std::string::npos ||
        text.find('\n') != std::string::npos) {
      throw Error(ErrorKind::kInvalidArgument,
                  "token at index " + std::to_string(i) + " in sentence '" + id_ +
                      "' contains tab or newline");
    }
    tokens_.push_back(Token{std::move(text), static_cast<int>(i)});
  }
}

std::string Sentence::joined_text() const {
  std::string out;
  for (size_t i = 0; i < tokens_.size(); ++i) {
    if (i > 0) out += ' ';
    out += tokens_[i].text;
  }
  return out;
}

LabeledSentence::LabeledSentence(Sentence sentence, TagSequence tags)
    : sentence(std::move(sentence)), tags(std::move(tags)) {
  if (this->tags.scheme != TagScheme::kFull27) {
    throw Error(ErrorKind::kSchemeMismatch, "gold tags must use the full27 scheme");
  }
  if (this->tags.size() != this->sentence.size()) {
    throw Error(ErrorKind::kLengthMismatch,
                "sentence '" + this->sentence.id() + "' has " +
                    std::to_string(this->sentence.size()) + " tokens but " +
                    std::to_string(this->tags.size()) + " tags");
  }
}

namespace {

[[noreturn]] void malformed(size_t line_number, const std::string& what) {
  throw Error(ErrorKind::kMalformedLine,
              what + " at line " + std::to_string(line_number));
}

}  // namespace

Corpus parse_conll(std::istream& in) {
  Corpus corpus;
  std::vector<std::string> tokens;
  std::vector<int> labels;
  size_t line_number = 0;

  auto flush = [&] {
    if (tokens.empty()) return;
    Sentence sentence("s" + std::to_string(corpus.sentences.size()),
                      std::move(tokens));
    corpus.sentences.emplace_back(std::move(sentence),
                                  TagSequence(TagScheme::kFull27, std::move(labels)));
    tokens = {};
    labels = {};
  };

  std::string line;
  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') {
      malformed(line_number, "CRLF line ending (the format uses LF)");
    }
    if (line.empty()) {
      if (tokens.empty()) malformed(line_number, "empty sentence block");
      flush();
      continue;
    }
    const size_t tab = line.find('\t');
    if (tab == std::string::npos) malformed(line_number, "missing tab separator");
    if (line.find('\t', tab + 1) != std::string::npos) {
      malformed(line_number, "more than one tab");
    }
    if (tab == 0) malformed(line_number, "empty token");
    std::string token = line.substr(0, tab);
    std::string label = line.substr(tab + 1);
    std::optional<int> id = label_id(TagScheme::kFull27, label);
    if (!id) {
      throw Error(ErrorKind::kUnknownLabel, "'" + label + "' at line " +
                                                std::to_string(line_number));
    }
    tokens.push_back(std::move(token));
    labels.push_back(*id);
  }
  flush();

  if (corpus.sentences.empty()) {
    throw Error(ErrorKind::kEmptyCorpus, "no sentences in input");
  }
  return corpus;
}

Corpus parse_conll(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_conll(in);
}

std::string serialize_conll(const Corpus& corpus) {
  if (corpus.sentences.empty()) {
    throw Error(ErrorKind::kInvalidCorpus, "cannot serialize an empty corpus");
  }
  std::string out;
  for (const LabeledSentence& labeled : corpus.sentences) {
    for (int i = 0; i < labeled.sentence.size(); ++i) {
      out += labeled.sentence.text_at(i);
      out += '\t';
      out += label_name(TagScheme::kFull27, labeled.tags.labels[i]);
      out += '\n';
    }
    out += '\n';
  }
  return out;
}

EntityDistribution entity_distribution(const Corpus& corpus) {
  EntityDistribution dist;
  for (const LabeledSentence& labeled : corpus.sentences) {
    for (const Span& span : decode_bio(labeled.tags)) {
      ++dist.per_type[*span.type];
      ++dist.per_group[group_of(*span.type)];
    }
  }
  return dist;
}

StatsReport corpus_stats(const Corpus& corpus) {
  StatsReport stats;
  stats.sentence_count = corpus.size();
  int64_t total_tokens = 0;
  for (const LabeledSentence& labeled : corpus.sentences) {
    const int64_t length = labeled.sentence.size();
    total_tokens += length;
    stats.max_length = std::max(stats.max_length, length);
    const std::vector<Span> spans = decode_bio(labeled.tags);
    if (!spans.empty()) ++stats.sentences_with_entity;
    stats.total_entities += static_cast<int64_t>(spans.size());
  }
  stats.avg_length = stats.sentence_count > 0
                         ? static_cast<double>(total_tokens) /
                               static_cast<double>(stats.sentence_count)
                         : 0.0;
  stats.distribution = entity_distribution(corpus);
  return stats;
}

namespace {

double round2(double value) {
  return static_cast<double>(std::llround(value * 100.0)) / 100.0;
}

}  // namespace

std::string stats_to_table(const StatsReport& stats) {
  std::ostringstream out;
  out << "Information             Value\n";
  out << "#Sentence               " << stats.sentence_count << "\n";
  out << "#Sentence with entity   " << stats.sentences_with_entity << "\n";
  out << "Total entity            " << stats.total_entities << "\n";
  out << "Max length              " << stats.max_length << "\n";
  char avg[32];
  std::snprintf(avg, sizeof(avg), "%.2f", round2(stats.avg_length));
  out << "Avg length              " << avg << "\n";

  out << "\nEntity type                         Quantity   Group total\n";
  for (EntityType type : all_entity_types()) {
    auto it = stats.distribution.per_type.find(type);
    const int64_t count = it == stats.distribution.per_type.end() ? 0 : it->second;
    auto group_it = stats.distribution.per_group.find(group_of(type));
    const int64_t group_total =
        group_it == stats.distribution.per_group.end() ? 0 : group_it->second;
    char row[96];
    std::snprintf(row, sizeof(row), "%-35s %-10lld %lld\n", to_string(type).c_str(),
                  static_cast<long long>(count), static_cast<long long>(group_total));
    out << row;
  }
  return out.str();
}

std::string stats_to_json(const StatsReport& stats) {
  nlohmann::json per_type = nlohmann::json::object();
  for (EntityType type : all_entity_types()) {
    auto it = stats.distribution.per_type.find(type);
    per_type[to_string(type)] =
        it == stats.distribution.per_type.end() ? 0 : it->second;
  }
  nlohmann::json per_group = nlohmann::json::object();
  for (int g = 0; g < kEntityGroupCount; ++g) {
    const EntityGroup group = static_cast<EntityGroup>(g);
    auto it = stats.distribution.per_group.find(group);
    per_group[to_string(group)] =
        it == stats.distribution.per_group.end() ? 0 : it->second;
  }
  nlohmann::json json{{"sentence_count", stats.sentence_count},
                      {"sentences_with_entity", stats.sentences_with_entity},
                      {"total_entities", stats.total_entities},
                      {"max_length", stats.max_length},
                      {"avg_length", round2(stats.avg_length)},
                      {"per_type", per_type},
                      {"per_group", per_group}};
  return json.dump(2) + "\n";
}

}  // namespace cascade_ner
