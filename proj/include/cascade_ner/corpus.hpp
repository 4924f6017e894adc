#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "cascade_ner/entity_type.hpp"
#include "cascade_ner/tags.hpp"

namespace cascade_ner {

/// A text token. Case is never normalized; text contains no tab or newline.
struct Token {
  std::string text;
  int index = 0;
};

class Sentence {
 public:
  /// Validates every token (non-empty, no tab/newline) and assigns indices.
  Sentence(std::string id, std::vector<std::string> token_texts);

  const std::string& id() const { return id_; }
  const std::vector<Token>& tokens() const { return tokens_; }
  int size() const { return static_cast<int>(tokens_.size()); }
  const std::string& text_at(int i) const { return tokens_[i].text; }

  /// Tokens joined with single spaces.
  std::string joined_text() const;

  bool operator==(const Sentence&) const = default;

 private:
  std::string id_;
  std::vector<Token> tokens_;
};

/// A sentence with aligned gold tags (scheme Full27; may be all-O).
struct LabeledSentence {
  LabeledSentence(Sentence sentence, TagSequence tags);

  Sentence sentence;
  TagSequence tags;

  bool operator==(const LabeledSentence&) const = default;
};

struct Corpus {
  std::vector<LabeledSentence> sentences;

  int64_t size() const { return static_cast<int64_t>(sentences.size()); }
  bool operator==(const Corpus&) const = default;
};

/// Parses the CoNLL-style format: one `<token>\t<label>` per line, sentences
/// separated by exactly one blank line, labels from the Full27 inventory.
/// Sentence ids are assigned positionally as "s<block index>".
/// Throws kMalformedLine / kUnknownLabel (with 1-based line numbers) and
/// kEmptyCorpus.
Corpus parse_conll(std::istream& in);
Corpus parse_conll(std::string_view text);

/// Inverse of parse_conll; emits one blank line after every sentence.
/// Throws kInvalidCorpus on an empty sentence list.
std::string serialize_conll(const Corpus& corpus);

struct EntityDistribution {
  std::map<EntityType, int64_t> per_type;
  std::map<EntityGroup, int64_t> per_group;
};

struct StatsReport {
  int64_t sentence_count = 0;
  int64_t sentences_with_entity = 0;
  int64_t total_entities = 0;
  int64_t max_length = 0;
  double avg_length = 0.0;  // full precision; rounded to 2 decimals on output
  EntityDistribution distribution;
};

StatsReport corpus_stats(const Corpus& corpus);

/// Span counts per entity type and per entity group.
EntityDistribution entity_distribution(const Corpus& corpus);

std::string stats_to_table(const StatsReport& stats);
std::string stats_to_json(const StatsReport& stats);

}  // namespace cascade_ner
