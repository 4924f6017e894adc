#pragma once

#include <optional>
#include <span>
#include <vector>

#include "cascade_ner/entity_type.hpp"
#include "cascade_ner/tags.hpp"

namespace cascade_ner {

/// Half-open token interval, optionally typed. The unit of evaluation.
struct Span {
  int start;
  int end;
  std::optional<EntityType> type;

  Span(int start, int end, std::optional<EntityType> type = std::nullopt);

  int length() const { return end - start; }
  bool operator==(const Span&) const = default;
};

/// Decodes BIO tags into disjoint, sorted spans. Total on any input:
/// a stray I (after O, at sentence start, or with a different type than the
/// open span) opens a new span; a type change closes the previous span.
std::vector<Span> decode_bio(const TagSequence& tags);

/// Inverse of decode_bio. Spans must be disjoint and within [0, length);
/// Full27 additionally requires every span typed.
TagSequence encode_bio(std::span<const Span> spans, int length, TagScheme scheme);

/// Full27 -> Untyped3: B-X -> B, I-X -> I, O -> O.
TagSequence collapse_scheme(const TagSequence& tags);

/// Assigns types[i] to spans[i]; boundaries unchanged.
std::vector<Span> apply_types(std::span<const Span> spans,
                              std::span<const EntityType> types);

/// 1 iff the decoded span set is non-empty.
int sentence_entity_label(const TagSequence& tags);

std::vector<Span> erase_types(std::span<const Span> spans);

}  // namespace cascade_ner
