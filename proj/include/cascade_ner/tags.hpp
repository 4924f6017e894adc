#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cascade_ner/entity_type.hpp"

namespace cascade_ner {

/// Label schemes for per-token tagging.
///   kFull27:   B-/I- pairs for each of the 13 entity types plus O.
///   kUntyped3: O, B, I.
enum class TagScheme { kFull27, kUntyped3 };

int label_count(TagScheme scheme);

/// Label name for an id under a scheme. Full27 ids enumerate the B-/I- pairs
/// in canonical entity-type order (B first), with O as the last id.
/// Untyped3 ids are O=0, B=1, I=2.
const std::string& label_name(TagScheme scheme, int id);
std::optional<int> label_id(TagScheme scheme, std::string_view name);

inline constexpr int kUntypedO = 0;
inline constexpr int kUntypedB = 1;
inline constexpr int kUntypedI = 2;
inline constexpr int kFull27O = 2 * kEntityTypeCount;  // 26

int full27_begin(EntityType type);
int full27_inside(EntityType type);

const std::string& scheme_name(TagScheme scheme);  // "full27" / "untyped3"
std::optional<TagScheme> parse_scheme(std::string_view name);

/// A per-token label sequence under one scheme.
struct TagSequence {
  TagScheme scheme = TagScheme::kFull27;
  std::vector<int> labels;

  TagSequence() = default;
  TagSequence(TagScheme scheme, std::vector<int> labels);

  int size() const { return static_cast<int>(labels.size()); }
  bool operator==(const TagSequence&) const = default;
};

/// Builds a tag sequence from label names; throws kUnknownLabel.
TagSequence tags_from_names(TagScheme scheme, const std::vector<std::string>& names);
std::vector<std::string> tag_names(const TagSequence& tags);

}  // namespace cascade_ner
