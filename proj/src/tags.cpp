#include "cascade_ner/tags.hpp"

#include <array>

#include "cascade_ner/error.hpp"

namespace cascade_ner {

namespace {

const std::array<std::string, 27>& full27_names() {
  static const std::array<std::string, 27> names = [] {
    std::array<std::string, 27> out;
    for (int t = 0; t < kEntityTypeCount; ++t) {
      const std::string& type = to_string(static_cast<EntityType>(t));
      out[2 * t] = "B-" + type;
      out[2 * t + 1] = "I-" + type;
    }
    out[kFull27O] = "O";
    return out;
  }();
  return names;
}

const std::array<std::string, 3> kUntypedNames = {"O", "B", "I"};

}  // namespace

int label_count(TagScheme scheme) {
  return scheme == TagScheme::kFull27 ? 27 : 3;
}

const std::string& label_name(TagScheme scheme, int id) {
  if (id < 0 || id >= label_count(scheme)) {
    throw Error(ErrorKind::kUnknownLabel,
                "label id " + std::to_string(id) + " out of range for scheme " +
                    scheme_name(scheme));
  }
  return scheme == TagScheme::kFull27 ? full27_names()[id] : kUntypedNames[id];
}

std::optional<int> label_id(TagScheme scheme, std::string_view name) {
  const int n = label_count(scheme);
  for (int i = 0; i < n; ++i) {
    if (label_name(scheme, i) == name) return i;
  }
  return std::nullopt;
}

int full27_begin(EntityType type) { return 2 * static_cast<int>(type); }
int full27_inside(EntityType type) { return 2 * static_cast<int>(type) + 1; }

const std::string& scheme_name(TagScheme scheme) {
  static const std::string kFull = "full27";
  static const std::string kUntyped = "untyped3";
  return scheme == TagScheme::kFull27 ? kFull : kUntyped;
}

std::optional<TagScheme> parse_scheme(std::string_view name) {
  if (name == "full27") return TagScheme::kFull27;
  if (name == "untyped3") return TagScheme::kUntyped3;
  return std::nullopt;
}

TagSequence::TagSequence(TagScheme scheme, std::vector<int> labels)
    : scheme(scheme), labels(std::move(labels)) {
  const int n = label_count(scheme);
  for (int id : this->labels) {
    if (id < 0 || id >= n) {
      throw Error(ErrorKind::kUnknownLabel,
                  "label id " + std::to_string(id) + " invalid for scheme " +
                      scheme_name(scheme));
    }
  }
}

TagSequence tags_from_names(TagScheme scheme, const std::vector<std::string>& names) {
  std::vector<int> ids;
  ids.reserve(names.size());
  for (const std::string& name : names) {
    std::optional<int> id = label_id(scheme, name);
    if (!id) {
      throw Error(ErrorKind::kUnknownLabel,
                  "'" + name + "' is not a " + scheme_name(scheme) + " label");
    }
    ids.push_back(*id);
  }
  return TagSequence(scheme, std::move(ids));
}

std::vector<std::string> tag_names(const TagSequence& tags) {
  std::vector<std::string> out;
  out.reserve(tags.labels.size());
  for (int id : tags.labels) out.push_back(label_name(tags.scheme, id));
  return out;
}

}  // namespace cascade_ner
