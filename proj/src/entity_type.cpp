#include "cascade_ner/entity_type.hpp"

#include <string>

namespace cascade_ner {

namespace {

const std::string kGroupNames[kEntityGroupCount] = {
    "Application", "OperatingSystem", "PlugIn", "ProgrammingEnvironment",
    "SoftwareCoreference"};

const std::string kRoleNames[kEntityRoleCount] = {"Creation", "Deposition",
                                                  "Mention", "Usage"};

struct TypeEntry {
  EntityGroup group;
  EntityRole role;
};

constexpr TypeEntry kTypeTable[kEntityTypeCount] = {
    {EntityGroup::kApplication, EntityRole::kCreation},
    {EntityGroup::kApplication, EntityRole::kDeposition},
    {EntityGroup::kApplication, EntityRole::kMention},
    {EntityGroup::kApplication, EntityRole::kUsage},
    {EntityGroup::kOperatingSystem, EntityRole::kMention},
    {EntityGroup::kOperatingSystem, EntityRole::kUsage},
    {EntityGroup::kPlugIn, EntityRole::kCreation},
    {EntityGroup::kPlugIn, EntityRole::kDeposition},
    {EntityGroup::kPlugIn, EntityRole::kMention},
    {EntityGroup::kPlugIn, EntityRole::kUsage},
    {EntityGroup::kProgrammingEnvironment, EntityRole::kMention},
    {EntityGroup::kProgrammingEnvironment, EntityRole::kUsage},
    {EntityGroup::kSoftwareCoreference, EntityRole::kDeposition},
};

const std::array<std::string, kEntityTypeCount>& type_names() {
  static const std::array<std::string, kEntityTypeCount> names = [] {
    std::array<std::string, kEntityTypeCount> out;
    for (int i = 0; i < kEntityTypeCount; ++i) {
      out[i] = kGroupNames[static_cast<int>(kTypeTable[i].group)] + "_" +
               kRoleNames[static_cast<int>(kTypeTable[i].role)];
    }
    return out;
  }();
  return names;
}

}  // namespace

const std::array<EntityType, kEntityTypeCount>& all_entity_types() {
  static const std::array<EntityType, kEntityTypeCount> types = [] {
    std::array<EntityType, kEntityTypeCount> out;
    for (int i = 0; i < kEntityTypeCount; ++i) out[i] = static_cast<EntityType>(i);
    return out;
  }();
  return types;
}

EntityGroup group_of(EntityType type) {
  return kTypeTable[static_cast<int>(type)].group;
}

EntityRole role_of(EntityType type) {
  return kTypeTable[static_cast<int>(type)].role;
}

std::optional<EntityType> make_entity_type(EntityGroup group, EntityRole role) {
  for (int i = 0; i < kEntityTypeCount; ++i) {
    if (kTypeTable[i].group == group && kTypeTable[i].role == role) {
      return static_cast<EntityType>(i);
    }
  }
  return std::nullopt;
}

const std::string& to_string(EntityType type) {
  return type_names()[static_cast<int>(type)];
}

const std::string& to_string(EntityGroup group) {
  return kGroupNames[static_cast<int>(group)];
}

const std::string& to_string(EntityRole role) {
  return kRoleNames[static_cast<int>(role)];
}

std::optional<EntityType> parse_entity_type(std::string_view text) {
  for (int i = 0; i < kEntityTypeCount; ++i) {
    if (type_names()[i] == text) return static_cast<EntityType>(i);
  }
  return std::nullopt;
}

std::optional<EntityGroup> parse_entity_group(std::string_view text) {
  for (int i = 0; i < kEntityGroupCount; ++i) {
    if (kGroupNames[i] == text) return static_cast<EntityGroup>(i);
  }
  return std::nullopt;
}

std::optional<EntityRole> parse_entity_role(std::string_view text) {
  for (int i = 0; i < kEntityRoleCount; ++i) {
    if (kRoleNames[i] == text) return static_cast<EntityRole>(i);
  }
  return std::nullopt;
}

}  // namespace cascade_ner
