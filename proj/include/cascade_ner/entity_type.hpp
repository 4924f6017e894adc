#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace cascade_ner {

/// The five software entity groups.
enum class EntityGroup : std::uint8_t {
  kApplication,
  kOperatingSystem,
  kPlugIn,
  kProgrammingEnvironment,
  kSoftwareCoreference,
};

/// The four roles a mention can play.
enum class EntityRole : std::uint8_t {
  kCreation,
  kDeposition,
  kMention,
  kUsage,
};

inline constexpr int kEntityGroupCount = 5;
inline constexpr int kEntityRoleCount = 4;

/// The 13 valid group/role combinations, in canonical order. Pairs outside
/// this list (e.g. SoftwareCoreference x Usage) are not representable.
enum class EntityType : std::uint8_t {
  kApplicationCreation = 0,
  kApplicationDeposition,
  kApplicationMention,
  kApplicationUsage,
  kOperatingSystemMention,
  kOperatingSystemUsage,
  kPlugInCreation,
  kPlugInDeposition,
  kPlugInMention,
  kPlugInUsage,
  kProgrammingEnvironmentMention,
  kProgrammingEnvironmentUsage,
  kSoftwareCoreferenceDeposition,
};

inline constexpr int kEntityTypeCount = 13;

const std::array<EntityType, kEntityTypeCount>& all_entity_types();

EntityGroup group_of(EntityType type);
EntityRole role_of(EntityType type);

/// Returns the entity type for a group/role pair, or nullopt if the pair is
/// not one of the 13 valid combinations.
std::optional<EntityType> make_entity_type(EntityGroup group, EntityRole role);

/// Canonical string form, "<Group>_<Role>" (e.g. "Application_Usage").
const std::string& to_string(EntityType type);
const std::string& to_string(EntityGroup group);
const std::string& to_string(EntityRole role);

std::optional<EntityType> parse_entity_type(std::string_view text);
std::optional<EntityGroup> parse_entity_group(std::string_view text);
std::optional<EntityRole> parse_entity_role(std::string_view text);

}  // namespace cascade_ner
