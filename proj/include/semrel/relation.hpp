#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>

namespace semrel {

/// The ten relation labels. Declaration order is the fixed class order used
/// for confusion matrix rows, score vectors and argmax tie-breaking.
enum class RelationClass : std::uint8_t {
    CountryOfCitizenship,  // P27
    DifferentFrom,         // P1889
    EducatedAt,            // P69
    Employer,              // P108
    FacetOf,               // P1269
    HasEffect,             // P1542
    HasQuality,            // P1552
    OppositeOf,            // P461
    Symptoms,              // P780
    None,
};

inline constexpr std::size_t kNumClasses = 10;
inline constexpr std::size_t kNumPositiveClasses = 9;

inline constexpr std::array<RelationClass, kNumClasses> kAllClasses = {
    RelationClass::CountryOfCitizenship, RelationClass::DifferentFrom,
    RelationClass::EducatedAt,           RelationClass::Employer,
    RelationClass::FacetOf,              RelationClass::HasEffect,
    RelationClass::HasQuality,           RelationClass::OppositeOf,
    RelationClass::Symptoms,             RelationClass::None,
};

inline constexpr std::array<RelationClass, kNumPositiveClasses> kPositiveClasses = {
    RelationClass::CountryOfCitizenship, RelationClass::DifferentFrom,
    RelationClass::EducatedAt,           RelationClass::Employer,
    RelationClass::FacetOf,              RelationClass::HasEffect,
    RelationClass::HasQuality,           RelationClass::OppositeOf,
    RelationClass::Symptoms,
};

constexpr std::size_t class_index(RelationClass c) { return static_cast<std::size_t>(c); }

constexpr RelationClass class_at(std::size_t index) { return kAllClasses.at(index); }

constexpr bool is_positive(RelationClass c) { return c != RelationClass::None; }

/// Wikidata property id ("P27", ...) or "none" for the negative class.
std::string_view pid(RelationClass c);

/// Human-readable name ("country of citizenship", ..., "none").
std::string_view display_name(RelationClass c);

/// Accepts a PID string or "none" (case-insensitive for "none").
std::optional<RelationClass> relation_from_pid(std::string_view text);

/// Like relation_from_pid but throws ValidationError on unknown labels.
RelationClass parse_label(std::string_view text);

}  // namespace semrel
