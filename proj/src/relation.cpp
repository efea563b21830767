#include "semrel/relation.hpp"

#include <string>

#include "semrel/errors.hpp"

namespace semrel {
namespace {

struct ClassInfo {
    std::string_view pid;
    std::string_view name;
};

constexpr std::array<ClassInfo, kNumClasses> kInfo = {{
    {"P27", "country of citizenship"},
    {"P1889", "different from"},
    {"P69", "educated at"},
    {"P108", "employer"},
    {"P1269", "facet of"},
    {"P1542", "has effect"},
    {"P1552", "has quality"},
    {"P461", "opposite of"},
    {"P780", "symptoms"},
    {"none", "none"},
}};

bool iequals(std::string_view a, std::string_view b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        auto lower = [](char c) { return (c >= 'A' && c <= 'Z') ? char(c - 'A' + 'a') : c; };
        if (lower(a[i]) != lower(b[i])) return false;
    }
    return true;
}

}  // namespace

std::string_view pid(RelationClass c) { return kInfo[class_index(c)].pid; }

std::string_view display_name(RelationClass c) { return kInfo[class_index(c)].name; }

std::optional<RelationClass> relation_from_pid(std::string_view text) {
    for (std::size_t i = 0; i < kNumClasses; ++i) {
        if (iequals(text, kInfo[i].pid)) return class_at(i);
    }
    return std::nullopt;
}

RelationClass parse_label(std::string_view text) {
    if (auto c = relation_from_pid(text)) return *c;
    throw ValidationError("unknown relation label: '" + std::string(text) + "'");
}

}  // namespace semrel
