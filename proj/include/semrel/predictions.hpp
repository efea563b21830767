#pragma once

#include <array>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "semrel/relation.hpp"

namespace semrel {

struct Prediction;

/// One line of the shared prediction file. Both the MLP pipeline and the
/// transformer adapter emit exactly this shape:
///   {"seed_id", "target_id", "true_label"?, "scores": [10], "ranked_labels": [10]}
/// scores follow the fixed class order; labels are PIDs or "none".
struct PredictionRecord {
    std::string seed_id;
    std::string target_id;
    std::optional<RelationClass> true_label;
    std::array<double, kNumClasses> scores{};
    std::array<RelationClass, kNumClasses> ranked{};
    // Optional fold tag, written when the record comes from cross-validation.
    std::optional<std::size_t> fold;

    RelationClass predicted() const { return ranked[0]; }
};

PredictionRecord make_record(std::string seed_id, std::string target_id,
                             std::optional<RelationClass> truth, const Prediction& prediction);

nlohmann::json record_to_json(const PredictionRecord& record);

/// Validates the shared contract: ten scores in (0,1), ranked_labels a
/// permutation of the ten classes consistent with the scores. Throws
/// ValidationError (unknown label strings included).
PredictionRecord record_from_json(const nlohmann::json& j);

void write_predictions(const std::filesystem::path& path,
                       std::span<const PredictionRecord> records);
std::vector<PredictionRecord> read_predictions(const std::filesystem::path& path);

}  // namespace semrel
