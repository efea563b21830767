#include "semrel/predictions.hpp"

#include <algorithm>

#include "jsonl.hpp"
#include "semrel/errors.hpp"
#include "semrel/mlp.hpp"

namespace semrel {

using nlohmann::json;

PredictionRecord make_record(std::string seed_id, std::string target_id,
                             std::optional<RelationClass> truth, const Prediction& prediction) {
    PredictionRecord r;
    r.seed_id = std::move(seed_id);
    r.target_id = std::move(target_id);
    r.true_label = truth;
    r.scores = prediction.scores;
    r.ranked = prediction.ranked;
    return r;
}

json record_to_json(const PredictionRecord& r) {
    json ranked = json::array();
    for (auto c : r.ranked) ranked.push_back(pid(c));
    json j{{"seed_id", r.seed_id}, {"target_id", r.target_id}};
    if (r.true_label) j["true_label"] = pid(*r.true_label);
    j["scores"] = r.scores;
    j["ranked_labels"] = ranked;
    if (r.fold) j["fold"] = *r.fold;
    return j;
}

PredictionRecord record_from_json(const json& j) {
    if (!j.is_object()) throw ValidationError("prediction record must be an object");
    PredictionRecord r;
    auto text = [&](const char* field) {
        auto it = j.find(field);
        if (it == j.end() || !it->is_string()) {
            throw ValidationError(std::string("prediction record lacks string field '") + field + "'");
        }
        return it->get<std::string>();
    };
    r.seed_id = text("seed_id");
    r.target_id = text("target_id");
    if (auto it = j.find("true_label"); it != j.end() && !it->is_null()) {
        if (!it->is_string()) throw ValidationError("true_label must be a string");
        r.true_label = parse_label(it->get<std::string>());
    }

    auto scores = j.find("scores");
    if (scores == j.end() || !scores->is_array() || scores->size() != kNumClasses) {
        throw ValidationError("prediction record needs exactly 10 scores");
    }
    for (std::size_t c = 0; c < kNumClasses; ++c) {
        const auto& s = (*scores)[c];
        if (!s.is_number()) throw ValidationError("prediction scores must be numbers");
        r.scores[c] = s.get<double>();
        if (!(r.scores[c] > 0.0 && r.scores[c] < 1.0)) {
            throw ValidationError("prediction score " + std::to_string(r.scores[c]) +
                                  " lies outside (0, 1)");
        }
    }

    auto ranked = j.find("ranked_labels");
    if (ranked == j.end() || !ranked->is_array() || ranked->size() != kNumClasses) {
        throw ValidationError("prediction record needs exactly 10 ranked_labels");
    }
    std::array<bool, kNumClasses> seen{};
    for (std::size_t i = 0; i < kNumClasses; ++i) {
        if (!(*ranked)[i].is_string()) throw ValidationError("ranked_labels must be strings");
        r.ranked[i] = parse_label((*ranked)[i].get<std::string>());
        if (std::exchange(seen[class_index(r.ranked[i])], true)) {
            throw ValidationError("ranked_labels repeats '" + std::string(pid(r.ranked[i])) + "'");
        }
    }
    for (std::size_t i = 1; i < kNumClasses; ++i) {
        if (r.scores[class_index(r.ranked[i])] > r.scores[class_index(r.ranked[i - 1])]) {
            throw ValidationError("ranked_labels are not ordered by descending score");
        }
    }
    if (auto it = j.find("fold"); it != j.end() && it->is_number_unsigned()) {
        r.fold = it->get<std::size_t>();
    }
    return r;
}

void write_predictions(const std::filesystem::path& path,
                       std::span<const PredictionRecord> records) {
    auto out = detail::open_output(path);
    for (const auto& r : records) out << record_to_json(r).dump() << '\n';
    if (!out) throw IoError("write failure on " + path.string());
}

std::vector<PredictionRecord> read_predictions(const std::filesystem::path& path) {
    std::vector<PredictionRecord> records;
    detail::for_each_json_line(path, [&](const json& j, std::size_t line_no) {
        try {
            records.push_back(record_from_json(j));
        } catch (const ValidationError& e) {
            throw ValidationError(detail::location(path, line_no) + ": " + e.what());
        }
    });
    return records;
}

}  // namespace semrel
