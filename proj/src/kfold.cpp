#include "semrel/kfold.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <string>

#include "jsonl.hpp"
#include "semrel/errors.hpp"

namespace semrel {

std::vector<std::size_t> FoldAssignment::test_indices(std::size_t fold) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < fold_of.size(); ++i) {
        if (fold_of[i] == fold) out.push_back(i);
    }
    return out;
}

std::vector<std::size_t> FoldAssignment::train_indices(std::size_t fold) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < fold_of.size(); ++i) {
        if (fold_of[i] != fold) out.push_back(i);
    }
    return out;
}

std::vector<std::size_t> FoldAssignment::fold_sizes() const {
    std::vector<std::size_t> sizes(k, 0);
    for (auto f : fold_of) ++sizes[f];
    return sizes;
}

FoldAssignment stratified_kfold(std::span<const RelationClass> labels, std::size_t k,
                                std::uint64_t rng_seed) {
    if (k < 2) throw ValidationError("stratified k-fold needs k >= 2");
    std::array<std::vector<std::size_t>, kNumClasses> members;
    for (std::size_t i = 0; i < labels.size(); ++i) members[class_index(labels[i])].push_back(i);
    for (auto c : kAllClasses) {
        const auto n = members[class_index(c)].size();
        if (n > 0 && n < k) {
            throw ValidationError("class '" + std::string(display_name(c)) + "' (" +
                                  std::string(pid(c)) + ") has " + std::to_string(n) +
                                  " samples, fewer than k=" + std::to_string(k));
        }
    }

    FoldAssignment out;
    out.k = k;
    out.rng_seed = rng_seed;
    out.fold_of.assign(labels.size(), 0);
    std::mt19937_64 rng(rng_seed);
    std::size_t next = 0;
    for (auto& idx : members) {
        std::shuffle(idx.begin(), idx.end(), rng);
        for (auto i : idx) {
            out.fold_of[i] = next;
            next = (next + 1) % k;
        }
    }
    return out;
}

void write_folds(const std::filesystem::path& path, const FoldAssignment& folds) {
    auto out = detail::open_output(path);
    for (std::size_t i = 0; i < folds.fold_of.size(); ++i) {
        out << nlohmann::json{{"pair_index", i}, {"fold", folds.fold_of[i]}}.dump() << '\n';
    }
}

FoldAssignment read_folds(const std::filesystem::path& path) {
    std::map<std::size_t, std::size_t> entries;
    detail::for_each_json_line(path, [&](const nlohmann::json& j, std::size_t line_no) {
        try {
            const auto i = j.at("pair_index").get<std::size_t>();
            if (!entries.emplace(i, j.at("fold").get<std::size_t>()).second) {
                throw ValidationError(detail::location(path, line_no) + ": pair_index " +
                                      std::to_string(i) + " listed twice");
            }
        } catch (const nlohmann::json::exception& e) {
            throw ParseError(detail::location(path, line_no) + ": " + e.what());
        }
    });
    FoldAssignment out;
    out.fold_of.resize(entries.size());
    std::size_t max_fold = 0;
    std::size_t expected = 0;
    for (const auto& [i, f] : entries) {
        if (i != expected++) {
            throw ValidationError(path.string() + ": pair indices are not contiguous from 0");
        }
        out.fold_of[i] = f;
        max_fold = std::max(max_fold, f);
    }
    out.k = entries.empty() ? 0 : max_fold + 1;
    return out;
}

}  // namespace semrel
