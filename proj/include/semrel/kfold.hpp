#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "semrel/relation.hpp"

namespace semrel {

struct FoldAssignment {
    std::size_t k = 4;
    std::uint64_t rng_seed = 0;
    std::vector<std::size_t> fold_of;  // pair index -> fold

    std::vector<std::size_t> test_indices(std::size_t fold) const;
    std::vector<std::size_t> train_indices(std::size_t fold) const;
    std::vector<std::size_t> fold_sizes() const;
};

/// Shuffles each class's sample indices with the seed, then deals them to the
/// folds round-robin. The dealing position carries over from one class to the
/// next (in class order), which keeps fold sizes within one of each other.
/// Throws ValidationError naming any class with 0 < count < k.
FoldAssignment stratified_kfold(std::span<const RelationClass> labels, std::size_t k,
                                std::uint64_t rng_seed);

/// Fold file: one {"pair_index": i, "fold": f} object per line.
void write_folds(const std::filesystem::path& path, const FoldAssignment& folds);
FoldAssignment read_folds(const std::filesystem::path& path);

}  // namespace semrel
