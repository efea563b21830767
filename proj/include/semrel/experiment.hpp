#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "semrel/concat.hpp"
#include "semrel/dataset.hpp"
#include "semrel/embedding_table.hpp"
#include "semrel/kfold.hpp"
#include "semrel/metrics.hpp"
#include "semrel/mlp.hpp"
#include "semrel/predictions.hpp"
#include "semrel/seed.hpp"

namespace semrel {

/// Pair vectors, one column per pair, in the order of `pairs`.
/// Throws ValidationError if a document has no vector.
Eigen::MatrixXf pair_matrix(std::span<const LabeledPair> pairs, const DocVectorTable& docs,
                            ConcatScheme scheme);

std::vector<RelationClass> labels_of(std::span<const LabeledPair> pairs);

struct CrossValidationConfig {
    ConcatScheme scheme = ConcatScheme::UVDiffProd;
    // input_dim is filled in from the document vectors and the scheme.
    MlpConfig mlp;
    std::size_t k = 4;
    std::uint64_t rng_seed = 0;
    // Folds trained concurrently; results do not depend on it.
    unsigned jobs = 1;
};

struct FoldOutcome {
    ConfusionMatrix confusion;
    EvalReport report;
    TrainTrace trace;
    std::vector<PredictionRecord> predictions;
};

struct CrossValidationResult {
    FoldAssignment assignment;
    std::vector<FoldOutcome> folds;
    EvalReport aggregate;
    ConfusionMatrix pooled_confusion;

    std::vector<PredictionRecord> all_predictions() const;
};

/// Stratified k-fold: for every fold a fresh MLP is trained on the other
/// folds and scored on the held-out one. Test labels never reach training.
CrossValidationResult cross_validate(std::span<const LabeledPair> pairs,
                                     const DocVectorTable& docs,
                                     const CrossValidationConfig& config);

}  // namespace semrel
