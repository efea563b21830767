#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "semrel/dataset.hpp"
#include "semrel/embedding_table.hpp"

namespace semrel {

/// Paragraph-vector (distributed bag of words) training settings. Defaults
/// follow the common reference implementation.
struct PvdbowConfig {
    int dim = 200;
    // Only consulted when word vectors are trained jointly, which this trainer
    // never does; kept so configs round-trip.
    int window = 5;
    int negative_samples = 5;
    int epochs = 10;
    int min_word_count = 5;
    double initial_learning_rate = 0.025;
    double min_learning_rate = 0.0001;
    // Frequent-word downsampling threshold; 0 disables it.
    double sample = 1e-3;
    std::uint64_t rng_seed = 1;

    void validate() const;
};

struct PvdbowResult {
    DocVectorTable vectors;
    // Mean negative-sampling loss per (document, word) prediction, per epoch.
    std::vector<double> epoch_loss;
    // Documents without any in-vocabulary token; they keep their random init.
    std::vector<std::string> untrained_ids;
    std::size_t vocabulary_size = 0;
};

/// Trains one vector per document by predicting each of its words against
/// noise words drawn from the unigram^0.75 distribution. Single-threaded and
/// deterministic for a given seed.
PvdbowResult train_pvdbow(const Corpus& corpus, const PvdbowConfig& config);

}  // namespace semrel
