#include "semrel/pvdbow.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <unordered_map>

#include "semrel/errors.hpp"
#include "semrel/seed.hpp"
#include "semrel/text.hpp"

namespace semrel {
namespace {

struct Vocabulary {
    std::vector<std::string> words;
    std::vector<std::uint64_t> counts;
    std::unordered_map<std::string, int> index;
};

Vocabulary build_vocabulary(const std::vector<std::vector<std::string>>& docs, int min_count) {
    std::unordered_map<std::string, std::uint64_t> raw;
    for (const auto& doc : docs) {
        for (const auto& w : doc) ++raw[w];
    }
    std::vector<std::pair<std::string, std::uint64_t>> kept;
    for (auto& [w, c] : raw) {
        if (c >= static_cast<std::uint64_t>(min_count)) kept.emplace_back(w, c);
    }
    std::sort(kept.begin(), kept.end(), [](const auto& a, const auto& b) {
        return a.second != b.second ? a.second > b.second : a.first < b.first;
    });
    Vocabulary vocab;
    for (auto& [w, c] : kept) {
        vocab.index.emplace(w, static_cast<int>(vocab.words.size()));
        vocab.words.push_back(w);
        vocab.counts.push_back(c);
    }
    return vocab;
}

// log(1 + exp(-z)), i.e. -log(sigmoid(z)), without overflow.
double neg_log_sigmoid(double z) {
    return z > 0 ? std::log1p(std::exp(-z)) : -z + std::log1p(std::exp(z));
}

float sigmoid(float z) { return 1.0f / (1.0f + std::exp(-z)); }

}  // namespace

void PvdbowConfig::validate() const {
    if (dim < 1 || window < 1 || negative_samples < 1 || epochs < 1 || min_word_count < 1) {
        throw ValidationError("pvdbow: dim, window, negative_samples, epochs and min_word_count "
                              "must all be >= 1");
    }
    if (!(initial_learning_rate > 0.0)) throw ValidationError("pvdbow: learning rate must be > 0");
    if (min_learning_rate < 0.0 || min_learning_rate > initial_learning_rate) {
        throw ValidationError("pvdbow: min_learning_rate must lie in [0, initial_learning_rate]");
    }
    if (sample < 0.0) throw ValidationError("pvdbow: sample must be >= 0");
}

PvdbowResult train_pvdbow(const Corpus& corpus, const PvdbowConfig& config) {
    config.validate();
    if (corpus.empty()) throw ValidationError("pvdbow: corpus is empty");

    std::vector<std::string> ids;
    std::vector<std::vector<std::string>> tokens;
    ids.reserve(corpus.size());
    tokens.reserve(corpus.size());
    for (const auto& [id, doc] : corpus) {
        ids.push_back(id);
        tokens.push_back(simple_preprocess(doc.text));
    }
    const Vocabulary vocab = build_vocabulary(tokens, config.min_word_count);

    // Documents as vocabulary indices.
    std::vector<std::vector<int>> docs(ids.size());
    std::uint64_t total_words = 0;
    for (std::size_t d = 0; d < ids.size(); ++d) {
        for (const auto& w : tokens[d]) {
            if (auto it = vocab.index.find(w); it != vocab.index.end()) docs[d].push_back(it->second);
        }
        total_words += docs[d].size();
    }
    tokens.clear();

    const Eigen::Index dim = config.dim;
    const auto n_docs = static_cast<Eigen::Index>(ids.size());
    const auto n_words = static_cast<Eigen::Index>(vocab.words.size());

    std::mt19937_64 rng(derive_seed(config.rng_seed, 0));
    Eigen::MatrixXf doc_vecs(dim, n_docs);
    {
        std::uniform_real_distribution<float> init(-0.5f, 0.5f);
        for (Eigen::Index j = 0; j < n_docs; ++j) {
            for (Eigen::Index i = 0; i < dim; ++i) doc_vecs(i, j) = init(rng) / static_cast<float>(dim);
        }
    }
    Eigen::MatrixXf out_vecs = Eigen::MatrixXf::Zero(dim, std::max<Eigen::Index>(n_words, 1));

    PvdbowResult result;
    result.vocabulary_size = vocab.words.size();
    for (std::size_t d = 0; d < docs.size(); ++d) {
        if (docs[d].empty()) result.untrained_ids.push_back(ids[d]);
    }

    if (n_words > 0 && total_words > 0) {
        std::vector<double> noise_weights(vocab.counts.size());
        for (std::size_t i = 0; i < noise_weights.size(); ++i) {
            noise_weights[i] = std::pow(static_cast<double>(vocab.counts[i]), 0.75);
        }
        std::discrete_distribution<int> noise(noise_weights.begin(), noise_weights.end());

        // Probability of keeping each word under frequent-word downsampling.
        std::vector<double> keep(vocab.counts.size(), 1.0);
        if (config.sample > 0.0) {
            const double threshold = config.sample * static_cast<double>(total_words);
            for (std::size_t i = 0; i < keep.size(); ++i) {
                const double f = static_cast<double>(vocab.counts[i]);
                keep[i] = std::min(1.0, (std::sqrt(f / threshold) + 1.0) * threshold / f);
            }
        }
        std::uniform_real_distribution<double> unit(0.0, 1.0);

        const double alpha0 = config.initial_learning_rate;
        const double alpha_span = alpha0 - config.min_learning_rate;
        const double total_work = static_cast<double>(total_words) * config.epochs;
        std::uint64_t processed = 0;
        Eigen::VectorXf grad_doc(dim);

        for (int epoch = 0; epoch < config.epochs; ++epoch) {
            double epoch_loss = 0.0;
            std::uint64_t predictions = 0;
            for (Eigen::Index d = 0; d < n_docs; ++d) {
                const auto& words = docs[static_cast<std::size_t>(d)];
                const float alpha =
                    static_cast<float>(alpha0 - alpha_span * static_cast<double>(processed) / total_work);
                processed += words.size();
                auto doc = doc_vecs.col(d);
                for (int word : words) {
                    if (keep[word] < 1.0 && unit(rng) > keep[word]) continue;
                    grad_doc.setZero();
                    for (int s = 0; s <= config.negative_samples; ++s) {
                        int target = word;
                        float label = 1.0f;
                        if (s > 0) {
                            target = noise(rng);
                            if (target == word) continue;
                            label = 0.0f;
                        }
                        auto out = out_vecs.col(target);
                        const float z = doc.dot(out);
                        epoch_loss += neg_log_sigmoid(label > 0 ? z : -z);
                        const float g = (label - sigmoid(z)) * alpha;
                        grad_doc.noalias() += g * out;
                        out.noalias() += g * doc;
                    }
                    doc += grad_doc;
                    ++predictions;
                }
            }
            result.epoch_loss.push_back(predictions ? epoch_loss / static_cast<double>(predictions)
                                                    : 0.0);
        }
    }

    result.vectors = DocVectorTable(dim);
    for (Eigen::Index d = 0; d < n_docs; ++d) {
        result.vectors.insert(ids[static_cast<std::size_t>(d)], doc_vecs.col(d));
    }
    return result;
}

}  // namespace semrel
