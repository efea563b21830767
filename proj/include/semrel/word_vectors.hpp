#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "semrel/dataset.hpp"
#include "semrel/embedding_table.hpp"
#include "semrel/text.hpp"

namespace semrel {

struct WordVectorLoadOptions {
    // Strict mode turns a wrong-arity line into a hard error.
    bool strict = false;
};

struct WordVectorLoad {
    WordVectorTable table;
    std::size_t rejected_lines = 0;
    std::vector<std::size_t> rejected_line_numbers;  // 1-based
};

/// Reads "word v1 ... vN" lines. N is taken from the first line.
WordVectorLoad load_word_vectors(const std::filesystem::path& path,
                                 const WordVectorLoadOptions& options = {});

template <typename Scalar>
struct AveragedEmbedding {
    Eigen::Matrix<Scalar, Eigen::Dynamic, 1> vector;
    std::size_t covered_tokens = 0;
    // Set when no token of the document is in the vocabulary; vector is zero.
    bool zero_coverage = false;
};

/// Count-weighted mean of the word vectors of in-vocabulary tokens:
/// sum_i c_i * w_i / sum_i c_i. Out-of-vocabulary tokens are skipped.
template <typename Scalar = float>
AveragedEmbedding<Scalar> avg_word_embedding(const std::map<std::string, std::size_t>& counts,
                                             const WordVectorTable& table) {
    AveragedEmbedding<Scalar> out;
    out.vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>::Zero(table.dim());
    double weight = 0.0;
    for (const auto& [word, count] : counts) {
        const float* w = table.find(word);
        if (w == nullptr) continue;
        out.vector += static_cast<Scalar>(count) *
                      Eigen::Map<const Eigen::VectorXf>(w, table.dim()).template cast<Scalar>();
        weight += static_cast<double>(count);
        out.covered_tokens += count;
    }
    if (weight == 0.0) {
        out.zero_coverage = true;
    } else {
        out.vector /= static_cast<Scalar>(weight);
    }
    return out;
}

template <typename Scalar = float>
AveragedEmbedding<Scalar> avg_glove_embed(const Document& doc, const WordVectorTable& table,
                                          const StopWords& stop_words) {
    return avg_word_embedding<Scalar>(tokenize_counts(doc, stop_words), table);
}

struct CorpusEmbedding {
    DocVectorTable vectors;
    std::vector<std::string> zero_coverage_ids;
};

/// AvgGloVe vectors for the given documents (all of `corpus` when `ids` is empty).
CorpusEmbedding embed_corpus_avg(const Corpus& corpus, const WordVectorTable& table,
                                 const StopWords& stop_words,
                                 const std::vector<std::string>& ids = {});

/// Doc-vector file: a "dim=N" header line, then "doc_id v1 ... vN" per line.
/// The key is everything before the last N fields, so ids may contain spaces.
void write_doc_vectors(const std::filesystem::path& path, const DocVectorTable& table);
DocVectorTable read_doc_vectors(const std::filesystem::path& path);

}  // namespace semrel
