#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "semrel/relation.hpp"

namespace semrel {

struct Document {
    std::string doc_id;
    std::optional<std::string> qid;
    std::string title;
    std::string text;
};

// Ordered so that every traversal of a corpus is deterministic.
using Corpus = std::map<std::string, Document>;

struct CorpusLoadResult {
    Corpus documents;
    std::size_t dropped_empty_text = 0;
};

/// Reads a line-delimited JSON corpus ({doc_id, qid?, title, text} per line).
/// Records with empty text are dropped and counted; a repeated doc_id is fatal.
CorpusLoadResult load_corpus(const std::filesystem::path& path);

void write_corpus(const std::filesystem::path& path, const Corpus& corpus);

/// A harvested Wikidata statement between two items that both have an English
/// Wikipedia article. Direction matters: seed -> target.
struct RelationTriple {
    std::string seed_qid;
    std::string target_qid;
    RelationClass relation = RelationClass::CountryOfCitizenship;

    friend bool operator==(const RelationTriple&, const RelationTriple&) = default;
    friend auto operator<=>(const RelationTriple&, const RelationTriple&) = default;
};

struct LabeledPair {
    std::string seed_id;
    std::string target_id;
    RelationClass label = RelationClass::None;

    friend bool operator==(const LabeledPair&, const LabeledPair&) = default;
};

/// Collapses exact duplicates and removes every ordered pair that carries two
/// or more distinct relations. First-occurrence order is preserved. The
/// resulting pairs are keyed by QID.
std::vector<LabeledPair> filter_triples(std::span<const RelationTriple> triples);

/// The same rule applied to already-labeled pairs; filter_pairs is idempotent.
std::vector<LabeledPair> filter_pairs(std::span<const LabeledPair> pairs);

struct CorpusMapping {
    std::vector<LabeledPair> pairs;
    std::size_t dropped_unresolved = 0;
};

/// Rewrites QID-keyed pairs to corpus doc_ids. A QID resolves through a
/// document's `qid` field, or directly when it is itself a doc_id. Pairs with
/// an unresolvable side are dropped and counted.
CorpusMapping map_to_corpus(std::span<const LabeledPair> pairs, const Corpus& corpus);

/// Every document id that occurs on either side of a pair.
std::set<std::string> document_pool(std::span<const LabeledPair> pairs);

/// Number of ordered (s, t), s != t, over `ids` such that neither (s, t) nor
/// (t, s) is a positive pair.
std::size_t admissible_negative_count(std::span<const LabeledPair> positives,
                                      const std::set<std::string>& ids);

/// Draws `n` distinct None-labeled pairs uniformly from the admissible pairs
/// over `ids`. Throws ValidationError carrying the achievable maximum when
/// fewer than `n` admissible pairs exist.
std::vector<LabeledPair> negative_sample(std::span<const LabeledPair> positives,
                                         const std::set<std::string>& ids, std::size_t n,
                                         std::uint64_t rng_seed);

struct DatasetManifest {
    std::array<std::size_t, kNumClasses> counts{};
    std::size_t total = 0;
    std::string harvest_timestamp;
    std::string endpoint;
    std::uint64_t rng_seed = 0;

    std::size_t count(RelationClass c) const { return counts[class_index(c)]; }
    std::size_t positive_total() const;
    bool is_balanced() const { return count(RelationClass::None) == positive_total(); }
};

struct Dataset {
    std::vector<LabeledPair> pairs;
    DatasetManifest manifest;
};

struct AssembleOptions {
    std::uint64_t rng_seed = 0;
    std::string endpoint;
    std::string harvest_timestamp;
};

/// Joins positives and negatives, checks that every id resolves in the corpus
/// (ValidationError listing the missing ids otherwise) and shuffles with the
/// manifest seed.
Dataset assemble_dataset(std::span<const LabeledPair> positives,
                         std::span<const LabeledPair> negatives, const Corpus& corpus,
                         const AssembleOptions& options);

DatasetManifest tally(std::span<const LabeledPair> pairs);

void write_pairs(const std::filesystem::path& path, std::span<const LabeledPair> pairs);
std::vector<LabeledPair> read_pairs(const std::filesystem::path& path);

void write_manifest(const std::filesystem::path& path, const DatasetManifest& manifest);
DatasetManifest read_manifest(const std::filesystem::path& path);

}  // namespace semrel
