#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "semrel/concat.hpp"
#include "semrel/mlp.hpp"
#include "semrel/pvdbow.hpp"
#include "semrel/sparql.hpp"

namespace semrel::cli {

enum class Embedder { AvgGlove, Pvdbow };

Embedder parse_embedder(std::string_view name);
std::string_view embedder_flag(Embedder e);
// Model column of the summary table.
std::string_view embedder_model_name(Embedder e);

struct RunConfig {
    std::filesystem::path corpus;
    std::filesystem::path pairs;
    std::filesystem::path word_vectors;
    std::filesystem::path doc_vectors;
    std::filesystem::path stopwords;
    std::filesystem::path model;
    std::filesystem::path output_dir = "out";
    Embedder embedder = Embedder::AvgGlove;
    ConcatScheme scheme = ConcatScheme::UVDiffProd;
    std::size_t k = 4;
    std::uint64_t rng_seed = 0;
    unsigned jobs = 1;
    std::string sparql_endpoint = kDefaultSparqlEndpoint;
    MlpConfig mlp;
    PvdbowConfig pvdbow;
    HarvestOptions harvest;

    void validate() const;
};

/// Reads a JSON config file over the defaults. Unknown keys are rejected.
RunConfig load_run_config(const std::filesystem::path& path);
RunConfig run_config_from_json(const nlohmann::json& j);

/// Throws ValidationError when `path` is unset and IoError when it does not exist.
void require_input(const std::filesystem::path& path, std::string_view what);

}  // namespace semrel::cli
