#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "semrel/dataset.hpp"
#include "semrel/errors.hpp"

namespace semrel {

inline constexpr const char* kDefaultSparqlEndpoint = "https://query.wikidata.org/sparql";

/// Raised for transport failures. `retryable()` distinguishes throttling,
/// server errors and connection failures from permanent client errors.
class SparqlError : public IoError {
public:
    SparqlError(const std::string& what, bool retryable)
        : IoError(what), retryable_(retryable) {}
    bool retryable() const { return retryable_; }

private:
    bool retryable_;
};

/// Executes one SPARQL SELECT and returns the raw
/// application/sparql-results+json body.
class SparqlTransport {
public:
    virtual ~SparqlTransport() = default;
    virtual std::string select(const std::string& query) = 0;
    virtual std::string describe() const = 0;
};

class HttpSparqlTransport : public SparqlTransport {
public:
    explicit HttpSparqlTransport(std::string endpoint_url,
                                 std::chrono::seconds timeout = std::chrono::seconds(120));
    std::string select(const std::string& query) override;
    std::string describe() const override { return endpoint_; }

private:
    std::string endpoint_;
    std::string origin_;
    std::string path_;
    std::chrono::seconds timeout_;
};

enum class SamplingOrder { Random, FirstN };

struct HarvestOptions {
    std::size_t page_size = 5000;
    // Per-property sample size; nullopt keeps every harvested triple.
    std::optional<std::size_t> per_property_sample;
    // Stop paginating a property once this many candidates were collected.
    std::optional<std::size_t> candidate_pool;
    SamplingOrder order = SamplingOrder::Random;
    std::uint64_t rng_seed = 0;
    int max_retries = 3;
    std::chrono::milliseconds retry_backoff{2000};
    std::size_t expansion_batch = 200;
    // When set, each property's triples are checkpointed here and reused.
    std::optional<std::filesystem::path> cache_dir;
};

std::string relation_query(RelationClass relation, std::size_t limit, std::size_t offset);
std::string expansion_query(std::span<const std::string> seed_qids, std::size_t limit,
                            std::size_t offset);

struct BindingParse {
    std::vector<RelationTriple> triples;
    std::size_t raw_bindings = 0;
    std::size_t missing_sitelink = 0;
    std::size_t unknown_property = 0;
};

/// Parses a SPARQL JSON result. Bindings: ?seed ?target and either a fixed
/// relation or a ?prop binding; ?seedArticle/?targetArticle must be bound for
/// a triple to be kept. Throws ParseError naming the offending binding.
BindingParse parse_relation_bindings(const nlohmann::json& results,
                                     std::optional<RelationClass> fixed_relation);

/// Checkpoint store for harvested triples, one JSONL file per property plus
/// a meta.json holding the endpoint and harvest timestamp.
class HarvestCache {
public:
    explicit HarvestCache(std::filesystem::path dir);

    std::optional<std::vector<RelationTriple>> load(const std::string& key) const;
    void store(const std::string& key, std::span<const RelationTriple> triples);

    // Returns the recorded harvest timestamp, recording `now` on first use.
    std::string harvest_timestamp(const std::string& endpoint);

private:
    std::filesystem::path dir_;
    mutable std::mutex mutex_;
};

std::vector<RelationTriple> fetch_relations(SparqlTransport& transport,
                                            const std::set<RelationClass>& relations,
                                            const HarvestOptions& options);

std::vector<RelationTriple> fetch_relations(const std::string& endpoint_url,
                                            const std::set<RelationClass>& relations,
                                            const HarvestOptions& options);

/// Adds every statement among the nine properties whose two items both
/// already occur in `triples`. The result is a superset of the input,
/// input order first.
std::vector<RelationTriple> expand_missing_relations(SparqlTransport& transport,
                                                     std::span<const RelationTriple> triples,
                                                     const HarvestOptions& options);

std::vector<RelationTriple> expand_missing_relations(const std::string& endpoint_url,
                                                     std::span<const RelationTriple> triples,
                                                     const HarvestOptions& options);

nlohmann::json triple_to_json(const RelationTriple& triple);
RelationTriple triple_from_json(const nlohmann::json& j);

}  // namespace semrel
