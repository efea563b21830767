#include "run_config.hpp"

#include <fstream>
#include <set>

#include "semrel/errors.hpp"

namespace semrel::cli {

using nlohmann::json;

Embedder parse_embedder(std::string_view name) {
    if (name == "avgglove") return Embedder::AvgGlove;
    if (name == "pvdbow") return Embedder::Pvdbow;
    throw ValidationError("unknown embedder '" + std::string(name) + "' (expected avgglove|pvdbow)");
}

std::string_view embedder_flag(Embedder e) { return e == Embedder::AvgGlove ? "avgglove" : "pvdbow"; }

std::string_view embedder_model_name(Embedder e) {
    return e == Embedder::AvgGlove ? "AvgGloVe" : "PV-DBOW";
}

void RunConfig::validate() const {
    if (k < 2) throw ValidationError("k must be at least 2");
    if (jobs == 0) throw ValidationError("jobs must be at least 1");
    if (sparql_endpoint.empty()) throw ValidationError("sparql_endpoint is empty");
}

namespace {

void check_keys(const json& j, const std::set<std::string>& allowed, const std::string& where) {
    if (!j.is_object()) throw ValidationError(where + " must be a JSON object");
    for (const auto& [key, value] : j.items()) {
        if (!allowed.contains(key)) throw ValidationError("unknown key '" + key + "' in " + where);
    }
}

PvdbowConfig pvdbow_from_json(const json& j) {
    check_keys(j,
               {"dim", "window", "negative_samples", "epochs", "min_word_count",
                "initial_learning_rate", "min_learning_rate", "sample", "rng_seed"},
               "pvdbow");
    PvdbowConfig c;
    c.dim = j.value("dim", c.dim);
    c.window = j.value("window", c.window);
    c.negative_samples = j.value("negative_samples", c.negative_samples);
    c.epochs = j.value("epochs", c.epochs);
    c.min_word_count = j.value("min_word_count", c.min_word_count);
    c.initial_learning_rate = j.value("initial_learning_rate", c.initial_learning_rate);
    c.min_learning_rate = j.value("min_learning_rate", c.min_learning_rate);
    c.sample = j.value("sample", c.sample);
    c.rng_seed = j.value("rng_seed", c.rng_seed);
    return c;
}

HarvestOptions harvest_from_json(const json& j) {
    check_keys(j,
               {"page_size", "per_property_sample", "candidate_pool", "order", "max_retries",
                "retry_backoff_ms", "expansion_batch", "cache_dir"},
               "harvest");
    HarvestOptions h;
    h.page_size = j.value("page_size", h.page_size);
    if (j.contains("per_property_sample")) h.per_property_sample = j.at("per_property_sample").get<std::size_t>();
    if (j.contains("candidate_pool")) h.candidate_pool = j.at("candidate_pool").get<std::size_t>();
    const auto order = j.value("order", std::string("random"));
    if (order == "random") {
        h.order = SamplingOrder::Random;
    } else if (order == "first") {
        h.order = SamplingOrder::FirstN;
    } else {
        throw ValidationError("harvest.order must be 'random' or 'first'");
    }
    h.max_retries = j.value("max_retries", h.max_retries);
    h.retry_backoff = std::chrono::milliseconds(j.value("retry_backoff_ms", h.retry_backoff.count()));
    h.expansion_batch = j.value("expansion_batch", h.expansion_batch);
    if (j.contains("cache_dir")) h.cache_dir = j.at("cache_dir").get<std::string>();
    return h;
}

}  // namespace

RunConfig run_config_from_json(const json& j) {
    check_keys(j,
               {"corpus", "pairs", "word_vectors", "doc_vectors", "stopwords", "model",
                "output_dir", "embedder", "scheme", "k", "seed", "jobs", "sparql_endpoint", "mlp",
                "pvdbow", "harvest"},
               "config");
    RunConfig c;
    try {
        auto path = [&](const char* key, std::filesystem::path& out) {
            if (j.contains(key)) out = j.at(key).get<std::string>();
        };
        path("corpus", c.corpus);
        path("pairs", c.pairs);
        path("word_vectors", c.word_vectors);
        path("doc_vectors", c.doc_vectors);
        path("stopwords", c.stopwords);
        path("model", c.model);
        path("output_dir", c.output_dir);
        if (j.contains("embedder")) c.embedder = parse_embedder(j.at("embedder").get<std::string>());
        if (j.contains("scheme")) c.scheme = parse_scheme(j.at("scheme").get<std::string>());
        c.k = j.value("k", c.k);
        c.rng_seed = j.value("seed", c.rng_seed);
        c.jobs = j.value("jobs", c.jobs);
        c.sparql_endpoint = j.value("sparql_endpoint", c.sparql_endpoint);
        if (j.contains("mlp")) c.mlp = j.at("mlp").get<MlpConfig>();
        if (j.contains("pvdbow")) c.pvdbow = pvdbow_from_json(j.at("pvdbow"));
        if (j.contains("harvest")) c.harvest = harvest_from_json(j.at("harvest"));
    } catch (const json::exception& e) {
        throw ValidationError(std::string("config: ") + e.what());
    }
    return c;
}

RunConfig load_run_config(const std::filesystem::path& path) {
    require_input(path, "config");
    std::ifstream in(path);
    if (!in) throw IoError("cannot read config " + path.string());
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
    return run_config_from_json(j);
}

void require_input(const std::filesystem::path& path, std::string_view what) {
    if (path.empty()) throw ValidationError("no " + std::string(what) + " path given");
    if (!std::filesystem::exists(path)) {
        throw IoError(std::string(what) + " not found: " + path.string());
    }
}

}  // namespace semrel::cli
