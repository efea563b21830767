#include "semrel/sparql.hpp"

#include <algorithm>
#include <ctime>
#include <fstream>
#include <random>
#include <sstream>
#include <thread>
#include <unordered_set>

#include <httplib.h>

#include "jsonl.hpp"
#include "semrel/seed.hpp"

namespace semrel {
namespace {

using nlohmann::json;

constexpr const char* kPrefixes =
    "PREFIX wd: <http://www.wikidata.org/entity/>\n"
    "PREFIX wdt: <http://www.wikidata.org/prop/direct/>\n"
    "PREFIX schema: <http://schema.org/>\n";

constexpr const char* kSitelinks =
    "  ?seedArticle schema:about ?seed ; schema:isPartOf <https://en.wikipedia.org/> .\n"
    "  ?targetArticle schema:about ?target ; schema:isPartOf <https://en.wikipedia.org/> .\n";

std::string truncate(const std::string& s, std::size_t n = 200) {
    return s.size() <= n ? s : s.substr(0, n) + "...";
}

// Last path segment of an entity or property IRI.
std::string local_name(const std::string& iri) {
    auto pos = iri.find_last_of("/#");
    return pos == std::string::npos ? iri : iri.substr(pos + 1);
}

bool is_item_id(const std::string& id) {
    return id.size() > 1 && id[0] == 'Q' &&
           std::all_of(id.begin() + 1, id.end(), [](char c) { return c >= '0' && c <= '9'; });
}

const json* bound(const json& binding, const char* var) {
    auto it = binding.find(var);
    if (it == binding.end() || !it->is_object()) return nullptr;
    auto v = it->find("value");
    if (v == it->end() || !v->is_string()) return nullptr;
    return &*v;
}

std::string utc_now() {
    std::time_t t = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::uint64_t fnv1a(const std::string& s, std::uint64_t h = 0xcbf29ce484222325ULL) {
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

json run_select(SparqlTransport& transport, const std::string& query,
                const HarvestOptions& options) {
    for (int attempt = 0;; ++attempt) {
        std::string body;
        try {
            body = transport.select(query);
        } catch (const SparqlError& e) {
            if (!e.retryable()) throw;
            if (attempt >= options.max_retries) {
                throw SparqlError(std::string(e.what()) + " (gave up after " +
                                      std::to_string(attempt + 1) + " attempts)",
                                  true);
            }
            std::this_thread::sleep_for(options.retry_backoff * (1 << std::min(attempt, 6)));
            continue;
        }
        try {
            return json::parse(body);
        } catch (const json::parse_error& e) {
            throw ParseError("SPARQL response from " + transport.describe() +
                             " is not JSON: " + e.what() + " body: " + truncate(body));
        }
    }
}

std::vector<std::string> split_url(const std::string& url) {
    auto scheme_end = url.find("://");
    if (scheme_end == std::string::npos) {
        throw ValidationError("SPARQL endpoint must be an absolute URL: " + url);
    }
    auto path_start = url.find('/', scheme_end + 3);
    if (path_start == std::string::npos) return {url, "/"};
    return {url.substr(0, path_start), url.substr(path_start)};
}

}  // namespace

HttpSparqlTransport::HttpSparqlTransport(std::string endpoint_url, std::chrono::seconds timeout)
    : endpoint_(std::move(endpoint_url)), timeout_(timeout) {
    auto parts = split_url(endpoint_);
    origin_ = parts[0];
    path_ = parts[1];
}

std::string HttpSparqlTransport::select(const std::string& query) {
    httplib::Client client(origin_);
    client.set_connection_timeout(timeout_);
    client.set_read_timeout(timeout_);
    client.set_follow_location(true);
    httplib::Headers headers{{"Accept", "application/sparql-results+json"},
                             {"User-Agent", "semrel-harvester/1.0"}};
    httplib::Params params{{"query", query}};
    auto res = client.Post(path_, headers, params);
    if (!res) {
        throw SparqlError("SPARQL endpoint " + endpoint_ +
                              ": request failed: " + httplib::to_string(res.error()),
                          true);
    }
    if (res->status != 200) {
        const bool retryable = res->status == 429 || res->status >= 500;
        throw SparqlError("SPARQL endpoint " + endpoint_ + ": HTTP " +
                              std::to_string(res->status) + ": " + truncate(res->body),
                          retryable);
    }
    return res->body;
}

std::string relation_query(RelationClass relation, std::size_t limit, std::size_t offset) {
    if (!is_positive(relation)) throw ValidationError("cannot harvest the None class");
    std::ostringstream q;
    q << kPrefixes << "SELECT ?seed ?target ?seedArticle ?targetArticle WHERE {\n"
      << "  ?seed wdt:" << pid(relation) << " ?target .\n"
      << kSitelinks << "}\nORDER BY ?seed ?target\nLIMIT " << limit << " OFFSET " << offset
      << "\n";
    return q.str();
}

std::string expansion_query(std::span<const std::string> seed_qids, std::size_t limit,
                            std::size_t offset) {
    std::ostringstream q;
    q << kPrefixes << "SELECT ?seed ?prop ?target ?seedArticle ?targetArticle WHERE {\n"
      << "  VALUES ?seed {";
    for (const auto& s : seed_qids) q << " wd:" << s;
    q << " }\n  VALUES ?prop {";
    for (auto c : kPositiveClasses) q << " wdt:" << pid(c);
    q << " }\n  ?seed ?prop ?target .\n"
      << kSitelinks << "}\nORDER BY ?seed ?prop ?target\nLIMIT " << limit << " OFFSET " << offset
      << "\n";
    return q.str();
}

BindingParse parse_relation_bindings(const json& results,
                                     std::optional<RelationClass> fixed_relation) {
    const json* bindings = nullptr;
    if (results.is_object()) {
        auto r = results.find("results");
        if (r != results.end() && r->is_object()) {
            auto b = r->find("bindings");
            if (b != r->end() && b->is_array()) bindings = &*b;
        }
    }
    if (bindings == nullptr) throw ParseError("SPARQL result has no results.bindings array");

    BindingParse out;
    out.raw_bindings = bindings->size();
    for (std::size_t i = 0; i < bindings->size(); ++i) {
        const json& b = (*bindings)[i];
        auto fail = [&](const std::string& why) {
            throw ParseError("SPARQL binding #" + std::to_string(i) + " " + why + ": " +
                             truncate(b.dump()));
        };
        if (!b.is_object()) fail("is not an object");
        const json* seed = bound(b, "seed");
        const json* target = bound(b, "target");
        if (seed == nullptr || target == nullptr) fail("lacks ?seed or ?target");

        RelationTriple t;
        t.seed_qid = local_name(seed->get<std::string>());
        t.target_qid = local_name(target->get<std::string>());
        if (!is_item_id(t.seed_qid) || !is_item_id(t.target_qid)) fail("has a non-item entity");

        if (fixed_relation) {
            t.relation = *fixed_relation;
        } else {
            const json* prop = bound(b, "prop");
            if (prop == nullptr) fail("lacks ?prop");
            auto c = relation_from_pid(local_name(prop->get<std::string>()));
            if (!c || !is_positive(*c)) {
                ++out.unknown_property;
                continue;
            }
            t.relation = *c;
        }
        if (bound(b, "seedArticle") == nullptr || bound(b, "targetArticle") == nullptr) {
            ++out.missing_sitelink;
            continue;
        }
        out.triples.push_back(std::move(t));
    }
    return out;
}

json triple_to_json(const RelationTriple& t) {
    return json{{"seed_qid", t.seed_qid}, {"target_qid", t.target_qid}, {"pid", pid(t.relation)}};
}

RelationTriple triple_from_json(const json& j) {
    RelationTriple t;
    t.seed_qid = j.at("seed_qid").get<std::string>();
    t.target_qid = j.at("target_qid").get<std::string>();
    t.relation = parse_label(j.at("pid").get<std::string>());
    if (!is_positive(t.relation)) throw ValidationError("cached triple carries the None class");
    return t;
}

HarvestCache::HarvestCache(std::filesystem::path dir) : dir_(std::move(dir)) {
    std::error_code ec;
    std::filesystem::create_directories(dir_, ec);
    if (ec) throw IoError("cannot create cache directory " + dir_.string() + ": " + ec.message());
}

std::optional<std::vector<RelationTriple>> HarvestCache::load(const std::string& key) const {
    std::lock_guard lock(mutex_);
    const auto path = dir_ / (key + ".jsonl");
    if (!std::filesystem::exists(path)) return std::nullopt;
    std::vector<RelationTriple> triples;
    detail::for_each_json_line(path, [&](const json& j, std::size_t line_no) {
        try {
            triples.push_back(triple_from_json(j));
        } catch (const json::exception& e) {
            throw ParseError(detail::location(path, line_no) + ": " + e.what());
        }
    });
    return triples;
}

void HarvestCache::store(const std::string& key, std::span<const RelationTriple> triples) {
    std::lock_guard lock(mutex_);
    const auto path = dir_ / (key + ".jsonl");
    const auto tmp = dir_ / (key + ".jsonl.tmp");
    {
        auto out = detail::open_output(tmp);
        for (const auto& t : triples) out << triple_to_json(t).dump() << '\n';
        if (!out) throw IoError("write failure on " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

std::string HarvestCache::harvest_timestamp(const std::string& endpoint) {
    std::lock_guard lock(mutex_);
    const auto path = dir_ / "meta.json";
    if (std::filesystem::exists(path)) {
        auto in = detail::open_input(path);
        try {
            return json::parse(in).at("harvest_timestamp").get<std::string>();
        } catch (const json::exception& e) {
            throw ParseError(path.string() + ": " + e.what());
        }
    }
    const auto now = utc_now();
    auto out = detail::open_output(path);
    out << json{{"harvest_timestamp", now}, {"endpoint", endpoint}}.dump(2) << '\n';
    return now;
}

std::vector<RelationTriple> fetch_relations(SparqlTransport& transport,
                                            const std::set<RelationClass>& relations,
                                            const HarvestOptions& options) {
    if (options.page_size == 0) throw ValidationError("page_size must be positive");
    std::optional<HarvestCache> cache;
    if (options.cache_dir) cache.emplace(*options.cache_dir);

    std::vector<RelationTriple> all;
    for (RelationClass relation : relations) {
        if (!is_positive(relation)) throw ValidationError("cannot harvest the None class");
        const std::string key(pid(relation));
        if (cache) {
            if (auto cached = cache->load(key)) {
                all.insert(all.end(), cached->begin(), cached->end());
                continue;
            }
        }

        std::vector<RelationTriple> harvested;
        for (std::size_t offset = 0;; offset += options.page_size) {
            auto page = parse_relation_bindings(
                run_select(transport, relation_query(relation, options.page_size, offset), options),
                relation);
            harvested.insert(harvested.end(), page.triples.begin(), page.triples.end());
            if (page.raw_bindings < options.page_size) break;
            if (options.candidate_pool && harvested.size() >= *options.candidate_pool) break;
            if (options.order == SamplingOrder::FirstN && options.per_property_sample &&
                harvested.size() >= *options.per_property_sample) {
                break;
            }
        }

        if (options.per_property_sample && harvested.size() > *options.per_property_sample) {
            if (options.order == SamplingOrder::Random) {
                std::mt19937_64 rng(derive_seed(options.rng_seed, class_index(relation)));
                std::shuffle(harvested.begin(), harvested.end(), rng);
            }
            harvested.resize(*options.per_property_sample);
        }
        if (cache) cache->store(key, harvested);
        all.insert(all.end(), harvested.begin(), harvested.end());
    }
    return all;
}

std::vector<RelationTriple> fetch_relations(const std::string& endpoint_url,
                                            const std::set<RelationClass>& relations,
                                            const HarvestOptions& options) {
    if (relations.empty()) return {};
    HttpSparqlTransport transport(endpoint_url);
    return fetch_relations(transport, relations, options);
}

std::vector<RelationTriple> expand_missing_relations(SparqlTransport& transport,
                                                     std::span<const RelationTriple> triples,
                                                     const HarvestOptions& options) {
    if (options.page_size == 0 || options.expansion_batch == 0) {
        throw ValidationError("page_size and expansion_batch must be positive");
    }
    std::set<std::string> items;
    for (const auto& t : triples) {
        items.insert(t.seed_qid);
        items.insert(t.target_qid);
    }
    const std::vector<std::string> item_list(items.begin(), items.end());

    std::optional<HarvestCache> cache;
    std::string key;
    if (options.cache_dir) {
        cache.emplace(*options.cache_dir);
        std::uint64_t h = 0xcbf29ce484222325ULL;
        for (const auto& q : item_list) h = fnv1a(q + "\n", h);
        std::ostringstream name;
        name << "expansion-" << std::hex << h;
        key = name.str();
    }

    std::vector<RelationTriple> found;
    bool from_cache = false;
    if (cache) {
        if (auto cached = cache->load(key)) {
            found = std::move(*cached);
            from_cache = true;
        }
    }
    if (!from_cache) {
        for (std::size_t begin = 0; begin < item_list.size(); begin += options.expansion_batch) {
            const auto end = std::min(item_list.size(), begin + options.expansion_batch);
            std::span<const std::string> batch(item_list.data() + begin, end - begin);
            for (std::size_t offset = 0;; offset += options.page_size) {
                auto page = parse_relation_bindings(
                    run_select(transport, expansion_query(batch, options.page_size, offset),
                               options),
                    std::nullopt);
                for (auto& t : page.triples) {
                    if (items.contains(t.target_qid)) found.push_back(std::move(t));
                }
                if (page.raw_bindings < options.page_size) break;
            }
        }
        if (cache) cache->store(key, found);
    }

    std::vector<RelationTriple> out(triples.begin(), triples.end());
    std::set<RelationTriple> present(triples.begin(), triples.end());
    for (auto& t : found) {
        if (present.insert(t).second) out.push_back(std::move(t));
    }
    return out;
}

std::vector<RelationTriple> expand_missing_relations(const std::string& endpoint_url,
                                                     std::span<const RelationTriple> triples,
                                                     const HarvestOptions& options) {
    if (triples.empty()) return {};
    HttpSparqlTransport transport(endpoint_url);
    return expand_missing_relations(transport, triples, options);
}

}  // namespace semrel
