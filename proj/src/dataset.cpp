#include "semrel/dataset.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <unordered_map>
#include <unordered_set>

#include "jsonl.hpp"
#include "semrel/errors.hpp"

namespace semrel {
namespace {

using nlohmann::json;

std::string required_string(const json& j, const char* field, const std::string& where) {
    auto it = j.find(field);
    if (it == j.end() || !it->is_string()) {
        throw ParseError(where + ": missing string field '" + field + "'");
    }
    return it->get<std::string>();
}

struct PairKey {
    std::string seed;
    std::string target;
    bool operator==(const PairKey&) const = default;
};

struct PairKeyHash {
    std::size_t operator()(const PairKey& k) const {
        std::size_t h = std::hash<std::string>{}(k.seed);
        return h ^ (std::hash<std::string>{}(k.target) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
    }
};

}  // namespace

CorpusLoadResult load_corpus(const std::filesystem::path& path) {
    CorpusLoadResult result;
    detail::for_each_json_line(path, [&](const json& j, std::size_t line_no) {
        const auto where = detail::location(path, line_no);
        if (!j.is_object()) throw ParseError(where + ": expected an object");
        Document doc;
        doc.doc_id = required_string(j, "doc_id", where);
        doc.title = j.value("title", std::string());
        doc.text = j.value("text", std::string());
        if (auto q = j.find("qid"); q != j.end() && q->is_string()) doc.qid = q->get<std::string>();
        if (result.documents.contains(doc.doc_id)) {
            throw ValidationError(where + ": duplicate doc_id '" + doc.doc_id + "'");
        }
        if (doc.text.empty()) {
            ++result.dropped_empty_text;
            return;
        }
        std::string id = doc.doc_id;
        result.documents.emplace(std::move(id), std::move(doc));
    });
    return result;
}

void write_corpus(const std::filesystem::path& path, const Corpus& corpus) {
    auto out = detail::open_output(path);
    for (const auto& [id, doc] : corpus) {
        json j{{"doc_id", doc.doc_id}};
        if (doc.qid) j["qid"] = *doc.qid;
        j["title"] = doc.title;
        j["text"] = doc.text;
        out << j.dump() << '\n';
    }
}

std::vector<LabeledPair> filter_pairs(std::span<const LabeledPair> pairs) {
    // Distinct labels seen per ordered pair.
    std::unordered_map<PairKey, std::vector<RelationClass>, PairKeyHash> labels;
    for (const auto& p : pairs) {
        auto& seen = labels[{p.seed_id, p.target_id}];
        if (std::find(seen.begin(), seen.end(), p.label) == seen.end()) seen.push_back(p.label);
    }
    std::vector<LabeledPair> out;
    std::unordered_set<PairKey, PairKeyHash> emitted;
    for (const auto& p : pairs) {
        PairKey key{p.seed_id, p.target_id};
        if (labels[key].size() > 1) continue;
        if (emitted.insert(key).second) out.push_back(p);
    }
    return out;
}

std::vector<LabeledPair> filter_triples(std::span<const RelationTriple> triples) {
    std::vector<LabeledPair> pairs;
    pairs.reserve(triples.size());
    for (const auto& t : triples) {
        if (!is_positive(t.relation)) {
            throw ValidationError("relation triple " + t.seed_qid + " -> " + t.target_qid +
                                  " carries the None class");
        }
        pairs.push_back({t.seed_qid, t.target_qid, t.relation});
    }
    return filter_pairs(pairs);
}

CorpusMapping map_to_corpus(std::span<const LabeledPair> pairs, const Corpus& corpus) {
    std::unordered_map<std::string, std::string> by_qid;
    for (const auto& [id, doc] : corpus) {
        if (doc.qid) by_qid.emplace(*doc.qid, id);
    }
    auto resolve = [&](const std::string& key) -> const std::string* {
        if (auto it = by_qid.find(key); it != by_qid.end()) return &it->second;
        if (auto it = corpus.find(key); it != corpus.end()) return &it->first;
        return nullptr;
    };
    CorpusMapping out;
    for (const auto& p : pairs) {
        const auto* s = resolve(p.seed_id);
        const auto* t = resolve(p.target_id);
        if (s == nullptr || t == nullptr) {
            ++out.dropped_unresolved;
            continue;
        }
        out.pairs.push_back({*s, *t, p.label});
    }
    // Two QIDs can map onto one article; keep the single-label guarantee.
    out.pairs = filter_pairs(out.pairs);
    return out;
}

std::set<std::string> document_pool(std::span<const LabeledPair> pairs) {
    std::set<std::string> ids;
    for (const auto& p : pairs) {
        ids.insert(p.seed_id);
        ids.insert(p.target_id);
    }
    return ids;
}

namespace {

struct NegativeSpace {
    std::vector<const std::string*> ids;
    // Ordered index pairs (i, j), i != j, blocked in either direction.
    std::unordered_set<std::uint64_t> blocked;

    std::uint64_t key(std::size_t i, std::size_t j) const { return i * ids.size() + j; }
    std::size_t total() const { return ids.size() * (ids.size() == 0 ? 0 : ids.size() - 1); }
    std::size_t admissible() const { return total() - blocked.size(); }
};

NegativeSpace build_space(std::span<const LabeledPair> positives, const std::set<std::string>& ids) {
    NegativeSpace space;
    std::unordered_map<std::string_view, std::size_t> index;
    for (const auto& id : ids) {
        index.emplace(id, space.ids.size());
        space.ids.push_back(&id);
    }
    for (const auto& p : positives) {
        auto s = index.find(p.seed_id);
        auto t = index.find(p.target_id);
        if (s == index.end() || t == index.end() || s->second == t->second) continue;
        space.blocked.insert(space.key(s->second, t->second));
        space.blocked.insert(space.key(t->second, s->second));
    }
    return space;
}

}  // namespace

std::size_t admissible_negative_count(std::span<const LabeledPair> positives,
                                      const std::set<std::string>& ids) {
    return build_space(positives, ids).admissible();
}

std::vector<LabeledPair> negative_sample(std::span<const LabeledPair> positives,
                                         const std::set<std::string>& ids, std::size_t n,
                                         std::uint64_t rng_seed) {
    std::vector<LabeledPair> out;
    if (n == 0) return out;
    const auto space = build_space(positives, ids);
    const std::size_t admissible = space.admissible();
    if (n > admissible) {
        throw ValidationError("negative sampling: requested " + std::to_string(n) +
                              " pairs but only " + std::to_string(admissible) +
                              " admissible pairs exist");
    }
    std::mt19937_64 rng(rng_seed);
    const std::size_t m = space.ids.size();
    out.reserve(n);
    auto emit = [&](std::size_t i, std::size_t j) {
        out.push_back({*space.ids[i], *space.ids[j], RelationClass::None});
    };

    if (2 * n > admissible) {
        // Dense request: enumerate and take a uniform n-subset.
        std::vector<std::uint64_t> candidates;
        candidates.reserve(admissible);
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t j = 0; j < m; ++j) {
                if (i != j && !space.blocked.contains(space.key(i, j))) {
                    candidates.push_back(space.key(i, j));
                }
            }
        }
        std::shuffle(candidates.begin(), candidates.end(), rng);
        for (std::size_t c = 0; c < n; ++c) emit(candidates[c] / m, candidates[c] % m);
        return out;
    }

    std::uniform_int_distribution<std::size_t> pick(0, m - 1);
    std::unordered_set<std::uint64_t> chosen;
    while (out.size() < n) {
        const std::size_t i = pick(rng);
        const std::size_t j = pick(rng);
        if (i == j) continue;
        const auto k = space.key(i, j);
        if (space.blocked.contains(k) || !chosen.insert(k).second) continue;
        emit(i, j);
    }
    return out;
}

std::size_t DatasetManifest::positive_total() const {
    std::size_t sum = 0;
    for (auto c : kPositiveClasses) sum += count(c);
    return sum;
}

DatasetManifest tally(std::span<const LabeledPair> pairs) {
    DatasetManifest m;
    for (const auto& p : pairs) ++m.counts[class_index(p.label)];
    m.total = pairs.size();
    return m;
}

Dataset assemble_dataset(std::span<const LabeledPair> positives,
                         std::span<const LabeledPair> negatives, const Corpus& corpus,
                         const AssembleOptions& options) {
    Dataset ds;
    ds.pairs.reserve(positives.size() + negatives.size());
    ds.pairs.insert(ds.pairs.end(), positives.begin(), positives.end());
    ds.pairs.insert(ds.pairs.end(), negatives.begin(), negatives.end());

    std::set<std::string> missing;
    for (const auto& p : ds.pairs) {
        if (!corpus.contains(p.seed_id)) missing.insert(p.seed_id);
        if (!corpus.contains(p.target_id)) missing.insert(p.target_id);
    }
    if (!missing.empty()) {
        std::string msg = "dataset references " + std::to_string(missing.size()) +
                          " doc_id(s) missing from the corpus:";
        std::size_t shown = 0;
        for (const auto& id : missing) {
            if (shown++ == 20) {
                msg += " ...";
                break;
            }
            msg += " " + id;
        }
        throw ValidationError(msg);
    }

    std::mt19937_64 rng(options.rng_seed);
    std::shuffle(ds.pairs.begin(), ds.pairs.end(), rng);

    ds.manifest = tally(ds.pairs);
    ds.manifest.rng_seed = options.rng_seed;
    ds.manifest.endpoint = options.endpoint;
    ds.manifest.harvest_timestamp = options.harvest_timestamp;
    return ds;
}

void write_pairs(const std::filesystem::path& path, std::span<const LabeledPair> pairs) {
    auto out = detail::open_output(path);
    for (const auto& p : pairs) {
        json j{{"seed_id", p.seed_id}, {"target_id", p.target_id}, {"label", pid(p.label)}};
        out << j.dump() << '\n';
    }
    if (!out) throw IoError("write failure on " + path.string());
}

std::vector<LabeledPair> read_pairs(const std::filesystem::path& path) {
    std::vector<LabeledPair> pairs;
    detail::for_each_json_line(path, [&](const json& j, std::size_t line_no) {
        const auto where = detail::location(path, line_no);
        LabeledPair p;
        p.seed_id = required_string(j, "seed_id", where);
        p.target_id = required_string(j, "target_id", where);
        const auto label = required_string(j, "label", where);
        auto c = relation_from_pid(label);
        if (!c) throw ValidationError(where + ": unknown label '" + label + "'");
        p.label = *c;
        pairs.push_back(std::move(p));
    });
    return pairs;
}

void write_manifest(const std::filesystem::path& path, const DatasetManifest& m) {
    json counts = json::object();
    for (auto c : kAllClasses) counts[std::string(pid(c))] = m.count(c);
    json j{{"counts", counts},
           {"total", m.total},
           {"harvest_timestamp", m.harvest_timestamp},
           {"endpoint", m.endpoint},
           {"rng_seed", m.rng_seed}};
    auto out = detail::open_output(path);
    out << j.dump(2) << '\n';
}

DatasetManifest read_manifest(const std::filesystem::path& path) {
    auto in = detail::open_input(path);
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
    DatasetManifest m;
    for (auto c : kAllClasses) m.counts[class_index(c)] = j.at("counts").value(std::string(pid(c)), 0);
    m.total = j.value("total", std::size_t{0});
    m.harvest_timestamp = j.value("harvest_timestamp", std::string());
    m.endpoint = j.value("endpoint", std::string());
    m.rng_seed = j.value("rng_seed", std::uint64_t{0});
    std::size_t sum = 0;
    for (auto n : m.counts) sum += n;
    if (sum != m.total) {
        throw ValidationError(path.string() + ": manifest total " + std::to_string(m.total) +
                              " != sum of class counts " + std::to_string(sum));
    }
    return m;
}

}  // namespace semrel
