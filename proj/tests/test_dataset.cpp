#include <algorithm>
#include <map>
#include <random>
#include <set>

#include <gtest/gtest.h>

#include "semrel/dataset.hpp"
#include "semrel/errors.hpp"
#include "support/temp_dir.hpp"

using namespace semrel;
using semrel::testing::slurp;
using semrel::testing::TempDir;

namespace {

RelationTriple tr(const char* s, const char* t, RelationClass r) { return {s, t, r}; }

Corpus corpus_of(std::initializer_list<const char*> ids) {
    Corpus c;
    for (const char* id : ids) c[id] = Document{id, std::nullopt, id, std::string("text of ") + id};
    return c;
}

}  // namespace

TEST(LoadCorpus, ThreeRecords) {
    TempDir dir;
    auto p = dir.write("c.jsonl",
                       R"({"doc_id":"a","title":"A","text":"alpha"}
{"doc_id":"b","qid":"Q2","title":"B","text":"beta"}
{"doc_id":"c","title":"C","text":"gamma"}
)");
    auto r = load_corpus(p);
    EXPECT_EQ(r.documents.size(), 3u);
    EXPECT_EQ(r.dropped_empty_text, 0u);
    EXPECT_EQ(r.documents.at("b").qid, "Q2");
}

TEST(LoadCorpus, DuplicateIdIsFatal) {
    TempDir dir;
    auto p = dir.write("c.jsonl",
                       R"({"doc_id":"a","title":"A","text":"alpha"}
{"doc_id":"a","title":"A2","text":"again"}
)");
    try {
        load_corpus(p);
        FAIL();
    } catch (const ValidationError& e) {
        EXPECT_NE(std::string(e.what()).find("duplicate doc_id"), std::string::npos);
    }
}

TEST(LoadCorpus, EmptyTextDropped) {
    TempDir dir;
    auto p = dir.write("c.jsonl",
                       R"({"doc_id":"a","title":"A","text":"alpha"}
{"doc_id":"b","title":"B","text":""}
)");
    auto r = load_corpus(p);
    EXPECT_EQ(r.documents.size(), 1u);
    EXPECT_EQ(r.dropped_empty_text, 1u);
}

TEST(LoadCorpus, MissingFileIsIoError) {
    EXPECT_THROW(load_corpus("/nonexistent/corpus.jsonl"), IoError);
}

TEST(LoadCorpus, RoundTrip) {
    TempDir dir;
    auto c = corpus_of({"x", "y"});
    c["x"].qid = "Q9";
    write_corpus(dir / "c.jsonl", c);
    auto back = load_corpus(dir / "c.jsonl").documents;
    ASSERT_EQ(back.size(), 2u);
    EXPECT_EQ(back.at("x").qid, "Q9");
    EXPECT_EQ(back.at("y").text, "text of y");
}

TEST(FilterTriples, Dedup) {
    std::vector<RelationTriple> in{tr("A", "B", RelationClass::CountryOfCitizenship),
                                   tr("A", "B", RelationClass::CountryOfCitizenship)};
    auto out = filter_triples(in);
    ASSERT_EQ(out.size(), 1u);
    EXPECT_EQ(out[0], (LabeledPair{"A", "B", RelationClass::CountryOfCitizenship}));
}

TEST(FilterTriples, MultiLabelRemoved) {
    std::vector<RelationTriple> in{tr("A", "B", RelationClass::CountryOfCitizenship),
                                   tr("A", "B", RelationClass::EducatedAt)};
    EXPECT_TRUE(filter_triples(in).empty());
}

TEST(FilterTriples, DirectionalPairsAreDistinct) {
    std::vector<RelationTriple> in{tr("A", "B", RelationClass::CountryOfCitizenship),
                                   tr("B", "A", RelationClass::CountryOfCitizenship)};
    auto out = filter_triples(in);
    ASSERT_EQ(out.size(), 2u);
    EXPECT_EQ(out[0].seed_id, "A");
    EXPECT_EQ(out[1].seed_id, "B");
}

TEST(FilterPairs, IdempotentAndSingleLabelled) {
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<int> node(0, 5);
    std::uniform_int_distribution<std::size_t> cls(0, kNumPositiveClasses - 1);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<LabeledPair> in;
        for (int i = 0; i < 30; ++i) {
            in.push_back({std::to_string(node(rng)), std::to_string(node(rng)),
                          kPositiveClasses[cls(rng)]});
        }
        auto once = filter_pairs(in);
        EXPECT_EQ(filter_pairs(once), once);
        // brute force: keep a pair iff it has exactly one distinct label
        std::map<std::pair<std::string, std::string>, std::set<RelationClass>> labels;
        for (const auto& p : in) labels[{p.seed_id, p.target_id}].insert(p.label);
        std::size_t expected = 0;
        for (const auto& [k, v] : labels) expected += v.size() == 1 ? 1 : 0;
        EXPECT_EQ(once.size(), expected);
        for (const auto& p : once) EXPECT_EQ((labels[{p.seed_id, p.target_id}].size()), 1u);
    }
}

TEST(MapToCorpus, ResolvesQidFieldAndDropsUnknown) {
    auto c = corpus_of({"Alpha", "Q5"});
    c["Alpha"].qid = "Q1";
    std::vector<LabeledPair> in{{"Q1", "Q5", RelationClass::FacetOf},
                                {"Q1", "Q404", RelationClass::FacetOf}};
    auto m = map_to_corpus(in, c);
    ASSERT_EQ(m.pairs.size(), 1u);
    EXPECT_EQ(m.pairs[0], (LabeledPair{"Alpha", "Q5", RelationClass::FacetOf}));
    EXPECT_EQ(m.dropped_unresolved, 1u);
}

TEST(NegativeSample, ZeroRequested) {
    std::vector<LabeledPair> pos{{"a", "b", RelationClass::Employer}};
    EXPECT_TRUE(negative_sample(pos, {"a", "b", "c"}, 0, 1).empty());
}

TEST(NegativeSample, NoAdmissiblePair) {
    std::vector<LabeledPair> pos;
    for (const char* s : {"a", "b", "c"}) {
        for (const char* t : {"a", "b", "c"}) {
            if (std::string(s) != t) pos.push_back({s, t, RelationClass::OppositeOf});
        }
    }
    EXPECT_EQ(admissible_negative_count(pos, {"a", "b", "c"}), 0u);
    EXPECT_THROW(negative_sample(pos, {"a", "b", "c"}, 1, 1), ValidationError);
}

TEST(NegativeSample, ReportsAchievableMaximum) {
    std::vector<LabeledPair> pos{{"a", "b", RelationClass::Employer}};
    // 3 ids -> 6 ordered pairs; a<->b blocked both ways -> 4 admissible
    EXPECT_EQ(admissible_negative_count(pos, {"a", "b", "c"}), 4u);
    try {
        negative_sample(pos, {"a", "b", "c"}, 5, 1);
        FAIL();
    } catch (const ValidationError& e) {
        EXPECT_NE(std::string(e.what()).find('4'), std::string::npos);
    }
    EXPECT_EQ(negative_sample(pos, {"a", "b", "c"}, 4, 1).size(), 4u);
}

TEST(NegativeSample, DisjointFromPositivesBothDirections) {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 100; ++trial) {
        std::uniform_int_distribution<int> node(0, 7);
        std::vector<LabeledPair> pos;
        for (int i = 0; i < 12; ++i) {
            int s = node(rng), t = node(rng);
            if (s != t) pos.push_back({std::to_string(s), std::to_string(t), RelationClass::HasQuality});
        }
        auto pool = document_pool(pos);
        const std::size_t n = std::min(pos.size(), admissible_negative_count(pos, pool));
        auto neg = negative_sample(pos, pool, n, trial);
        ASSERT_EQ(neg.size(), n);
        std::set<std::pair<std::string, std::string>> seen;
        for (const auto& p : neg) {
            EXPECT_EQ(p.label, RelationClass::None);
            EXPECT_NE(p.seed_id, p.target_id);
            EXPECT_TRUE(pool.contains(p.seed_id) && pool.contains(p.target_id));
            EXPECT_TRUE(seen.insert({p.seed_id, p.target_id}).second);
            for (const auto& q : pos) {
                EXPECT_FALSE(q.seed_id == p.seed_id && q.target_id == p.target_id);
                EXPECT_FALSE(q.seed_id == p.target_id && q.target_id == p.seed_id);
            }
        }
    }
}

TEST(NegativeSample, Deterministic) {
    std::vector<LabeledPair> pos{{"a", "b", RelationClass::Employer},
                                 {"c", "d", RelationClass::Employer}};
    auto pool = document_pool(pos);
    EXPECT_EQ(negative_sample(pos, pool, 3, 42), negative_sample(pos, pool, 3, 42));
}

TEST(Assemble, EmptyInputs) {
    auto d = assemble_dataset({}, {}, {}, {});
    EXPECT_TRUE(d.pairs.empty());
    EXPECT_EQ(d.manifest.total, 0u);
    for (auto c : kAllClasses) EXPECT_EQ(d.manifest.count(c), 0u);
}

TEST(Assemble, TwoPlusTwo) {
    auto c = corpus_of({"a", "b", "c", "d"});
    std::vector<LabeledPair> pos{{"a", "b", RelationClass::Employer},
                                {"c", "d", RelationClass::FacetOf}};
    auto neg = negative_sample(pos, document_pool(pos), 2, 5);
    auto d = assemble_dataset(pos, neg, c, {5, "x", "t"});
    EXPECT_EQ(d.manifest.total, 4u);
    EXPECT_EQ(d.manifest.count(RelationClass::None), 2u);
    EXPECT_TRUE(d.manifest.is_balanced());
}

TEST(Assemble, MissingIdsListed) {
    auto c = corpus_of({"a"});
    std::vector<LabeledPair> pos{{"a", "zz", RelationClass::Employer}};
    try {
        assemble_dataset(pos, {}, c, {});
        FAIL();
    } catch (const ValidationError& e) {
        EXPECT_NE(std::string(e.what()).find("zz"), std::string::npos);
    }
}

TEST(Assemble, FullScaleManifest) {
    const std::array<std::size_t, 9> reference_counts{3636, 4048, 1798, 1557, 1343, 698, 1022, 929, 1053};
    std::vector<LabeledPair> pos;
    Corpus c;
    std::size_t next = 0;
    for (std::size_t k = 0; k < reference_counts.size(); ++k) {
        for (std::size_t i = 0; i < reference_counts[k]; ++i) {
            const std::string s = "d" + std::to_string(next++);
            const std::string t = "d" + std::to_string(next++);
            c[s] = Document{s, std::nullopt, s, "x"};
            c[t] = Document{t, std::nullopt, t, "x"};
            pos.push_back({s, t, kPositiveClasses[k]});
        }
    }
    ASSERT_EQ(pos.size(), 16084u);
    auto neg = negative_sample(pos, document_pool(pos), pos.size(), 9);
    auto d = assemble_dataset(pos, neg, c, {9, "e", "t"});
    EXPECT_EQ(d.manifest.total, 32168u);
    for (std::size_t k = 0; k < reference_counts.size(); ++k) {
        EXPECT_EQ(d.manifest.count(kPositiveClasses[k]), reference_counts[k]);
    }
    EXPECT_EQ(d.manifest.count(RelationClass::None), 16084u);
}

TEST(DatasetFiles, RoundTripAndByteIdentical) {
    TempDir dir;
    auto c = corpus_of({"a", "b", "c", "d"});
    std::vector<LabeledPair> pos{{"a", "b", RelationClass::Employer},
                                {"c", "d", RelationClass::FacetOf}};
    auto build = [&](const std::string& sub) {
        auto neg = negative_sample(pos, document_pool(pos), 2, 5);
        auto d = assemble_dataset(pos, neg, c, {5, "http://e", "2020-01-01T00:00:00Z"});
        write_pairs(dir / (sub + "/pairs.jsonl"), d.pairs);
        write_manifest(dir / (sub + "/manifest.json"), d.manifest);
        return d;
    };
    auto d1 = build("one");
    build("two");
    EXPECT_EQ(slurp(dir / "one/pairs.jsonl"), slurp(dir / "two/pairs.jsonl"));
    EXPECT_EQ(slurp(dir / "one/manifest.json"), slurp(dir / "two/manifest.json"));
    EXPECT_EQ(read_pairs(dir / "one/pairs.jsonl"), d1.pairs);
    auto m = read_manifest(dir / "one/manifest.json");
    EXPECT_EQ(m.counts, d1.manifest.counts);
    EXPECT_EQ(m.endpoint, "http://e");
    EXPECT_EQ(m.rng_seed, 5u);
}

TEST(DatasetFiles, BadLabelNamesLine) {
    TempDir dir;
    auto p = dir.write("p.jsonl", "{\"seed_id\":\"a\",\"target_id\":\"b\",\"label\":\"P31\"}\n");
    EXPECT_THROW(read_pairs(p), ValidationError);
}
