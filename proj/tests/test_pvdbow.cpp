#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "semrel/errors.hpp"
#include "semrel/pvdbow.hpp"

using namespace semrel;

namespace {

// Five topics, ten documents each; documents share most vocabulary with
// their topic. "dup_a" and "dup_b" carry the same text.
Corpus toy_corpus(int tokens_per_doc = 60) {
    const std::vector<std::vector<std::string>> topics = {
        {"river", "water", "fish", "boat", "bank", "stream", "flood", "bridge"},
        {"piano", "music", "song", "violin", "concert", "melody", "chord", "singer"},
        {"doctor", "hospital", "disease", "patient", "fever", "nurse", "medicine", "symptom"},
        {"soccer", "goal", "player", "match", "team", "league", "coach", "stadium"},
        {"planet", "star", "orbit", "galaxy", "comet", "moon", "telescope", "astronomy"},
    };
    Corpus c;
    std::mt19937 rng(5);
    for (std::size_t t = 0; t < topics.size(); ++t) {
        std::uniform_int_distribution<std::size_t> pick(0, topics[t].size() - 1);
        for (int d = 0; d < 10; ++d) {
            std::string text;
            for (int w = 0; w < tokens_per_doc; ++w) text += topics[t][pick(rng)] + " ";
            const std::string id = "t" + std::to_string(t) + "d" + std::to_string(d);
            c[id] = Document{id, std::nullopt, id, text};
        }
    }
    c["dup_a"] = Document{"dup_a", std::nullopt, "", c["t0d0"].text};
    c["dup_b"] = Document{"dup_b", std::nullopt, "", c["t0d0"].text};
    return c;
}

double cosine(const Eigen::Ref<const Eigen::VectorXf>& a, const Eigen::Ref<const Eigen::VectorXf>& b) {
    return a.dot(b) / (a.norm() * b.norm());
}

}  // namespace

TEST(Pvdbow, LossDecreasesAcrossEpochs) {
    PvdbowConfig cfg;
    cfg.dim = 20;
    cfg.epochs = 8;
    cfg.min_word_count = 1;
    auto r = train_pvdbow(toy_corpus(300), cfg);
    ASSERT_EQ(r.epoch_loss.size(), 8u);
    for (std::size_t e = 1; e < r.epoch_loss.size(); ++e) {
        EXPECT_LE(r.epoch_loss[e], r.epoch_loss[e - 1]) << "epoch " << e;
    }
}

TEST(Pvdbow, LongRunLossFallsWellBelowStart) {
    PvdbowConfig cfg;
    cfg.dim = 20;
    cfg.epochs = 15;
    cfg.min_word_count = 1;
    auto r = train_pvdbow(toy_corpus(300), cfg);
    // untrained loss is (1 + negatives) * ln 2 per prediction
    EXPECT_LT(r.epoch_loss.front(), 6 * std::log(2.0));
    EXPECT_LT(r.epoch_loss.back(), 0.5 * r.epoch_loss.front());
}

TEST(Pvdbow, DuplicateDocumentsEndCloser) {
    PvdbowConfig cfg;
    cfg.dim = 20;
    cfg.epochs = 40;
    cfg.min_word_count = 1;
    auto r = train_pvdbow(toy_corpus(), cfg);
    const auto a = r.vectors.row("dup_a");
    const auto b = r.vectors.row("dup_b");
    const auto other = r.vectors.row("t3d4");
    EXPECT_GT(cosine(a, b), cosine(a, other));
    EXPECT_GT(cosine(a, b), cosine(b, other));
}

TEST(Pvdbow, TableCoversCorpusAtDefaultDim) {
    PvdbowConfig cfg;
    cfg.epochs = 1;
    cfg.min_word_count = 1;
    auto c = toy_corpus();
    auto r = train_pvdbow(c, cfg);
    EXPECT_EQ(r.vectors.size(), c.size());
    EXPECT_EQ(r.vectors.dim(), 200);
}

TEST(Pvdbow, DeterministicForSeed) {
    PvdbowConfig cfg;
    cfg.dim = 8;
    cfg.epochs = 2;
    cfg.min_word_count = 1;
    auto a = train_pvdbow(toy_corpus(), cfg);
    auto b = train_pvdbow(toy_corpus(), cfg);
    for (std::size_t i = 0; i < a.vectors.size(); ++i) {
        EXPECT_EQ(a.vectors.row_at(i), b.vectors.row_at(i));
    }
}

TEST(Pvdbow, UntrainedDocumentsReported) {
    Corpus c = toy_corpus();
    c["odd"] = Document{"odd", std::nullopt, "", "zzyzx"};
    PvdbowConfig cfg;
    cfg.dim = 8;
    cfg.epochs = 1;
    cfg.min_word_count = 2;
    auto r = train_pvdbow(c, cfg);
    EXPECT_EQ(r.untrained_ids, std::vector<std::string>{"odd"});
}

TEST(Pvdbow, InvalidConfig) {
    PvdbowConfig cfg;
    cfg.dim = 0;
    EXPECT_THROW(train_pvdbow(toy_corpus(), cfg), ValidationError);
}
