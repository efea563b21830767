#include "synthetic.hpp"

#include <random>
#include <string>

namespace semrel::testing {
namespace {

std::string marker(char side, std::size_t cls, std::size_t j) {
    return std::string("mk") + side + "c" + std::to_string(cls) + "n" + std::to_string(j);
}

}  // namespace

SyntheticData make_synthetic(const SyntheticConfig& cfg) {
    std::mt19937_64 rng(cfg.seed);
    SyntheticData out{{}, {}, WordVectorTable(cfg.dim)};

    std::normal_distribution<float> normal(0.0f, 1.0f);
    auto add_word = [&](const std::string& w) {
        Eigen::VectorXf v(cfg.dim);
        for (int k = 0; k < cfg.dim; ++k) v(k) = normal(rng);
        out.word_vectors.insert(w, v);
    };
    std::vector<std::string> filler;
    for (std::size_t i = 0; i < cfg.filler_vocab; ++i) {
        filler.push_back("fill" + std::to_string(i));
        add_word(filler.back());
    }
    for (char side : {'s', 't'}) {
        for (std::size_t c = 0; c < kNumClasses; ++c) {
            for (std::size_t j = 0; j < cfg.markers_per_class; ++j) add_word(marker(side, c, j));
        }
    }
    std::vector<std::string> topic_words;
    for (std::size_t t = 0; t < cfg.topics; ++t) {
        topic_words.push_back("topic" + std::to_string(t));
        add_word(topic_words.back());
    }

    std::uniform_int_distribution<std::size_t> pick_filler(0, filler.size() - 1);
    std::uniform_int_distribution<std::size_t> pick_marker(0, cfg.markers_per_class - 1);
    std::uniform_int_distribution<std::size_t> pick_topic(0, cfg.topics - 1);
    std::uniform_int_distribution<std::size_t> pick_positive(0, kNumPositiveClasses - 1);
    std::bernoulli_distribution leak(cfg.leak);

    auto make_text = [&](char side, std::size_t cls, std::optional<std::size_t> topic) {
        std::string text;
        for (std::size_t i = 0; i < cfg.filler_tokens; ++i) text += filler[pick_filler(rng)] + ' ';
        for (std::size_t i = 0; i < cfg.marker_tokens; ++i) {
            std::size_t c = cls;
            if (cfg.overlap && leak(rng)) c = (cls + 1) % kNumClasses;
            text += marker(side, c, pick_marker(rng)) + ' ';
        }
        if (topic) {
            for (std::size_t i = 0; i < cfg.topic_tokens; ++i) text += topic_words[*topic] + ' ';
        }
        return text;
    };

    for (std::size_t i = 0; i < cfg.pairs; ++i) {
        const auto label = class_at(i % kNumClasses);
        const std::string s = "s" + std::to_string(i);
        const std::string t = "t" + std::to_string(i);
        std::string seed_text;
        std::string target_text;
        if (!cfg.overlap) {
            seed_text = make_text('s', class_index(label), std::nullopt);
            target_text = make_text('t', class_index(label), std::nullopt);
        } else if (is_positive(label)) {
            const std::size_t topic = pick_topic(rng);
            seed_text = make_text('s', class_index(label), topic);
            target_text = make_text('t', class_index(label), topic);
        } else {
            const std::size_t cls = pick_positive(rng);
            const std::size_t t1 = pick_topic(rng);
            std::size_t t2 = pick_topic(rng);
            while (t2 == t1) t2 = pick_topic(rng);
            seed_text = make_text('s', cls, t1);
            target_text = make_text('t', cls, t2);
        }
        out.corpus[s] = Document{s, std::nullopt, s, seed_text};
        out.corpus[t] = Document{t, std::nullopt, t, target_text};
        out.pairs.push_back(LabeledPair{s, t, label});
    }
    std::shuffle(out.pairs.begin(), out.pairs.end(), rng);
    return out;
}

}  // namespace semrel::testing
