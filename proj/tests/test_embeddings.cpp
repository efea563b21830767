#include <random>

#include <gtest/gtest.h>

#include "semrel/concat.hpp"
#include "semrel/errors.hpp"
#include "semrel/word_vectors.hpp"
#include "support/temp_dir.hpp"

using namespace semrel;
using semrel::testing::TempDir;

namespace {

WordVectorTable cat_dog() {
    WordVectorTable t(2);
    t.insert("cat", Eigen::Vector2f(1, 0));
    t.insert("dog", Eigen::Vector2f(0, 3));
    return t;
}

std::string vector_line(const std::string& word, int n) {
    std::string s = word;
    for (int i = 0; i < n; ++i) s += " 0.5";
    return s + "\n";
}

}  // namespace

TEST(WordVectors, TwoLineFile) {
    TempDir dir;
    auto p = dir.write("v.txt", "cat 1 2 3\ndog 4 5 6\n");
    auto r = load_word_vectors(p);
    EXPECT_EQ(r.table.size(), 2u);
    EXPECT_EQ(r.table.dim(), 3);
    EXPECT_FLOAT_EQ(r.table.row("dog")(2), 6.0f);
}

TEST(WordVectors, WrongArityLineRejected) {
    TempDir dir;
    auto p = dir.write("v.txt", vector_line("a", 200) + vector_line("b", 199) + vector_line("c", 200));
    auto r = load_word_vectors(p);
    EXPECT_EQ(r.table.dim(), 200);
    EXPECT_EQ(r.table.size(), 2u);
    EXPECT_EQ(r.rejected_lines, 1u);
    EXPECT_EQ(r.rejected_line_numbers, std::vector<std::size_t>{2});
    EXPECT_THROW(load_word_vectors(p, {.strict = true}), ValidationError);
}

TEST(WordVectors, BadNumberAndEmptyFile) {
    TempDir dir;
    EXPECT_THROW(load_word_vectors(dir.write("bad.txt", "a 1 zz\n")), ParseError);
    EXPECT_THROW(load_word_vectors(dir.write("empty.txt", "")), ValidationError);
    EXPECT_THROW(load_word_vectors(dir / "missing.txt"), IoError);
}

TEST(AvgGlove, SingleWordIdentity) {
    auto t = cat_dog();
    Document d{"d", std::nullopt, "", "cat"};
    auto e = avg_glove_embed<double>(d, t, StopWords{});
    EXPECT_EQ(e.vector, Eigen::Vector2d(1, 0));
    EXPECT_FALSE(e.zero_coverage);
}

TEST(AvgGlove, CountWeightedMean) {
    auto t = cat_dog();
    Document d{"d", std::nullopt, "", "cat cat dog"};
    auto e = avg_glove_embed<double>(d, t, StopWords{});
    EXPECT_NEAR(e.vector(0), 2.0 / 3.0, 1e-12);
    EXPECT_NEAR(e.vector(1), 1.0, 1e-12);
    EXPECT_EQ(e.covered_tokens, 3u);
}

TEST(AvgGlove, ZeroCoverage) {
    auto t = cat_dog();
    Document d{"d", std::nullopt, "", "zebra unicorn"};
    auto e = avg_glove_embed<float>(d, t, StopWords{});
    EXPECT_TRUE(e.zero_coverage);
    EXPECT_TRUE(e.vector.isZero());
}

TEST(AvgGlove, WordOrderInvariant) {
    auto t = cat_dog();
    Document a{"a", std::nullopt, "", "cat dog dog cat dog"};
    Document b{"b", std::nullopt, "", "dog dog dog cat cat"};
    EXPECT_EQ(avg_glove_embed<double>(a, t, {}).vector, avg_glove_embed<double>(b, t, {}).vector);
}

TEST(AvgGlove, CorpusEmbeddingFlagsZeroCoverage) {
    Corpus c;
    c["x"] = Document{"x", std::nullopt, "", "cat"};
    c["y"] = Document{"y", std::nullopt, "", "nothing known"};
    auto e = embed_corpus_avg(c, cat_dog(), english_stop_words());
    EXPECT_EQ(e.vectors.size(), 2u);
    EXPECT_EQ(e.zero_coverage_ids, std::vector<std::string>{"y"});
    EXPECT_THROW(embed_corpus_avg(c, cat_dog(), {}, {"nope"}), ValidationError);
}

TEST(DocVectors, FileRoundTripIsExact) {
    TempDir dir;
    std::mt19937 rng(1);
    std::normal_distribution<float> n;
    DocVectorTable t(7);
    for (const char* id : {"a", "doc with spaces", "c"}) {
        Eigen::VectorXf v(7);
        for (int i = 0; i < 7; ++i) v(i) = n(rng);
        t.insert(id, v);
    }
    write_doc_vectors(dir / "d.txt", t);
    auto back = read_doc_vectors(dir / "d.txt");
    ASSERT_EQ(back.keys(), t.keys());
    for (std::size_t i = 0; i < t.size(); ++i) EXPECT_EQ(back.row_at(i), t.row_at(i));
}

TEST(DocVectors, MissingHeaderRejected) {
    TempDir dir;
    EXPECT_THROW(read_doc_vectors(dir.write("d.txt", "a 1 2\n")), ParseError);
}

TEST(EmbeddingTable, RejectsBadInserts) {
    WordVectorTable t(2);
    t.insert("a", Eigen::Vector2f(1, 2));
    EXPECT_THROW(t.insert("a", Eigen::Vector2f(1, 2)), ValidationError);
    EXPECT_THROW(t.insert("b", Eigen::Vector3f(1, 2, 3)), ValidationError);
    EXPECT_THROW(t.insert("c", Eigen::Vector2f(1, std::nanf(""))), ValidationError);
    EXPECT_THROW(t.row("zz"), ValidationError);
}

TEST(Concat, HandComputedBlocks) {
    Eigen::Vector2d u(1, 2), v(3, 4);
    Eigen::VectorXd expected(8);
    expected << 1, 2, 3, 4, 2, 2, 3, 8;
    EXPECT_EQ(concat(u, v, ConcatScheme::UVDiffProd), expected);
}

TEST(Concat, IdenticalInputsHaveZeroDifference) {
    Eigen::Vector3f u(1, -2, 5);
    auto c = concat(u, u, ConcatScheme::UVDiff);
    ASSERT_EQ(c.size(), 9);
    EXPECT_EQ(c.head(3), u);
    EXPECT_EQ(c.segment(3, 3), u);
    EXPECT_TRUE(c.tail(3).isZero());
}

TEST(Concat, DimensionsByScheme) {
    Eigen::VectorXf u = Eigen::VectorXf::Random(200), v = Eigen::VectorXf::Random(200);
    EXPECT_EQ(concat(u, v, ConcatScheme::UV).size(), 400);
    EXPECT_EQ(concat(u, v, ConcatScheme::UVDiff).size(), 600);
    EXPECT_EQ(concat(u, v, ConcatScheme::UVDiffProd).size(), 800);
    EXPECT_THROW(concat(u, Eigen::VectorXf::Zero(3), ConcatScheme::UV), ValidationError);
}

TEST(Concat, ColumnsMatchVectorForm) {
    Eigen::MatrixXd U = Eigen::MatrixXd::Random(4, 3), V = Eigen::MatrixXd::Random(4, 3);
    auto C = concat_columns(U, V, ConcatScheme::UVDiffProd);
    for (int j = 0; j < 3; ++j) {
        EXPECT_EQ(C.col(j), concat(U.col(j), V.col(j), ConcatScheme::UVDiffProd));
    }
}

TEST(Concat, SchemeNames) {
    for (auto s : {ConcatScheme::UV, ConcatScheme::UVDiff, ConcatScheme::UVDiffProd}) {
        EXPECT_EQ(parse_scheme(scheme_flag(s)), s);
        EXPECT_EQ(parse_scheme(scheme_label(s)), s);
    }
    EXPECT_THROW(parse_scheme("uvx"), ValidationError);
}
