#include <limits>
#include <random>

#include <gtest/gtest.h>

#include "semrel/errors.hpp"
#include "semrel/mlp.hpp"
#include "support/temp_dir.hpp"

using namespace semrel;
using semrel::testing::TempDir;

namespace {

MlpConfig small_config(Eigen::Index in, std::vector<Eigen::Index> hidden, std::uint64_t seed = 1) {
    MlpConfig c;
    c.input_dim = in;
    c.hidden_layers = std::move(hidden);
    c.rng_seed = seed;
    return c;
}

template <typename S>
void zero_out(Mlp<S>& m) {
    for (auto& w : m.weights) w.setZero();
    for (auto& b : m.biases) b.setZero();
}

// Two Gaussian blobs far apart along the first axis.
void separable(int n, Eigen::MatrixXd& X, std::vector<RelationClass>& y) {
    std::mt19937_64 rng(4);
    std::normal_distribution<double> noise(0.0, 0.3);
    X.resize(2, n);
    y.clear();
    for (int i = 0; i < n; ++i) {
        const bool pos = i % 2 == 0;
        X(0, i) = (pos ? 2.0 : -2.0) + noise(rng);
        X(1, i) = noise(rng);
        y.push_back(pos ? RelationClass::Employer : RelationClass::None);
    }
}

}  // namespace

TEST(MlpInit, SameSeedBitIdentical) {
    auto a = init_model<float>(small_config(6, {5, 4}, 9));
    auto b = init_model<float>(small_config(6, {5, 4}, 9));
    for (std::size_t l = 0; l < a.layer_count(); ++l) {
        EXPECT_EQ(a.weights[l], b.weights[l]);
        EXPECT_EQ(a.biases[l], b.biases[l]);
    }
    auto c = init_model<float>(small_config(6, {5, 4}, 10));
    EXPECT_NE(a.weights[0], c.weights[0]);
}

TEST(MlpInit, NoHiddenLayersIsLinear) {
    auto m = init_model<double>(small_config(7, {}));
    ASSERT_EQ(m.layer_count(), 1u);
    EXPECT_EQ(m.weights[0].rows(), 10);
    EXPECT_EQ(m.weights[0].cols(), 7);
}

TEST(MlpInit, ParameterCountFromShapes) {
    auto m = init_model<float>(small_config(800, {512, 512}));
    EXPECT_EQ(m.parameter_count(), 800 * 512 + 512 + 512 * 512 + 512 + 512 * 10 + 10);
}

TEST(MlpInit, GlorotBound) {
    auto m = init_model<double>(small_config(30, {20}));
    const double a0 = std::sqrt(6.0 / (30 + 20));
    EXPECT_LE(m.weights[0].cwiseAbs().maxCoeff(), a0);
    EXPECT_TRUE(m.biases[0].isZero());
}

TEST(MlpInit, InvalidConfig) {
    EXPECT_THROW(init_model<float>(small_config(0, {4})), ValidationError);
    auto c = small_config(3, {4});
    c.dropout_prob = 1.0;
    EXPECT_THROW(init_model<float>(c), ValidationError);
}

TEST(MlpForward, ZeroModelGivesHalf) {
    auto m = init_model<float>(small_config(4, {3}));
    zero_out(m);
    auto s = forward(m, Eigen::VectorXf::Random(4));
    for (double v : s) EXPECT_DOUBLE_EQ(v, 0.5);
    EXPECT_EQ(predict(m, Eigen::VectorXf::Random(4)).label(), RelationClass::CountryOfCitizenship);
}

TEST(MlpForward, ScoresInOpenIntervalAndDeterministic) {
    auto m = init_model<double>(small_config(5, {8, 8}, 3));
    std::mt19937_64 rng(1);
    for (int i = 0; i < 50; ++i) {
        Eigen::VectorXd x = Eigen::VectorXd::Random(5) * 1e3;
        auto s = forward(m, x);
        for (double v : s) {
            EXPECT_GT(v, 0.0);
            EXPECT_LT(v, 1.0);
        }
        EXPECT_EQ(s, forward(m, x));
    }
}

TEST(MlpForward, DropoutOnlyInTrainMode) {
    auto c = small_config(5, {16}, 3);
    c.dropout_prob = 0.5;
    auto m = init_model<double>(c);
    Eigen::VectorXd x = Eigen::VectorXd::Random(5);
    std::mt19937_64 r1(1), r2(2);
    EXPECT_NE(forward(m, x, true, &r1), forward(m, x, true, &r2));
    EXPECT_EQ(forward(m, x, false, &r1), forward(m, x, false, &r2));
}

TEST(MlpPredict, RankingIsPermutationWithStableTies) {
    std::array<double, kNumClasses> s{0.1, 0.9, 0.5, 0.9, 0.2, 0.3, 0.4, 0.6, 0.7, 0.8};
    auto r = rank_scores(s);
    EXPECT_EQ(r[0], RelationClass::DifferentFrom);
    EXPECT_EQ(r[1], RelationClass::Employer);
    EXPECT_EQ(r[9], RelationClass::CountryOfCitizenship);
    std::set<RelationClass> uniq(r.begin(), r.end());
    EXPECT_EQ(uniq.size(), kNumClasses);
}

TEST(MlpTrain, SeparableTwoClassReachesPerfectAccuracy) {
    Eigen::MatrixXd X;
    std::vector<RelationClass> y;
    separable(50, X, y);
    auto c = small_config(2, {8}, 2);
    c.epochs = 200;
    c.batch_size = 10;
    c.learning_rate = 1e-2;
    auto m = init_model<double>(c);
    train(m, X, y, c);
    auto preds = predict_batch(m, X);
    for (int i = 0; i < 50; ++i) EXPECT_EQ(preds[i].label(), y[i]) << i;
}

TEST(MlpTrain, ConvexProblemLossNonIncreasing) {
    Eigen::MatrixXd X;
    std::vector<RelationClass> y;
    separable(40, X, y);
    auto c = small_config(2, {}, 2);
    c.epochs = 30;
    c.batch_size = 40;  // full batch
    c.learning_rate = 1e-3;
    auto m = init_model<double>(c);
    auto trace = train(m, X, y, c);
    ASSERT_EQ(trace.epoch_loss.size(), 30u);
    for (std::size_t e = 1; e < trace.epoch_loss.size(); ++e) {
        EXPECT_LE(trace.epoch_loss[e], trace.epoch_loss[e - 1] + 1e-12);
    }
}

TEST(MlpTrain, ZeroEpochsLeavesModelUnchanged) {
    Eigen::MatrixXd X;
    std::vector<RelationClass> y;
    separable(10, X, y);
    auto c = small_config(2, {4}, 2);
    c.epochs = 0;
    auto m = init_model<double>(c);
    const auto before = m.weights;
    train(m, X, y, c);
    EXPECT_EQ(m.weights, before);
}

TEST(MlpTrain, Deterministic) {
    Eigen::MatrixXf X = Eigen::MatrixXf::Random(6, 40);
    std::vector<RelationClass> y;
    for (int i = 0; i < 40; ++i) y.push_back(class_at(i % 3));
    auto c = small_config(6, {8}, 5);
    c.epochs = 3;
    c.dropout_prob = 0.2;
    auto a = init_model<float>(c);
    auto b = init_model<float>(c);
    train(a, X, y, c);
    train(b, X, y, c);
    EXPECT_EQ(a.weights, b.weights);
}

TEST(MlpTrain, RejectsDegenerateInput) {
    auto c = small_config(2, {4});
    auto m = init_model<double>(c);
    Eigen::MatrixXd X = Eigen::MatrixXd::Random(2, 4);
    std::vector<RelationClass> one(4, RelationClass::None);
    EXPECT_THROW(train(m, X, one, c), ValidationError);
    EXPECT_THROW(train(m, Eigen::MatrixXd(2, 0), std::vector<RelationClass>{}, c), ValidationError);
}

TEST(MlpTrain, NonFiniteLossAborts) {
    Eigen::MatrixXd X = Eigen::MatrixXd::Random(3, 20);
    X(1, 7) = std::numeric_limits<double>::infinity();
    std::vector<RelationClass> y;
    for (int i = 0; i < 20; ++i) y.push_back(class_at(i % 2));
    auto c = small_config(3, {4}, 1);
    c.epochs = 2;
    auto m = init_model<double>(c);
    EXPECT_THROW(train(m, X, y, c), ValidationError);
}

TEST(GradientCheck, RandomSmallModel) {
    auto c = small_config(6, {5, 4}, 8);
    auto m = init_model<double>(c);
    for (auto& b : m.biases) b.setRandom();
    Eigen::VectorXd x = Eigen::VectorXd::Random(6);
    EXPECT_LT(gradient_check(m, x, RelationClass::HasEffect), 1e-4);
}

TEST(GradientCheck, LinearModelNearMachinePrecision) {
    auto m = init_model<double>(small_config(4, {}, 3));
    Eigen::VectorXd x = Eigen::VectorXd::Random(4);
    EXPECT_LT(gradient_check(m, x, RelationClass::None), 1e-7);
}

TEST(GradientCheck, ZeroGradientPointIsFinite) {
    auto m = init_model<double>(small_config(3, {2}, 3));
    zero_out(m);
    const double err = gradient_check(m, Eigen::VectorXd::Zero(3), RelationClass::Symptoms);
    EXPECT_TRUE(std::isfinite(err));
    EXPECT_LT(err, 1e-4);
}

TEST(GradientCheck, SoftmaxLoss) {
    auto c = small_config(5, {6}, 4);
    c.loss = LossKind::SoftmaxCe;
    auto m = init_model<double>(c);
    EXPECT_LT(gradient_check(m, Eigen::VectorXd::Random(5), RelationClass::FacetOf), 1e-4);
}

TEST(MlpInvariance, SharedBiasShiftPreservesArgmax) {
    auto m = init_model<double>(small_config(5, {6}, 12));
    m.biases.back().setRandom();
    auto shifted = m;
    shifted.biases.back().array() += 0.7;
    for (int i = 0; i < 20; ++i) {
        Eigen::VectorXd x = Eigen::VectorXd::Random(5);
        EXPECT_EQ(predict(m, x).label(), predict(shifted, x).label());
    }
}

TEST(MlpCheckpoint, RoundTripIsBitExact) {
    TempDir dir;
    auto c = small_config(7, {5, 3}, 21);
    c.dropout_prob = 0.1;
    auto m = init_model<float>(c);
    save_model(dir / "m.bin", m);
    auto back = load_model<float>(dir / "m.bin");
    ASSERT_EQ(back.layer_count(), m.layer_count());
    for (std::size_t l = 0; l < m.layer_count(); ++l) {
        EXPECT_EQ(back.weights[l], m.weights[l]);
        EXPECT_EQ(back.biases[l], m.biases[l]);
    }
    EXPECT_EQ(back.config.hidden_layers, c.hidden_layers);
    EXPECT_EQ(back.config.dropout_prob, c.dropout_prob);
    Eigen::VectorXf x = Eigen::VectorXf::Random(7);
    EXPECT_EQ(forward(m, x), forward(back, x));
}

TEST(MlpCheckpoint, WrongScalarOrCorruptFileRejected) {
    TempDir dir;
    save_model(dir / "m.bin", init_model<float>(small_config(3, {2})));
    EXPECT_THROW(load_model<double>(dir / "m.bin"), ValidationError);
    dir.write("junk.bin", "not a model");
    EXPECT_THROW(load_model<float>(dir / "junk.bin"), ValidationError);
    EXPECT_THROW(load_model<float>(dir / "missing.bin"), IoError);
}

TEST(MlpConfigJson, RoundTrip) {
    auto c = small_config(9, {3, 2}, 77);
    c.loss = LossKind::SoftmaxCe;
    nlohmann::json j = c;
    auto back = j.get<MlpConfig>();
    EXPECT_EQ(back.input_dim, 9);
    EXPECT_EQ(back.hidden_layers, c.hidden_layers);
    EXPECT_EQ(back.rng_seed, 77u);
    EXPECT_EQ(back.loss, LossKind::SoftmaxCe);
}
