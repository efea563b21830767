#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <random>
#include <span>
#include <vector>

#include <Eigen/Core>
#include <nlohmann/json.hpp>

#include "semrel/relation.hpp"

namespace semrel {

enum class LossKind {
    SigmoidBce,  // independent per-class sigmoid, mean binary cross-entropy
    SoftmaxCe,   // softmax + categorical cross-entropy (ablation)
};

struct MlpConfig {
    Eigen::Index input_dim = 0;
    std::vector<Eigen::Index> hidden_layers{512, 512};
    Eigen::Index output_dim = static_cast<Eigen::Index>(kNumClasses);
    double dropout_prob = 0.0;
    double learning_rate = 1e-3;
    Eigen::Index batch_size = 32;
    int epochs = 20;
    std::uint64_t rng_seed = 0;
    LossKind loss = LossKind::SigmoidBce;
    double adam_beta1 = 0.9;
    double adam_beta2 = 0.999;
    double adam_epsilon = 1e-8;

    void validate() const;
};

void to_json(nlohmann::json& j, const MlpConfig& c);
void from_json(const nlohmann::json& j, MlpConfig& c);

/// Fully connected network: ReLU hidden layers, 10 logits out.
/// weights[l] is (out x in); activations are column vectors.
template <typename Scalar>
struct Mlp {
    using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
    using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

    MlpConfig config;
    std::vector<Matrix> weights;
    std::vector<Vector> biases;

    std::size_t layer_count() const { return weights.size(); }
    Eigen::Index parameter_count() const;
    bool all_finite() const;
};

template <typename Scalar>
struct MlpGradients {
    std::vector<typename Mlp<Scalar>::Matrix> weights;
    std::vector<typename Mlp<Scalar>::Vector> biases;
};

/// Glorot-uniform weights, U(-a, a) with a = sqrt(6 / (fan_in + fan_out)),
/// drawn from config.rng_seed in layer order; zero biases.
template <typename Scalar>
Mlp<Scalar> init_model(const MlpConfig& config);

/// Output logits for a batch X (input_dim x n). Dropout is applied to hidden
/// activations only when `dropout_rng` is non-null.
template <typename Scalar>
typename Mlp<Scalar>::Matrix forward_logits(const Mlp<Scalar>& model,
                                            const Eigen::Ref<const typename Mlp<Scalar>::Matrix>& X,
                                            std::mt19937_64* dropout_rng = nullptr);

/// Class scores for one input: per-class sigmoid (or softmax under
/// LossKind::SoftmaxCe), clamped to the open interval (0, 1).
template <typename Scalar>
std::array<double, kNumClasses> forward(const Mlp<Scalar>& model,
                                        const Eigen::Ref<const typename Mlp<Scalar>::Vector>& x,
                                        bool train_mode = false,
                                        std::mt19937_64* dropout_rng = nullptr);

/// Mean loss over the batch and its gradient with respect to every parameter.
template <typename Scalar>
double loss_and_gradients(const Mlp<Scalar>& model,
                          const Eigen::Ref<const typename Mlp<Scalar>::Matrix>& X,
                          std::span<const RelationClass> labels, MlpGradients<Scalar>& grads,
                          std::mt19937_64* dropout_rng = nullptr);

template <typename Scalar>
double loss(const Mlp<Scalar>& model, const Eigen::Ref<const typename Mlp<Scalar>::Matrix>& X,
            std::span<const RelationClass> labels);

struct TrainTrace {
    std::vector<double> epoch_loss;
};

/// Mini-batch Adam on the configured loss. Samples are shuffled each epoch
/// from config.rng_seed. Throws ValidationError if the loss goes non-finite.
template <typename Scalar>
TrainTrace train(Mlp<Scalar>& model, const Eigen::Ref<const typename Mlp<Scalar>::Matrix>& X,
                 std::span<const RelationClass> labels, const MlpConfig& config);

struct Prediction {
    std::array<double, kNumClasses> scores{};
    // All ten classes by descending score; ties go to the lower class index.
    std::array<RelationClass, kNumClasses> ranked{};

    RelationClass label() const { return ranked[0]; }
};

std::array<RelationClass, kNumClasses> rank_scores(const std::array<double, kNumClasses>& scores);

template <typename Scalar>
Prediction predict(const Mlp<Scalar>& model,
                   const Eigen::Ref<const typename Mlp<Scalar>::Vector>& x);

/// Batch prediction; one Prediction per column of X.
template <typename Scalar>
std::vector<Prediction> predict_batch(const Mlp<Scalar>& model,
                                      const Eigen::Ref<const typename Mlp<Scalar>::Matrix>& X);

/// Largest relative error between backprop gradients and central finite
/// differences of the single-sample loss, |a - n| / max(|a|, |n|, floor).
double gradient_check(const Mlp<double>& model, const Eigen::Ref<const Eigen::VectorXd>& x,
                      RelationClass label, double epsilon = 1e-5, double floor = 1e-6);

template <typename Scalar>
void save_model(const std::filesystem::path& path, const Mlp<Scalar>& model);

template <typename Scalar>
Mlp<Scalar> load_model(const std::filesystem::path& path);

extern template struct Mlp<float>;
extern template struct Mlp<double>;

}  // namespace semrel
