#include "semrel/mlp.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <limits>
#include <numeric>
#include <set>
#include <sstream>

#include "semrel/errors.hpp"
#include "semrel/seed.hpp"

namespace semrel {
namespace {

template <typename Scalar>
using Mat = typename Mlp<Scalar>::Matrix;
template <typename Scalar>
using Vec = typename Mlp<Scalar>::Vector;

template <typename Scalar>
struct ForwardCache {
    // inputs[l] is the activation fed into layer l; inputs[0] is the batch.
    std::vector<Mat<Scalar>> inputs;
    // Scaled keep-masks of the hidden layers, empty when dropout is off.
    std::vector<Mat<Scalar>> masks;
    Mat<Scalar> logits;
};

template <typename Scalar>
void run_forward(const Mlp<Scalar>& model, const Eigen::Ref<const Mat<Scalar>>& X,
                 std::mt19937_64* dropout_rng, ForwardCache<Scalar>& cache) {
    if (X.rows() != model.config.input_dim) {
        throw ValidationError("mlp: input has " + std::to_string(X.rows()) +
                              " features, model expects " +
                              std::to_string(model.config.input_dim));
    }
    const std::size_t L = model.layer_count();
    const double p = model.config.dropout_prob;
    const bool dropout = dropout_rng != nullptr && p > 0.0;
    cache.inputs.clear();
    cache.masks.clear();
    Mat<Scalar> a = X;
    for (std::size_t l = 0; l < L; ++l) {
        Mat<Scalar> z = model.weights[l] * a;
        z.colwise() += model.biases[l];
        cache.inputs.push_back(std::move(a));
        if (l + 1 == L) {
            cache.logits = std::move(z);
            break;
        }
        a = z.cwiseMax(Scalar(0));
        if (dropout) {
            std::bernoulli_distribution keep(1.0 - p);
            const Scalar scale = static_cast<Scalar>(1.0 / (1.0 - p));
            Mat<Scalar> mask(a.rows(), a.cols());
            for (Eigen::Index j = 0; j < mask.cols(); ++j) {
                for (Eigen::Index i = 0; i < mask.rows(); ++i) {
                    mask(i, j) = keep(*dropout_rng) ? scale : Scalar(0);
                }
            }
            a = a.cwiseProduct(mask);
            cache.masks.push_back(std::move(mask));
        }
    }
}

// Mean loss and d(loss)/d(logits) for the whole batch.
template <typename Scalar>
double output_loss(LossKind kind, const Mat<Scalar>& logits, std::span<const RelationClass> labels,
                   Mat<Scalar>* dlogits) {
    const Eigen::Index C = logits.rows();
    const Eigen::Index n = logits.cols();
    double total = 0.0;
    if (dlogits != nullptr) dlogits->resize(C, n);
    for (Eigen::Index j = 0; j < n; ++j) {
        const auto y = static_cast<Eigen::Index>(class_index(labels[static_cast<std::size_t>(j)]));
        if (kind == LossKind::SigmoidBce) {
            for (Eigen::Index c = 0; c < C; ++c) {
                const double z = static_cast<double>(logits(c, j));
                const double t = c == y ? 1.0 : 0.0;
                total += std::max(z, 0.0) - z * t + std::log1p(std::exp(-std::abs(z)));
                if (dlogits != nullptr) {
                    (*dlogits)(c, j) =
                        static_cast<Scalar>((1.0 / (1.0 + std::exp(-z)) - t) / double(C * n));
                }
            }
        } else {
            const double zmax = static_cast<double>(logits.col(j).maxCoeff());
            double sum = 0.0;
            for (Eigen::Index c = 0; c < C; ++c) sum += std::exp(double(logits(c, j)) - zmax);
            const double lse = zmax + std::log(sum);
            total += lse - static_cast<double>(logits(y, j));
            if (dlogits != nullptr) {
                for (Eigen::Index c = 0; c < C; ++c) {
                    const double prob = std::exp(double(logits(c, j)) - lse);
                    (*dlogits)(c, j) = static_cast<Scalar>((prob - (c == y ? 1.0 : 0.0)) / double(n));
                }
            }
        }
    }
    return kind == LossKind::SigmoidBce ? total / double(C * n) : total / double(n);
}

void check_labels(Eigen::Index columns, std::span<const RelationClass> labels) {
    if (static_cast<std::size_t>(columns) != labels.size()) {
        throw ValidationError("mlp: " + std::to_string(columns) + " samples but " +
                              std::to_string(labels.size()) + " labels");
    }
}

std::array<double, kNumClasses> scores_from_logits(LossKind kind, const double* z) {
    constexpr double lo = std::numeric_limits<double>::denorm_min();
    const double hi = std::nextafter(1.0, 0.0);
    std::array<double, kNumClasses> s{};
    if (kind == LossKind::SigmoidBce) {
        for (std::size_t c = 0; c < kNumClasses; ++c) s[c] = 1.0 / (1.0 + std::exp(-z[c]));
    } else {
        const double zmax = *std::max_element(z, z + kNumClasses);
        double sum = 0.0;
        for (std::size_t c = 0; c < kNumClasses; ++c) sum += (s[c] = std::exp(z[c] - zmax));
        for (auto& v : s) v /= sum;
    }
    for (auto& v : s) v = std::clamp(v, lo, hi);
    return s;
}

template <typename Scalar>
void write_raw(std::ostream& out, const Scalar* data, Eigen::Index count) {
    out.write(reinterpret_cast<const char*>(data), static_cast<std::streamsize>(count * sizeof(Scalar)));
}

template <typename Scalar>
void read_raw(std::istream& in, Scalar* data, Eigen::Index count) {
    in.read(reinterpret_cast<char*>(data), static_cast<std::streamsize>(count * sizeof(Scalar)));
}

constexpr char kMagic[8] = {'S', 'R', 'M', 'L', 'P', '0', '0', '1'};

}  // namespace

void MlpConfig::validate() const {
    if (input_dim < 1) throw ValidationError("mlp: input_dim must be >= 1");
    for (auto h : hidden_layers) {
        if (h < 1) throw ValidationError("mlp: hidden layer sizes must be >= 1");
    }
    if (output_dim != static_cast<Eigen::Index>(kNumClasses)) {
        throw ValidationError("mlp: output_dim must be " + std::to_string(kNumClasses));
    }
    if (!(dropout_prob >= 0.0 && dropout_prob < 1.0)) {
        throw ValidationError("mlp: dropout_prob must lie in [0, 1)");
    }
    if (!(learning_rate > 0.0)) throw ValidationError("mlp: learning_rate must be > 0");
    if (batch_size < 1) throw ValidationError("mlp: batch_size must be >= 1");
    if (epochs < 0) throw ValidationError("mlp: epochs must be >= 0");
}

void to_json(nlohmann::json& j, const MlpConfig& c) {
    j = nlohmann::json{{"input_dim", c.input_dim},
                       {"hidden_layers", c.hidden_layers},
                       {"output_dim", c.output_dim},
                       {"dropout_prob", c.dropout_prob},
                       {"learning_rate", c.learning_rate},
                       {"batch_size", c.batch_size},
                       {"epochs", c.epochs},
                       {"rng_seed", c.rng_seed},
                       {"loss", c.loss == LossKind::SigmoidBce ? "sigmoid_bce" : "softmax_ce"},
                       {"adam_beta1", c.adam_beta1},
                       {"adam_beta2", c.adam_beta2},
                       {"adam_epsilon", c.adam_epsilon}};
}

void from_json(const nlohmann::json& j, MlpConfig& c) {
    MlpConfig d;
    c.input_dim = j.value("input_dim", d.input_dim);
    c.hidden_layers = j.value("hidden_layers", d.hidden_layers);
    c.output_dim = j.value("output_dim", d.output_dim);
    c.dropout_prob = j.value("dropout_prob", d.dropout_prob);
    c.learning_rate = j.value("learning_rate", d.learning_rate);
    c.batch_size = j.value("batch_size", d.batch_size);
    c.epochs = j.value("epochs", d.epochs);
    c.rng_seed = j.value("rng_seed", d.rng_seed);
    const auto loss = j.value("loss", std::string("sigmoid_bce"));
    if (loss == "sigmoid_bce") {
        c.loss = LossKind::SigmoidBce;
    } else if (loss == "softmax_ce") {
        c.loss = LossKind::SoftmaxCe;
    } else {
        throw ValidationError("mlp: unknown loss '" + loss + "'");
    }
    c.adam_beta1 = j.value("adam_beta1", d.adam_beta1);
    c.adam_beta2 = j.value("adam_beta2", d.adam_beta2);
    c.adam_epsilon = j.value("adam_epsilon", d.adam_epsilon);
}

template <typename Scalar>
Eigen::Index Mlp<Scalar>::parameter_count() const {
    Eigen::Index n = 0;
    for (std::size_t l = 0; l < weights.size(); ++l) n += weights[l].size() + biases[l].size();
    return n;
}

template <typename Scalar>
bool Mlp<Scalar>::all_finite() const {
    for (std::size_t l = 0; l < weights.size(); ++l) {
        if (!weights[l].allFinite() || !biases[l].allFinite()) return false;
    }
    return true;
}

template <typename Scalar>
Mlp<Scalar> init_model(const MlpConfig& config) {
    config.validate();
    Mlp<Scalar> model;
    model.config = config;
    std::vector<Eigen::Index> dims{config.input_dim};
    dims.insert(dims.end(), config.hidden_layers.begin(), config.hidden_layers.end());
    dims.push_back(config.output_dim);
    std::mt19937_64 rng(config.rng_seed);
    for (std::size_t l = 0; l + 1 < dims.size(); ++l) {
        const Eigen::Index fan_in = dims[l];
        const Eigen::Index fan_out = dims[l + 1];
        const double limit = std::sqrt(6.0 / static_cast<double>(fan_in + fan_out));
        std::uniform_real_distribution<double> u(-limit, limit);
        Mat<Scalar> W(fan_out, fan_in);
        for (Eigen::Index j = 0; j < W.cols(); ++j) {
            for (Eigen::Index i = 0; i < W.rows(); ++i) W(i, j) = static_cast<Scalar>(u(rng));
        }
        model.weights.push_back(std::move(W));
        model.biases.push_back(Vec<Scalar>::Zero(fan_out));
    }
    return model;
}

template <typename Scalar>
Mat<Scalar> forward_logits(const Mlp<Scalar>& model, const Eigen::Ref<const Mat<Scalar>>& X,
                           std::mt19937_64* dropout_rng) {
    ForwardCache<Scalar> cache;
    run_forward(model, X, dropout_rng, cache);
    return std::move(cache.logits);
}

template <typename Scalar>
std::array<double, kNumClasses> forward(const Mlp<Scalar>& model,
                                        const Eigen::Ref<const Vec<Scalar>>& x, bool train_mode,
                                        std::mt19937_64* dropout_rng) {
    std::mt19937_64 local(derive_seed(model.config.rng_seed, 2));
    std::mt19937_64* rng = train_mode ? (dropout_rng ? dropout_rng : &local) : nullptr;
    const Mat<Scalar> logits = forward_logits<Scalar>(model, Mat<Scalar>(x), rng);
    const Eigen::VectorXd z = logits.col(0).template cast<double>();
    return scores_from_logits(model.config.loss, z.data());
}

template <typename Scalar>
double loss_and_gradients(const Mlp<Scalar>& model, const Eigen::Ref<const Mat<Scalar>>& X,
                          std::span<const RelationClass> labels, MlpGradients<Scalar>& grads,
                          std::mt19937_64* dropout_rng) {
    check_labels(X.cols(), labels);
    ForwardCache<Scalar> cache;
    run_forward(model, X, dropout_rng, cache);
    Mat<Scalar> delta;
    const double value = output_loss<Scalar>(model.config.loss, cache.logits, labels, &delta);

    const std::size_t L = model.layer_count();
    grads.weights.resize(L);
    grads.biases.resize(L);
    for (std::size_t l = L; l-- > 0;) {
        grads.weights[l].noalias() = delta * cache.inputs[l].transpose();
        grads.biases[l] = delta.rowwise().sum();
        if (l == 0) break;
        Mat<Scalar> upstream = model.weights[l].transpose() * delta;
        // ReLU derivative; inputs[l] > 0 exactly where the unit was active and kept.
        upstream = upstream.cwiseProduct(
            (cache.inputs[l].array() > Scalar(0)).template cast<Scalar>().matrix());
        if (!cache.masks.empty()) upstream = upstream.cwiseProduct(cache.masks[l - 1]);
        delta = std::move(upstream);
    }
    return value;
}

template <typename Scalar>
double loss(const Mlp<Scalar>& model, const Eigen::Ref<const Mat<Scalar>>& X,
            std::span<const RelationClass> labels) {
    check_labels(X.cols(), labels);
    ForwardCache<Scalar> cache;
    run_forward(model, X, nullptr, cache);
    return output_loss<Scalar>(model.config.loss, cache.logits, labels, nullptr);
}

template <typename Scalar>
TrainTrace train(Mlp<Scalar>& model, const Eigen::Ref<const Mat<Scalar>>& X,
                 std::span<const RelationClass> labels, const MlpConfig& config) {
    config.validate();
    if (config.input_dim != model.config.input_dim ||
        config.hidden_layers != model.config.hidden_layers) {
        throw ValidationError("mlp: training config does not match the model architecture");
    }
    check_labels(X.cols(), labels);
    if (labels.empty()) throw ValidationError("mlp: empty training set");
    if (std::set<RelationClass>(labels.begin(), labels.end()).size() < 2) {
        throw ValidationError("mlp: training labels must span at least two classes");
    }
    model.config.loss = config.loss;
    model.config.dropout_prob = config.dropout_prob;

    TrainTrace trace;
    if (config.epochs == 0) return trace;

    const std::size_t L = model.layer_count();
    MlpGradients<Scalar> grads;
    std::vector<Mat<Scalar>> mW(L), vW(L);
    std::vector<Vec<Scalar>> mb(L), vb(L);
    for (std::size_t l = 0; l < L; ++l) {
        mW[l] = Mat<Scalar>::Zero(model.weights[l].rows(), model.weights[l].cols());
        vW[l] = mW[l];
        mb[l] = Vec<Scalar>::Zero(model.biases[l].size());
        vb[l] = mb[l];
    }

    std::mt19937_64 shuffle_rng(derive_seed(config.rng_seed, 1));
    std::mt19937_64 dropout_rng(derive_seed(config.rng_seed, 2));
    const auto n = static_cast<Eigen::Index>(labels.size());
    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Eigen::Index{0});

    const Scalar b1 = static_cast<Scalar>(config.adam_beta1);
    const Scalar b2 = static_cast<Scalar>(config.adam_beta2);
    const Scalar eps = static_cast<Scalar>(config.adam_epsilon);
    long step = 0;
    Mat<Scalar> batch;
    std::vector<RelationClass> batch_labels;

    for (int epoch = 0; epoch < config.epochs; ++epoch) {
        std::shuffle(order.begin(), order.end(), shuffle_rng);
        double epoch_sum = 0.0;
        for (Eigen::Index start = 0; start < n; start += config.batch_size) {
            const Eigen::Index size = std::min(config.batch_size, n - start);
            batch.resize(X.rows(), size);
            batch_labels.resize(static_cast<std::size_t>(size));
            for (Eigen::Index j = 0; j < size; ++j) {
                const auto src = order[static_cast<std::size_t>(start + j)];
                batch.col(j) = X.col(src);
                batch_labels[static_cast<std::size_t>(j)] = labels[static_cast<std::size_t>(src)];
            }
            const double value = loss_and_gradients<Scalar>(
                model, batch, batch_labels, grads,
                config.dropout_prob > 0.0 ? &dropout_rng : nullptr);
            if (!std::isfinite(value)) {
                std::ostringstream msg;
                msg << "mlp: loss became non-finite (" << value << ") at epoch " << epoch + 1
                    << ", batch starting at sample " << start << "; learning rate "
                    << config.learning_rate << " is probably too high";
                throw ValidationError(msg.str());
            }
            epoch_sum += value * static_cast<double>(size);

            ++step;
            const Scalar c1 = Scalar(1) - static_cast<Scalar>(std::pow(config.adam_beta1, step));
            const Scalar c2 = Scalar(1) - static_cast<Scalar>(std::pow(config.adam_beta2, step));
            const Scalar lr = static_cast<Scalar>(config.learning_rate);
            auto adam = [&](auto& param, auto& m, auto& v, const auto& g) {
                m = b1 * m + (Scalar(1) - b1) * g;
                v = b2 * v + (Scalar(1) - b2) * g.cwiseAbs2();
                param.array() -= lr * (m.array() / c1) / ((v.array() / c2).sqrt() + eps);
            };
            for (std::size_t l = 0; l < L; ++l) {
                adam(model.weights[l], mW[l], vW[l], grads.weights[l]);
                adam(model.biases[l], mb[l], vb[l], grads.biases[l]);
            }
        }
        trace.epoch_loss.push_back(epoch_sum / static_cast<double>(n));
    }
    if (!model.all_finite()) throw ValidationError("mlp: parameters became non-finite");
    return trace;
}

std::array<RelationClass, kNumClasses> rank_scores(const std::array<double, kNumClasses>& scores) {
    std::array<std::size_t, kNumClasses> idx{};
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::stable_sort(idx.begin(), idx.end(),
                     [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });
    std::array<RelationClass, kNumClasses> ranked{};
    for (std::size_t i = 0; i < kNumClasses; ++i) ranked[i] = class_at(idx[i]);
    return ranked;
}

template <typename Scalar>
Prediction predict(const Mlp<Scalar>& model, const Eigen::Ref<const Vec<Scalar>>& x) {
    Prediction p;
    p.scores = forward<Scalar>(model, x, false, nullptr);
    p.ranked = rank_scores(p.scores);
    return p;
}

template <typename Scalar>
std::vector<Prediction> predict_batch(const Mlp<Scalar>& model,
                                      const Eigen::Ref<const Mat<Scalar>>& X) {
    const Eigen::MatrixXd logits = forward_logits<Scalar>(model, X, nullptr).template cast<double>();
    std::vector<Prediction> out(static_cast<std::size_t>(X.cols()));
    for (Eigen::Index j = 0; j < X.cols(); ++j) {
        auto& p = out[static_cast<std::size_t>(j)];
        p.scores = scores_from_logits(model.config.loss, logits.col(j).data());
        p.ranked = rank_scores(p.scores);
    }
    return out;
}

double gradient_check(const Mlp<double>& model, const Eigen::Ref<const Eigen::VectorXd>& x,
                      RelationClass label, double epsilon, double floor) {
    const Eigen::MatrixXd X = x;
    const std::array<RelationClass, 1> labels{label};
    MlpGradients<double> grads;
    loss_and_gradients<double>(model, X, labels, grads, nullptr);

    Mlp<double> probe = model;
    double worst = 0.0;
    auto check = [&](double& param, double analytic) {
        const double saved = param;
        param = saved + epsilon;
        const double plus = loss<double>(probe, X, labels);
        param = saved - epsilon;
        const double minus = loss<double>(probe, X, labels);
        param = saved;
        const double numeric = (plus - minus) / (2.0 * epsilon);
        const double denom = std::max({std::abs(analytic), std::abs(numeric), floor});
        worst = std::max(worst, std::abs(analytic - numeric) / denom);
    };
    for (std::size_t l = 0; l < probe.layer_count(); ++l) {
        for (Eigen::Index k = 0; k < probe.weights[l].size(); ++k) {
            check(probe.weights[l].data()[k], grads.weights[l].data()[k]);
        }
        for (Eigen::Index k = 0; k < probe.biases[l].size(); ++k) {
            check(probe.biases[l].data()[k], grads.biases[l].data()[k]);
        }
    }
    return worst;
}

template <typename Scalar>
void save_model(const std::filesystem::path& path, const Mlp<Scalar>& model) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + path.string());
    const std::string header = nlohmann::json(model.config).dump();
    const std::uint64_t header_size = header.size();
    const std::uint32_t scalar_size = sizeof(Scalar);
    const std::uint32_t layers = static_cast<std::uint32_t>(model.layer_count());
    out.write(kMagic, sizeof kMagic);
    out.write(reinterpret_cast<const char*>(&scalar_size), sizeof scalar_size);
    out.write(reinterpret_cast<const char*>(&header_size), sizeof header_size);
    out.write(header.data(), static_cast<std::streamsize>(header.size()));
    out.write(reinterpret_cast<const char*>(&layers), sizeof layers);
    for (std::size_t l = 0; l < model.layer_count(); ++l) {
        const std::int64_t shape[2] = {model.weights[l].rows(), model.weights[l].cols()};
        out.write(reinterpret_cast<const char*>(shape), sizeof shape);
        write_raw(out, model.weights[l].data(), model.weights[l].size());
        write_raw(out, model.biases[l].data(), model.biases[l].size());
    }
    if (!out) throw IoError("write failure on " + path.string());
}

template <typename Scalar>
Mlp<Scalar> load_model(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    char magic[sizeof kMagic];
    in.read(magic, sizeof magic);
    if (!in || std::memcmp(magic, kMagic, sizeof kMagic) != 0) {
        throw ParseError(path.string() + ": not a model checkpoint");
    }
    std::uint32_t scalar_size = 0;
    std::uint64_t header_size = 0;
    in.read(reinterpret_cast<char*>(&scalar_size), sizeof scalar_size);
    in.read(reinterpret_cast<char*>(&header_size), sizeof header_size);
    if (!in || scalar_size != sizeof(Scalar) || header_size > (1u << 24)) {
        throw ParseError(path.string() + ": checkpoint scalar type or header mismatch");
    }
    std::string header(header_size, '\0');
    in.read(header.data(), static_cast<std::streamsize>(header_size));
    Mlp<Scalar> model;
    try {
        model.config = nlohmann::json::parse(header).get<MlpConfig>();
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(path.string() + ": bad checkpoint header: " + e.what());
    }
    model.config.validate();
    std::uint32_t layers = 0;
    in.read(reinterpret_cast<char*>(&layers), sizeof layers);
    if (layers != model.config.hidden_layers.size() + 1) {
        throw ParseError(path.string() + ": layer count does not match the stored config");
    }
    Eigen::Index expected_in = model.config.input_dim;
    for (std::uint32_t l = 0; l < layers; ++l) {
        std::int64_t shape[2] = {0, 0};
        in.read(reinterpret_cast<char*>(shape), sizeof shape);
        const Eigen::Index expected_out =
            l + 1 == layers ? model.config.output_dim : model.config.hidden_layers[l];
        if (!in || shape[0] != expected_out || shape[1] != expected_in) {
            throw ParseError(path.string() + ": layer " + std::to_string(l) + " has a bad shape");
        }
        Mat<Scalar> W(shape[0], shape[1]);
        Vec<Scalar> b(shape[0]);
        read_raw(in, W.data(), W.size());
        read_raw(in, b.data(), b.size());
        model.weights.push_back(std::move(W));
        model.biases.push_back(std::move(b));
        expected_in = expected_out;
    }
    if (!in) throw ParseError(path.string() + ": truncated checkpoint");
    return model;
}

#define SEMREL_INSTANTIATE_MLP(S)                                                              \
    template struct Mlp<S>;                                                                    \
    template Mlp<S> init_model<S>(const MlpConfig&);                                           \
    template Mat<S> forward_logits<S>(const Mlp<S>&, const Eigen::Ref<const Mat<S>>&,          \
                                      std::mt19937_64*);                                       \
    template std::array<double, kNumClasses> forward<S>(                                       \
        const Mlp<S>&, const Eigen::Ref<const Vec<S>>&, bool, std::mt19937_64*);               \
    template double loss_and_gradients<S>(const Mlp<S>&, const Eigen::Ref<const Mat<S>>&,      \
                                          std::span<const RelationClass>, MlpGradients<S>&,    \
                                          std::mt19937_64*);                                   \
    template double loss<S>(const Mlp<S>&, const Eigen::Ref<const Mat<S>>&,                    \
                            std::span<const RelationClass>);                                   \
    template TrainTrace train<S>(Mlp<S>&, const Eigen::Ref<const Mat<S>>&,                     \
                                 std::span<const RelationClass>, const MlpConfig&);            \
    template Prediction predict<S>(const Mlp<S>&, const Eigen::Ref<const Vec<S>>&);            \
    template std::vector<Prediction> predict_batch<S>(const Mlp<S>&,                           \
                                                      const Eigen::Ref<const Mat<S>>&);        \
    template void save_model<S>(const std::filesystem::path&, const Mlp<S>&);                  \
    template Mlp<S> load_model<S>(const std::filesystem::path&);

SEMREL_INSTANTIATE_MLP(float)
SEMREL_INSTANTIATE_MLP(double)

#undef SEMREL_INSTANTIATE_MLP

}  // namespace semrel
