#include "semrel/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <thread>

#include "semrel/errors.hpp"

namespace semrel {

Eigen::MatrixXf pair_matrix(std::span<const LabeledPair> pairs, const DocVectorTable& docs,
                            ConcatScheme scheme) {
    const Eigen::Index d = docs.dim();
    Eigen::MatrixXf out(scheme_blocks(scheme) * d, static_cast<Eigen::Index>(pairs.size()));
    for (std::size_t j = 0; j < pairs.size(); ++j) {
        const float* u = docs.find(pairs[j].seed_id);
        const float* v = docs.find(pairs[j].target_id);
        if (u == nullptr || v == nullptr) {
            throw ValidationError("no document vector for '" +
                                  (u == nullptr ? pairs[j].seed_id : pairs[j].target_id) + "'");
        }
        out.col(static_cast<Eigen::Index>(j)) =
            concat(Eigen::Map<const Eigen::VectorXf>(u, d), Eigen::Map<const Eigen::VectorXf>(v, d),
                   scheme);
    }
    return out;
}

std::vector<RelationClass> labels_of(std::span<const LabeledPair> pairs) {
    std::vector<RelationClass> labels;
    labels.reserve(pairs.size());
    for (const auto& p : pairs) labels.push_back(p.label);
    return labels;
}

std::vector<PredictionRecord> CrossValidationResult::all_predictions() const {
    std::vector<PredictionRecord> out;
    for (const auto& f : folds) out.insert(out.end(), f.predictions.begin(), f.predictions.end());
    return out;
}

namespace {

FoldOutcome run_fold(std::size_t fold, std::span<const LabeledPair> pairs, const Eigen::MatrixXf& X,
                     const std::vector<RelationClass>& labels, const FoldAssignment& assignment,
                     const CrossValidationConfig& config) {
    const auto train_idx = assignment.train_indices(fold);
    const auto test_idx = assignment.test_indices(fold);

    Eigen::MatrixXf X_train(X.rows(), static_cast<Eigen::Index>(train_idx.size()));
    std::vector<RelationClass> y_train;
    y_train.reserve(train_idx.size());
    for (std::size_t j = 0; j < train_idx.size(); ++j) {
        X_train.col(static_cast<Eigen::Index>(j)) = X.col(static_cast<Eigen::Index>(train_idx[j]));
        y_train.push_back(labels[train_idx[j]]);
    }
    Eigen::MatrixXf X_test(X.rows(), static_cast<Eigen::Index>(test_idx.size()));
    for (std::size_t j = 0; j < test_idx.size(); ++j) {
        X_test.col(static_cast<Eigen::Index>(j)) = X.col(static_cast<Eigen::Index>(test_idx[j]));
    }

    MlpConfig mlp = config.mlp;
    mlp.input_dim = X.rows();
    mlp.rng_seed = derive_seed(config.rng_seed, 100 + fold);
    auto model = init_model<float>(mlp);

    FoldOutcome out;
    out.trace = train<float>(model, X_train, y_train, mlp);
    const auto predictions = predict_batch<float>(model, X_test);
    for (std::size_t j = 0; j < test_idx.size(); ++j) {
        const auto& pair = pairs[test_idx[j]];
        auto record = make_record(pair.seed_id, pair.target_id, pair.label, predictions[j]);
        record.fold = fold;
        out.confusion.add(pair.label, record.predicted());
        out.predictions.push_back(std::move(record));
    }
    out.report = prf_scores(out.confusion);
    return out;
}

}  // namespace

CrossValidationResult cross_validate(std::span<const LabeledPair> pairs, const DocVectorTable& docs,
                                     const CrossValidationConfig& config) {
    if (pairs.empty()) throw ValidationError("cross-validation needs a non-empty dataset");
    const auto labels = labels_of(pairs);
    const Eigen::MatrixXf X = pair_matrix(pairs, docs, config.scheme);

    CrossValidationResult result;
    result.assignment = stratified_kfold(labels, config.k, derive_seed(config.rng_seed, 0));
    result.folds.resize(config.k);

    const unsigned jobs = std::max(1u, std::min<unsigned>(config.jobs, static_cast<unsigned>(config.k)));
    if (jobs == 1) {
        for (std::size_t f = 0; f < config.k; ++f) {
            result.folds[f] = run_fold(f, pairs, X, labels, result.assignment, config);
        }
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::exception_ptr> errors(config.k);
        std::vector<std::thread> workers;
        for (unsigned w = 0; w < jobs; ++w) {
            workers.emplace_back([&] {
                for (std::size_t f; (f = next++) < config.k;) {
                    try {
                        result.folds[f] = run_fold(f, pairs, X, labels, result.assignment, config);
                    } catch (...) {
                        errors[f] = std::current_exception();
                    }
                }
            });
        }
        for (auto& t : workers) t.join();
        for (auto& e : errors) {
            if (e) std::rethrow_exception(e);
        }
    }

    std::vector<EvalReport> reports;
    for (const auto& f : result.folds) {
        reports.push_back(f.report);
        result.pooled_confusion += f.confusion;
    }
    result.aggregate = aggregate_folds(reports);
    return result;
}

}  // namespace semrel
