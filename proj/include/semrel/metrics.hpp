#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "semrel/relation.hpp"

namespace semrel {

struct PredictionRecord;

/// 10x10 counts; rows are true classes, columns predicted classes.
class ConfusionMatrix {
public:
    using Counts = Eigen::Matrix<std::int64_t, kNumClasses, kNumClasses>;

    ConfusionMatrix() : counts_(Counts::Zero()) {}
    explicit ConfusionMatrix(const Counts& counts);

    void add(RelationClass truth, RelationClass predicted, std::int64_t n = 1);

    std::int64_t operator()(RelationClass truth, RelationClass predicted) const {
        return counts_(class_index(truth), class_index(predicted));
    }
    const Counts& counts() const { return counts_; }
    std::int64_t total() const { return counts_.sum(); }
    std::int64_t support(RelationClass truth) const {
        return counts_.row(class_index(truth)).sum();
    }

    /// Each row divided by its support; rows without support stay zero.
    Eigen::Matrix<double, kNumClasses, kNumClasses> row_normalized() const;

    ConfusionMatrix& operator+=(const ConfusionMatrix& other);

private:
    Counts counts_;
};

/// Tallies records; every record must carry a true label.
ConfusionMatrix confusion(std::span<const PredictionRecord> records);

struct Prf {
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
};

struct ClassMetrics {
    Prf mean;
    Prf std;
    // Test samples of this class; the per-fold mean after aggregation.
    double support = 0.0;
    // Set when TP+FP (or TP+FN) was zero in at least one fold.
    bool precision_undefined = false;
    bool recall_undefined = false;
};

struct EvalReport {
    std::array<ClassMetrics, kNumClasses> classes{};
    Prf micro;
    Prf micro_std;
    Prf macro;
    Prf macro_std;
    std::vector<Prf> fold_micro;
    std::vector<Prf> fold_macro;
    std::size_t folds = 0;
    // Fewer than two folds: std reported as 0.
    bool std_undefined = true;

    const ClassMetrics& operator[](RelationClass c) const { return classes[class_index(c)]; }
    double total_support() const;
};

/// Single-fold report. Zero denominators yield 0 and set the matching flag.
EvalReport prf_scores(const ConfusionMatrix& confusion);

/// Mean and sample (n-1) standard deviation of every metric across folds.
EvalReport aggregate_folds(std::span<const EvalReport> reports);

}  // namespace semrel
