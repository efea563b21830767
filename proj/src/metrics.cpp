#include "semrel/metrics.hpp"

#include <cmath>

#include "semrel/errors.hpp"
#include "semrel/predictions.hpp"

namespace semrel {

ConfusionMatrix::ConfusionMatrix(const Counts& counts) : counts_(counts) {
    if ((counts_.array() < 0).any()) throw ValidationError("confusion counts must be >= 0");
}

void ConfusionMatrix::add(RelationClass truth, RelationClass predicted, std::int64_t n) {
    if (n < 0) throw ValidationError("confusion increments must be >= 0");
    counts_(class_index(truth), class_index(predicted)) += n;
}

Eigen::Matrix<double, kNumClasses, kNumClasses> ConfusionMatrix::row_normalized() const {
    Eigen::Matrix<double, kNumClasses, kNumClasses> out = counts_.cast<double>();
    for (Eigen::Index r = 0; r < out.rows(); ++r) {
        const double support = out.row(r).sum();
        if (support > 0) out.row(r) /= support;
    }
    return out;
}

ConfusionMatrix& ConfusionMatrix::operator+=(const ConfusionMatrix& other) {
    counts_ += other.counts_;
    return *this;
}

ConfusionMatrix confusion(std::span<const PredictionRecord> records) {
    ConfusionMatrix m;
    for (const auto& r : records) {
        if (!r.true_label) {
            throw ValidationError("prediction record " + r.seed_id + " -> " + r.target_id +
                                  " has no true label");
        }
        m.add(*r.true_label, r.predicted());
    }
    return m;
}

double EvalReport::total_support() const {
    double sum = 0.0;
    for (const auto& c : classes) sum += c.support;
    return sum;
}

namespace {

Prf make_prf(double tp, double fp, double fn, bool* p_undef, bool* r_undef) {
    Prf s;
    if (tp + fp > 0) {
        s.precision = tp / (tp + fp);
    } else if (p_undef) {
        *p_undef = true;
    }
    if (tp + fn > 0) {
        s.recall = tp / (tp + fn);
    } else if (r_undef) {
        *r_undef = true;
    }
    if (s.precision + s.recall > 0) s.f1 = 2 * s.precision * s.recall / (s.precision + s.recall);
    return s;
}

// Two-pass mean/std for numerical robustness.
std::pair<double, double> mean_std(const std::vector<double>& xs) {
    double mean = 0.0;
    for (double x : xs) mean += x;
    mean /= static_cast<double>(xs.size());
    if (xs.size() < 2) return {mean, 0.0};
    double ss = 0.0;
    for (double x : xs) ss += (x - mean) * (x - mean);
    return {mean, std::sqrt(ss / static_cast<double>(xs.size() - 1))};
}

void reduce(const std::vector<Prf>& values, Prf& mean, Prf& std) {
    std::vector<double> p, r, f;
    for (const auto& v : values) {
        p.push_back(v.precision);
        r.push_back(v.recall);
        f.push_back(v.f1);
    }
    std::tie(mean.precision, std.precision) = mean_std(p);
    std::tie(mean.recall, std.recall) = mean_std(r);
    std::tie(mean.f1, std.f1) = mean_std(f);
}

}  // namespace

EvalReport prf_scores(const ConfusionMatrix& confusion) {
    EvalReport report;
    report.folds = 1;
    report.std_undefined = true;
    const auto& m = confusion.counts();
    double tp_all = 0, fp_all = 0, fn_all = 0;
    for (std::size_t c = 0; c < kNumClasses; ++c) {
        const auto i = static_cast<Eigen::Index>(c);
        const double tp = static_cast<double>(m(i, i));
        const double fp = static_cast<double>(m.col(i).sum()) - tp;
        const double fn = static_cast<double>(m.row(i).sum()) - tp;
        auto& cls = report.classes[c];
        cls.mean = make_prf(tp, fp, fn, &cls.precision_undefined, &cls.recall_undefined);
        cls.support = tp + fn;
        tp_all += tp;
        fp_all += fp;
        fn_all += fn;
    }
    report.micro = make_prf(tp_all, fp_all, fn_all, nullptr, nullptr);
    for (const auto& cls : report.classes) {
        report.macro.precision += cls.mean.precision / kNumClasses;
        report.macro.recall += cls.mean.recall / kNumClasses;
        report.macro.f1 += cls.mean.f1 / kNumClasses;
    }
    report.fold_micro = {report.micro};
    report.fold_macro = {report.macro};
    return report;
}

EvalReport aggregate_folds(std::span<const EvalReport> reports) {
    EvalReport out;
    if (reports.empty()) return out;
    out.folds = 0;
    for (const auto& r : reports) {
        out.fold_micro.insert(out.fold_micro.end(), r.fold_micro.begin(), r.fold_micro.end());
        out.fold_macro.insert(out.fold_macro.end(), r.fold_macro.begin(), r.fold_macro.end());
        out.folds += r.folds;
    }
    out.std_undefined = out.folds < 2;
    reduce(out.fold_micro, out.micro, out.micro_std);
    reduce(out.fold_macro, out.macro, out.macro_std);
    for (std::size_t c = 0; c < kNumClasses; ++c) {
        std::vector<Prf> per_fold;
        double support = 0.0;
        for (const auto& r : reports) {
            per_fold.push_back(r.classes[c].mean);
            support += r.classes[c].support;
            out.classes[c].precision_undefined |= r.classes[c].precision_undefined;
            out.classes[c].recall_undefined |= r.classes[c].recall_undefined;
        }
        reduce(per_fold, out.classes[c].mean, out.classes[c].std);
        out.classes[c].support = support / static_cast<double>(reports.size());
    }
    return out;
}

}  // namespace semrel
