#pragma once

#include <span>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "semrel/metrics.hpp"

namespace semrel {

enum class ReportFormat { Text, Json, Csv };

ReportFormat parse_report_format(std::string_view name);

/// One row of the model x scheme x sequence-length summary.
struct SummaryRow {
    std::string model;
    std::string seq_len = "-";
    std::string scheme;
    double f1 = 0.0;
    double std = 0.0;
};

/// Per-class precision/recall/F1/support plus micro and macro rows. An empty
/// report (no folds) renders the header only. Supports are shown as rounded
/// per-fold means; the average rows show the sum of the rounded supports.
std::string render_class_table(const EvalReport& report, ReportFormat format);

/// Row-normalized confusion grid.
std::string render_confusion(const ConfusionMatrix& confusion, ReportFormat format);

/// Heat-map of the row-normalized confusion matrix as a standalone SVG.
std::string render_confusion_svg(const ConfusionMatrix& confusion);

std::string render_summary(std::span<const SummaryRow> rows, ReportFormat format);

/// Class table followed by the confusion grid (a single object for JSON).
std::string render_report(const EvalReport& report, const ConfusionMatrix& confusion,
                          ReportFormat format);

nlohmann::json report_to_json(const EvalReport& report);
EvalReport report_from_json(const nlohmann::json& j);
nlohmann::json confusion_to_json(const ConfusionMatrix& confusion);
ConfusionMatrix confusion_from_json(const nlohmann::json& j);

}  // namespace semrel
