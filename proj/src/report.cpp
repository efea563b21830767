#include "semrel/report.hpp"

#include <cmath>
#include <cstdio>
#include <iomanip>
#include <sstream>

#include "semrel/errors.hpp"

namespace semrel {

using nlohmann::json;

namespace {

std::string fixed(double v, int digits) {
    std::ostringstream s;
    s << std::fixed << std::setprecision(digits) << v;
    return s.str();
}

long rounded_support(double s) { return std::lround(s); }

long rounded_total(const EvalReport& r) {
    long sum = 0;
    for (const auto& c : r.classes) sum += rounded_support(c.support);
    return sum;
}

std::string csv_field(std::string_view s) {
    if (s.find_first_of(",\"\n") == std::string_view::npos) return std::string(s);
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

json prf_json(const Prf& p) {
    return json{{"precision", p.precision}, {"recall", p.recall}, {"f1", p.f1}};
}

Prf prf_from(const json& j) {
    return Prf{j.at("precision").get<double>(), j.at("recall").get<double>(), j.at("f1").get<double>()};
}

std::string xml_escape(std::string_view s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            default: out += c;
        }
    }
    return out;
}

}  // namespace

ReportFormat parse_report_format(std::string_view name) {
    if (name == "text" || name == "txt") return ReportFormat::Text;
    if (name == "json") return ReportFormat::Json;
    if (name == "csv") return ReportFormat::Csv;
    throw ValidationError("unknown report format '" + std::string(name) +
                          "' (expected text, json or csv)");
}

json report_to_json(const EvalReport& r) {
    json classes = json::array();
    for (auto c : kAllClasses) {
        const auto& m = r[c];
        classes.push_back(json{{"label", pid(c)},
                               {"name", display_name(c)},
                               {"mean", prf_json(m.mean)},
                               {"std", prf_json(m.std)},
                               {"support", m.support},
                               {"precision_undefined", m.precision_undefined},
                               {"recall_undefined", m.recall_undefined}});
    }
    json fold_micro = json::array();
    json fold_macro = json::array();
    for (const auto& p : r.fold_micro) fold_micro.push_back(prf_json(p));
    for (const auto& p : r.fold_macro) fold_macro.push_back(prf_json(p));
    return json{{"folds", r.folds},
                {"std_undefined", r.std_undefined},
                {"classes", classes},
                {"micro", prf_json(r.micro)},
                {"micro_std", prf_json(r.micro_std)},
                {"macro", prf_json(r.macro)},
                {"macro_std", prf_json(r.macro_std)},
                {"fold_micro", fold_micro},
                {"fold_macro", fold_macro}};
}

EvalReport report_from_json(const json& j) {
    EvalReport r;
    try {
        r.folds = j.at("folds").get<std::size_t>();
        r.std_undefined = j.value("std_undefined", r.folds < 2);
        for (const auto& c : j.at("classes")) {
            const auto cls = parse_label(c.at("label").get<std::string>());
            auto& m = r.classes[class_index(cls)];
            m.mean = prf_from(c.at("mean"));
            m.std = prf_from(c.at("std"));
            m.support = c.at("support").get<double>();
            m.precision_undefined = c.value("precision_undefined", false);
            m.recall_undefined = c.value("recall_undefined", false);
        }
        r.micro = prf_from(j.at("micro"));
        r.micro_std = prf_from(j.at("micro_std"));
        r.macro = prf_from(j.at("macro"));
        r.macro_std = prf_from(j.at("macro_std"));
        for (const auto& p : j.value("fold_micro", json::array())) r.fold_micro.push_back(prf_from(p));
        for (const auto& p : j.value("fold_macro", json::array())) r.fold_macro.push_back(prf_from(p));
    } catch (const json::exception& e) {
        throw ParseError(std::string("malformed report: ") + e.what());
    }
    return r;
}

json confusion_to_json(const ConfusionMatrix& confusion) {
    json labels = json::array();
    json counts = json::array();
    json normalized = json::array();
    const auto norm = confusion.row_normalized();
    for (std::size_t r = 0; r < kNumClasses; ++r) {
        labels.push_back(pid(class_at(r)));
        json crow = json::array();
        json nrow = json::array();
        for (std::size_t c = 0; c < kNumClasses; ++c) {
            crow.push_back(confusion.counts()(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)));
            nrow.push_back(norm(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)));
        }
        counts.push_back(crow);
        normalized.push_back(nrow);
    }
    return json{{"labels", labels}, {"counts", counts}, {"normalized", normalized}};
}

ConfusionMatrix confusion_from_json(const json& j) {
    ConfusionMatrix::Counts counts;
    try {
        const auto& labels = j.at("labels");
        const auto& rows = j.at("counts");
        if (labels.size() != kNumClasses || rows.size() != kNumClasses) {
            throw ValidationError("confusion: expected 10 labels and 10 rows");
        }
        for (std::size_t r = 0; r < kNumClasses; ++r) {
            if (parse_label(labels[r].get<std::string>()) != class_at(r)) {
                throw ValidationError("confusion: labels out of class order");
            }
            if (rows[r].size() != kNumClasses) throw ValidationError("confusion: ragged row");
            for (std::size_t c = 0; c < kNumClasses; ++c) {
                counts(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
                    rows[r][c].get<std::int64_t>();
            }
        }
    } catch (const json::exception& e) {
        throw ParseError(std::string("confusion: ") + e.what());
    }
    return ConfusionMatrix(counts);
}

std::string render_class_table(const EvalReport& r, ReportFormat format) {
    std::ostringstream out;
    const bool empty = r.folds == 0;
    switch (format) {
        case ReportFormat::Json:
            return (empty ? json{{"folds", 0}, {"classes", json::array()}} : report_to_json(r)).dump(2) + "\n";
        case ReportFormat::Csv: {
            out << "class,label,precision,recall,f1,support\n";
            if (empty) break;
            for (auto c : kAllClasses) {
                const auto& m = r[c];
                out << csv_field(display_name(c)) << ',' << pid(c) << ',' << fixed(m.mean.precision, 3)
                    << ',' << fixed(m.mean.recall, 3) << ',' << fixed(m.mean.f1, 3) << ','
                    << rounded_support(m.support) << '\n';
            }
            const long total = rounded_total(r);
            out << "micro avg,," << fixed(r.micro.precision, 3) << ',' << fixed(r.micro.recall, 3)
                << ',' << fixed(r.micro.f1, 3) << ',' << total << '\n';
            out << "macro avg,," << fixed(r.macro.precision, 3) << ',' << fixed(r.macro.recall, 3)
                << ',' << fixed(r.macro.f1, 3) << ',' << total << '\n';
            break;
        }
        case ReportFormat::Text: {
            auto row = [&](std::string_view name, const Prf& p, long support) {
                out << std::left << std::setw(24) << name << std::right << std::setw(7)
                    << fixed(p.precision, 3) << std::setw(7) << fixed(p.recall, 3) << std::setw(7)
                    << fixed(p.f1, 3) << std::setw(9) << support << '\n';
            };
            out << std::left << std::setw(24) << "relation class" << std::right << std::setw(7) << "P"
                << std::setw(7) << "R" << std::setw(7) << "F1" << std::setw(9) << "samples" << '\n';
            if (empty) break;
            for (auto c : kAllClasses) {
                const auto& m = r[c];
                std::string name(display_name(c));
                if (m.precision_undefined || m.recall_undefined) name += " *";
                row(name, m.mean, rounded_support(m.support));
            }
            const long total = rounded_total(r);
            row("micro avg", r.micro, total);
            row("macro avg", r.macro, total);
            out << "folds: " << r.folds;
            if (!r.std_undefined) {
                out << "  micro F1 " << fixed(r.micro.f1, 3) << " +/- " << fixed(r.micro_std.f1, 4);
            }
            out << '\n';
            bool flagged = false;
            for (const auto& m : r.classes) flagged |= m.precision_undefined || m.recall_undefined;
            if (flagged) out << "* precision or recall undefined (zero denominator) in some fold; scored 0\n";
            break;
        }
    }
    return out.str();
}

std::string render_confusion(const ConfusionMatrix& confusion, ReportFormat format) {
    const auto norm = confusion.row_normalized();
    std::ostringstream out;
    switch (format) {
        case ReportFormat::Json:
            return confusion_to_json(confusion).dump(2) + "\n";
        case ReportFormat::Csv:
            out << "true\\predicted";
            for (auto c : kAllClasses) out << ',' << pid(c);
            out << '\n';
            for (auto t : kAllClasses) {
                out << pid(t);
                for (auto c : kAllClasses) {
                    out << ',' << fixed(norm(class_index(t), class_index(c)), 4);
                }
                out << '\n';
            }
            break;
        case ReportFormat::Text:
            out << std::left << std::setw(8) << "true";
            for (auto c : kAllClasses) out << std::right << std::setw(7) << pid(c);
            out << '\n';
            for (auto t : kAllClasses) {
                out << std::left << std::setw(8) << pid(t);
                for (auto c : kAllClasses) {
                    out << std::right << std::setw(7) << fixed(norm(class_index(t), class_index(c)), 2);
                }
                out << '\n';
            }
            break;
    }
    return out.str();
}

std::string render_confusion_svg(const ConfusionMatrix& confusion) {
    const auto norm = confusion.row_normalized();
    constexpr int cell = 56;
    constexpr int left = 170;
    constexpr int top = 150;
    const int size = static_cast<int>(kNumClasses) * cell;
    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << left + size + 20
        << "\" height=\"" << top + size + 40 << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    for (std::size_t i = 0; i < kNumClasses; ++i) {
        const auto name = xml_escape(display_name(class_at(i)));
        out << "<text x=\"" << left - 6 << "\" y=\"" << top + int(i) * cell + cell / 2 + 4
            << "\" text-anchor=\"end\">" << name << "</text>\n";
        const int x = left + int(i) * cell + cell / 2;
        out << "<text x=\"" << x << "\" y=\"" << top - 6 << "\" transform=\"rotate(-45 " << x << ' '
            << top - 6 << ")\">" << name << "</text>\n";
    }
    for (std::size_t r = 0; r < kNumClasses; ++r) {
        for (std::size_t c = 0; c < kNumClasses; ++c) {
            const double v = norm(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
            const int shade = static_cast<int>(std::lround(255.0 * (1.0 - v)));
            char color[8];
            std::snprintf(color, sizeof color, "#%02x%02xff", shade, shade);
            const int x = left + int(c) * cell;
            const int y = top + int(r) * cell;
            out << "<rect x=\"" << x << "\" y=\"" << y << "\" width=\"" << cell << "\" height=\""
                << cell << "\" fill=\"" << color << "\" stroke=\"#ccc\"/>\n";
            out << "<text x=\"" << x + cell / 2 << "\" y=\"" << y + cell / 2 + 4
                << "\" text-anchor=\"middle\" fill=\"" << (v > 0.5 ? "#fff" : "#000") << "\">"
                << fixed(v, 2) << "</text>\n";
        }
    }
    out << "<text x=\"" << left + size / 2 << "\" y=\"" << top + size + 28
        << "\" text-anchor=\"middle\">predicted</text>\n</svg>\n";
    return out.str();
}

std::string render_summary(std::span<const SummaryRow> rows, ReportFormat format) {
    std::ostringstream out;
    switch (format) {
        case ReportFormat::Json: {
            json arr = json::array();
            for (const auto& r : rows) {
                arr.push_back(json{{"model", r.model},
                                   {"seq_len", r.seq_len},
                                   {"scheme", r.scheme},
                                   {"f1", r.f1},
                                   {"std", r.std}});
            }
            return arr.dump(2) + "\n";
        }
        case ReportFormat::Csv:
            out << "model,seq_len,concatenation,f1,std\n";
            for (const auto& r : rows) {
                out << csv_field(r.model) << ',' << csv_field(r.seq_len) << ',' << csv_field(r.scheme)
                    << ',' << fixed(r.f1, 3) << ',' << fixed(r.std, 4) << '\n';
            }
            break;
        case ReportFormat::Text:
            out << std::left << std::setw(16) << "model" << std::setw(6) << "seq" << std::setw(18)
                << "concatenation" << std::right << std::setw(7) << "F1" << std::setw(10) << "std"
                << '\n';
            for (const auto& r : rows) {
                out << std::left << std::setw(16) << r.model << std::setw(6) << r.seq_len
                    << std::setw(18) << r.scheme << std::right << std::setw(7) << fixed(r.f1, 3)
                    << std::setw(10) << ("+/- " + fixed(r.std, 4)) << '\n';
            }
            break;
    }
    return out.str();
}

std::string render_report(const EvalReport& report, const ConfusionMatrix& confusion,
                          ReportFormat format) {
    if (format == ReportFormat::Json) {
        json j = report_to_json(report);
        j["confusion"] = confusion_to_json(confusion);
        return j.dump(2) + "\n";
    }
    return render_class_table(report, format) + "\n" + render_confusion(confusion, format);
}

}  // namespace semrel
