#include "semrel/word_vectors.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "jsonl.hpp"

namespace semrel {
namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
        const std::size_t start = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
        if (i > start) out.push_back(line.substr(start, i - start));
    }
    return out;
}

bool parse_float(std::string_view s, float& value) {
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    return ec == std::errc() && ptr == s.data() + s.size();
}

}  // namespace

WordVectorLoad load_word_vectors(const std::filesystem::path& path,
                                 const WordVectorLoadOptions& options) {
    auto in = detail::open_input(path);
    WordVectorLoad out;
    std::string line;
    std::size_t line_no = 0;
    Eigen::VectorXf v;
    while (std::getline(in, line)) {
        ++line_no;
        auto fields = split_ws(line);
        if (fields.empty()) continue;
        if (out.table.dim() == 0) {
            if (fields.size() < 2) {
                throw ValidationError(detail::location(path, line_no) +
                                      ": first line has no vector components");
            }
            out.table = WordVectorTable(static_cast<Eigen::Index>(fields.size() - 1));
            v.resize(out.table.dim());
        }
        const auto arity = static_cast<Eigen::Index>(fields.size() - 1);
        if (arity != out.table.dim()) {
            if (options.strict) {
                throw ValidationError(detail::location(path, line_no) + ": expected " +
                                      std::to_string(out.table.dim()) + " components, found " +
                                      std::to_string(arity));
            }
            ++out.rejected_lines;
            out.rejected_line_numbers.push_back(line_no);
            continue;
        }
        for (Eigen::Index k = 0; k < arity; ++k) {
            if (!parse_float(fields[k + 1], v(k)) || !std::isfinite(v(k))) {
                throw ParseError(detail::location(path, line_no) + ": bad component '" +
                                 std::string(fields[k + 1]) + "'");
            }
        }
        const std::string word(fields[0]);
        if (out.table.contains(word)) {
            ++out.rejected_lines;
            out.rejected_line_numbers.push_back(line_no);
            continue;
        }
        out.table.insert(word, v);
    }
    if (out.table.dim() == 0) throw ValidationError("word-vector file is empty: " + path.string());
    return out;
}

CorpusEmbedding embed_corpus_avg(const Corpus& corpus, const WordVectorTable& table,
                                 const StopWords& stop_words, const std::vector<std::string>& ids) {
    if (table.empty()) throw ValidationError("word-vector table is empty");
    CorpusEmbedding out{DocVectorTable(table.dim()), {}};
    auto embed_one = [&](const Document& doc) {
        auto e = avg_glove_embed<float>(doc, table, stop_words);
        if (e.zero_coverage) out.zero_coverage_ids.push_back(doc.doc_id);
        out.vectors.insert(doc.doc_id, e.vector);
    };
    if (ids.empty()) {
        for (const auto& [id, doc] : corpus) embed_one(doc);
    } else {
        for (const auto& id : ids) {
            auto it = corpus.find(id);
            if (it == corpus.end()) throw ValidationError("unknown doc_id: " + id);
            if (!out.vectors.contains(id)) embed_one(it->second);
        }
    }
    return out;
}

void write_doc_vectors(const std::filesystem::path& path, const DocVectorTable& table) {
    auto out = detail::open_output(path);
    out << "dim=" << table.dim() << '\n';
    char buf[32];
    for (std::size_t i = 0; i < table.size(); ++i) {
        out << table.keys()[i];
        auto row = table.row_at(i);
        for (Eigen::Index k = 0; k < row.size(); ++k) {
            std::snprintf(buf, sizeof buf, " %.9g", static_cast<double>(row(k)));
            out << buf;
        }
        out << '\n';
    }
    if (!out) throw IoError("write failure on " + path.string());
}

DocVectorTable read_doc_vectors(const std::filesystem::path& path) {
    auto in = detail::open_input(path);
    std::string line;
    if (!std::getline(in, line) || line.rfind("dim=", 0) != 0) {
        throw ParseError(path.string() + ": missing 'dim=N' header");
    }
    long dim = 0;
    {
        std::string_view digits(line);
        digits.remove_prefix(4);
        while (!digits.empty() && (digits.back() == '\r' || digits.back() == ' ')) {
            digits.remove_suffix(1);
        }
        auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), dim);
        if (ec != std::errc() || ptr != digits.data() + digits.size() || dim <= 0) {
            throw ParseError(path.string() + ": bad header '" + line + "'");
        }
    }
    DocVectorTable table(dim);
    Eigen::VectorXf v(dim);
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        auto fields = split_ws(line);
        if (fields.empty()) continue;
        if (static_cast<long>(fields.size()) < dim + 1) {
            throw ParseError(detail::location(path, line_no) + ": expected an id and " +
                             std::to_string(dim) + " components");
        }
        const std::size_t first = fields.size() - static_cast<std::size_t>(dim);
        for (long k = 0; k < dim; ++k) {
            if (!parse_float(fields[first + k], v(k))) {
                throw ParseError(detail::location(path, line_no) + ": bad component '" +
                                 std::string(fields[first + k]) + "'");
            }
        }
        std::string key(fields[0]);
        for (std::size_t f = 1; f < first; ++f) {
            key += ' ';
            key += fields[f];
        }
        table.insert(key, v);
    }
    return table;
}

}  // namespace semrel
