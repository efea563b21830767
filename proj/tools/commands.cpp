#include "commands.hpp"

#include <fstream>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>

#include "semrel/dataset.hpp"
#include "semrel/errors.hpp"
#include "semrel/experiment.hpp"
#include "semrel/seed.hpp"
#include "semrel/text.hpp"
#include "semrel/word_vectors.hpp"

namespace semrel::cli {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

// Seed streams, one per pipeline stage.
constexpr std::uint64_t kHarvestStream = 10;
constexpr std::uint64_t kNegativeStream = 20;
constexpr std::uint64_t kEmbeddingStream = 30;
constexpr std::uint64_t kTrainStream = 40;

void write_text(const fs::path& path, const std::string& content) {
    fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path.string());
    out << content;
    if (!out) throw IoError("write failure on " + path.string());
}

json read_json(const fs::path& path) {
    require_input(path, "file");
    std::ifstream in(path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
}

StopWords stop_words_for(const RunConfig& cfg) {
    if (cfg.stopwords.empty()) return english_stop_words();
    require_input(cfg.stopwords, "stop-word list");
    return load_stop_words(cfg.stopwords);
}

Corpus load_corpus_logged(const RunConfig& cfg, std::ostream& log) {
    require_input(cfg.corpus, "corpus");
    auto loaded = load_corpus(cfg.corpus);
    log << "corpus: " << loaded.documents.size() << " documents";
    if (loaded.dropped_empty_text > 0) log << ", " << loaded.dropped_empty_text << " dropped (empty text)";
    log << '\n';
    return std::move(loaded.documents);
}

std::vector<std::string> ids_of(const std::vector<LabeledPair>& pairs) {
    const auto pool = document_pool(pairs);
    return {pool.begin(), pool.end()};
}

DocVectorTable compute_doc_vectors(const RunConfig& cfg, const std::vector<LabeledPair>* pairs,
                                   std::ostream& log) {
    const Corpus corpus = load_corpus_logged(cfg, log);
    if (cfg.embedder == Embedder::AvgGlove) {
        require_input(cfg.word_vectors, "word vectors");
        auto wv = load_word_vectors(cfg.word_vectors);
        log << "word vectors: " << wv.table.size() << " x " << wv.table.dim();
        if (wv.rejected_lines > 0) log << ", " << wv.rejected_lines << " malformed lines skipped";
        log << '\n';
        auto emb = embed_corpus_avg(corpus, wv.table, stop_words_for(cfg),
                                    pairs ? ids_of(*pairs) : std::vector<std::string>{});
        if (!emb.zero_coverage_ids.empty()) {
            log << "warning: " << emb.zero_coverage_ids.size()
                << " documents have no in-vocabulary token (zero vector)\n";
        }
        return std::move(emb.vectors);
    }
    PvdbowConfig pv = cfg.pvdbow;
    pv.rng_seed = derive_seed(cfg.rng_seed, kEmbeddingStream);
    auto r = train_pvdbow(corpus, pv);
    log << "pv-dbow: vocabulary " << r.vocabulary_size << ", loss per epoch:";
    for (double l : r.epoch_loss) log << ' ' << std::setprecision(4) << l;
    log << '\n';
    if (!r.untrained_ids.empty()) {
        log << "warning: " << r.untrained_ids.size()
            << " documents have no in-vocabulary token (random vector)\n";
    }
    return std::move(r.vectors);
}

DocVectorTable doc_vectors_for(const RunConfig& cfg, const std::vector<LabeledPair>& pairs,
                               std::ostream& log) {
    if (!cfg.doc_vectors.empty()) {
        require_input(cfg.doc_vectors, "doc vectors");
        return read_doc_vectors(cfg.doc_vectors);
    }
    return compute_doc_vectors(cfg, &pairs, log);
}

std::vector<LabeledPair> load_pairs(const RunConfig& cfg) {
    require_input(cfg.pairs, "pairs");
    auto pairs = read_pairs(cfg.pairs);
    if (pairs.empty()) throw ValidationError("pairs file is empty: " + cfg.pairs.string());
    return pairs;
}

std::string format_score(double s) {
    std::ostringstream o;
    o << std::fixed << std::setprecision(2) << s;
    return o.str();
}

}  // namespace

void cmd_build_dataset(const RunConfig& cfg, std::ostream& out, std::ostream& log) {
    const Corpus corpus = load_corpus_logged(cfg, log);

    HarvestOptions h = cfg.harvest;
    h.rng_seed = derive_seed(cfg.rng_seed, kHarvestStream);
    if (!h.cache_dir) h.cache_dir = cfg.output_dir / "sparql_cache";

    HttpSparqlTransport transport(cfg.sparql_endpoint);
    const std::set<RelationClass> relations(kPositiveClasses.begin(), kPositiveClasses.end());
    const auto harvested = fetch_relations(transport, relations, h);
    log << "harvested " << harvested.size() << " statements\n";
    const auto expanded = expand_missing_relations(transport, harvested, h);
    log << "expanded to " << expanded.size() << " statements\n";

    const auto filtered = filter_triples(expanded);
    log << "single-label pairs: " << filtered.size() << '\n';
    const auto mapped = map_to_corpus(filtered, corpus);
    if (mapped.dropped_unresolved > 0) {
        log << "dropped " << mapped.dropped_unresolved << " pairs without a corpus document\n";
    }
    const auto negatives = negative_sample(mapped.pairs, document_pool(mapped.pairs),
                                           mapped.pairs.size(),
                                           derive_seed(cfg.rng_seed, kNegativeStream));

    HarvestCache cache(*h.cache_dir);
    const auto dataset = assemble_dataset(
        mapped.pairs, negatives, corpus,
        {cfg.rng_seed, cfg.sparql_endpoint, cache.harvest_timestamp(cfg.sparql_endpoint)});

    write_pairs(cfg.output_dir / "pairs.jsonl", dataset.pairs);
    write_manifest(cfg.output_dir / "manifest.json", dataset.manifest);

    out << "class   count\n";
    for (auto c : kAllClasses) {
        out << std::left << std::setw(8) << pid(c) << dataset.manifest.count(c) << '\n';
    }
    out << std::left << std::setw(8) << "total" << dataset.manifest.total << '\n';
}

void cmd_train_embeddings(const RunConfig& cfg, std::ostream& out, std::ostream& log) {
    RunConfig pv = cfg;
    pv.embedder = Embedder::Pvdbow;
    const auto vectors = compute_doc_vectors(pv, nullptr, log);
    const auto path = cfg.output_dir / "doc_vectors.txt";
    write_doc_vectors(path, vectors);
    out << "wrote " << vectors.size() << " document vectors (dim " << vectors.dim() << ") to "
        << path.string() << '\n';
}

void cmd_embed(const RunConfig& cfg, std::ostream& out, std::ostream& log) {
    std::vector<LabeledPair> pairs;
    if (!cfg.pairs.empty()) pairs = load_pairs(cfg);
    const auto vectors = !cfg.doc_vectors.empty()
                             ? doc_vectors_for(cfg, pairs, log)
                             : compute_doc_vectors(cfg, pairs.empty() ? nullptr : &pairs, log);
    if (cfg.doc_vectors.empty()) {
        write_doc_vectors(cfg.output_dir / "doc_vectors.txt", vectors);
        out << "wrote " << vectors.size() << " document vectors to "
            << (cfg.output_dir / "doc_vectors.txt").string() << '\n';
    }
    if (pairs.empty()) return;

    const auto X = pair_matrix(pairs, vectors, cfg.scheme);
    const auto path = cfg.output_dir / ("pair_vectors." + std::string(scheme_flag(cfg.scheme)) + ".tsv");
    fs::create_directories(path.parent_path());
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot write " + path.string());
    char buf[32];
    for (std::size_t j = 0; j < pairs.size(); ++j) {
        f << pairs[j].seed_id << '\t' << pairs[j].target_id << '\t' << pid(pairs[j].label) << '\t';
        for (Eigen::Index i = 0; i < X.rows(); ++i) {
            std::snprintf(buf, sizeof buf, i == 0 ? "%.9g" : " %.9g",
                          static_cast<double>(X(i, static_cast<Eigen::Index>(j))));
            f << buf;
        }
        f << '\n';
    }
    if (!f) throw IoError("write failure on " + path.string());
    out << "wrote " << pairs.size() << " pair vectors (" << scheme_label(cfg.scheme) << ", dim "
        << X.rows() << ") to " << path.string() << '\n';
}

void cmd_experiment(const RunConfig& cfg, bool grid, std::ostream& out, std::ostream& log) {
    const auto pairs = load_pairs(cfg);
    const auto docs = doc_vectors_for(cfg, pairs, log);

    std::vector<ConcatScheme> schemes{cfg.scheme};
    if (grid) schemes = {ConcatScheme::UV, ConcatScheme::UVDiff, ConcatScheme::UVDiffProd};

    std::vector<SummaryRow> rows;
    for (auto scheme : schemes) {
        CrossValidationConfig cv;
        cv.scheme = scheme;
        cv.mlp = cfg.mlp;
        cv.k = cfg.k;
        cv.rng_seed = cfg.rng_seed;
        cv.jobs = cfg.jobs;
        const auto result = cross_validate(pairs, docs, cv);

        const std::string cell = std::string(embedder_flag(cfg.embedder)) + "_" +
                                 std::string(scheme_flag(scheme));
        const auto dir = cfg.output_dir / cell;
        write_text(dir / "report.txt", render_report(result.aggregate, result.pooled_confusion, ReportFormat::Text));
        write_text(dir / "report.csv", render_report(result.aggregate, result.pooled_confusion, ReportFormat::Csv));
        write_text(dir / "report.json", render_report(result.aggregate, result.pooled_confusion, ReportFormat::Json));
        write_text(dir / "confusion.svg", render_confusion_svg(result.pooled_confusion));
        write_predictions(dir / "predictions.jsonl", result.all_predictions());
        write_folds(dir / "folds.jsonl", result.assignment);
        json losses = json::array();
        for (const auto& f : result.folds) losses.push_back(f.trace.epoch_loss);
        const json cell_meta{{"model", embedder_model_name(cfg.embedder)},
                             {"embedder", embedder_flag(cfg.embedder)},
                             {"scheme", scheme_flag(scheme)},
                             {"seq_len", "-"},
                             {"k", cfg.k},
                             {"seed", cfg.rng_seed},
                             {"pairs", pairs.size()},
                             {"fold_sizes", result.assignment.fold_sizes()},
                             {"mlp", cfg.mlp},
                             {"epoch_loss", losses}};
        write_text(dir / "cell.json", cell_meta.dump(2) + "\n");

        rows.push_back({std::string(embedder_model_name(cfg.embedder)), "-",
                        std::string(scheme_label(scheme)), result.aggregate.micro.f1,
                        result.aggregate.micro_std.f1});
        log << cell << ": micro F1 " << std::fixed << std::setprecision(3) << result.aggregate.micro.f1
            << '\n';
    }
    write_text(cfg.output_dir / "summary.txt", render_summary(rows, ReportFormat::Text));
    write_text(cfg.output_dir / "summary.csv", render_summary(rows, ReportFormat::Csv));
    write_text(cfg.output_dir / "summary.json", render_summary(rows, ReportFormat::Json));
    out << render_summary(rows, ReportFormat::Text);
}

void cmd_train(const RunConfig& cfg, std::ostream& out, std::ostream& log) {
    const auto pairs = load_pairs(cfg);
    auto docs = doc_vectors_for(cfg, pairs, log);
    fs::path doc_path = cfg.doc_vectors;
    if (doc_path.empty()) {
        doc_path = cfg.output_dir / "doc_vectors.txt";
        write_doc_vectors(doc_path, docs);
    }

    const auto X = pair_matrix(pairs, docs, cfg.scheme);
    const auto y = labels_of(pairs);
    MlpConfig mlp = cfg.mlp;
    mlp.input_dim = X.rows();
    mlp.rng_seed = derive_seed(cfg.rng_seed, kTrainStream);
    auto model = init_model<float>(mlp);
    const auto trace = train<float>(model, X, y, mlp);

    const auto model_path = cfg.model.empty() ? cfg.output_dir / "model.bin" : cfg.model;
    save_model(model_path, model);
    const json meta{{"embedder", embedder_flag(cfg.embedder)},
                    {"scheme", scheme_flag(cfg.scheme)},
                    {"doc_vectors", fs::absolute(doc_path).string()},
                    {"pairs", pairs.size()},
                    {"epoch_loss", trace.epoch_loss}};
    auto meta_path = model_path;
    meta_path.replace_extension(".json");
    write_text(meta_path, meta.dump(2) + "\n");
    out << "trained on " << pairs.size() << " pairs, final loss "
        << (trace.epoch_loss.empty() ? 0.0 : trace.epoch_loss.back()) << "; model at "
        << model_path.string() << '\n';
}

void cmd_evaluate(const RunConfig& cfg, const fs::path& predictions, ReportFormat format,
                  std::ostream& out, std::ostream& log) {
    require_input(predictions, "predictions");
    const auto records = read_predictions(predictions);
    if (records.empty()) throw ValidationError("no prediction records in " + predictions.string());

    std::map<std::size_t, std::vector<PredictionRecord>> by_fold;
    for (const auto& r : records) by_fold[r.fold.value_or(0)].push_back(r);
    std::vector<EvalReport> reports;
    ConfusionMatrix pooled;
    for (const auto& [fold, recs] : by_fold) {
        const auto m = confusion(recs);
        reports.push_back(prf_scores(m));
        pooled += m;
    }
    const auto aggregate = aggregate_folds(reports);
    log << records.size() << " records in " << by_fold.size() << " fold(s)\n";
    write_text(cfg.output_dir / "evaluation.txt", render_report(aggregate, pooled, ReportFormat::Text));
    write_text(cfg.output_dir / "evaluation.csv", render_report(aggregate, pooled, ReportFormat::Csv));
    write_text(cfg.output_dir / "evaluation.json", render_report(aggregate, pooled, ReportFormat::Json));
    out << render_report(aggregate, pooled, format);
}

void cmd_predict(const RunConfig& cfg, const PredictArgs& args, std::ostream& out) {
    const fs::path model_path = cfg.model.empty() ? cfg.output_dir / "model.bin" : cfg.model;
    require_input(model_path, "model checkpoint");
    auto meta_path = model_path;
    meta_path.replace_extension(".json");
    const json meta = read_json(meta_path);

    const ConcatScheme scheme = parse_scheme(meta.at("scheme").get<std::string>());
    if (args.scheme_given && scheme != cfg.scheme) {
        throw ValidationError("model was trained with scheme " + std::string(scheme_flag(scheme)) +
                              ", not " + std::string(scheme_flag(cfg.scheme)));
    }
    const fs::path doc_path =
        cfg.doc_vectors.empty() ? fs::path(meta.at("doc_vectors").get<std::string>()) : cfg.doc_vectors;
    require_input(doc_path, "doc vectors");
    const auto docs = read_doc_vectors(doc_path);
    const auto model = load_model<float>(model_path);

    for (const auto* id : {&args.seed_id, &args.target_id}) {
        if (!docs.contains(*id)) throw ValidationError("unknown doc_id '" + *id + "'");
    }
    const Eigen::VectorXf x = concat(docs.row(args.seed_id), docs.row(args.target_id), scheme);
    if (x.size() != model.config.input_dim) {
        throw ValidationError("model expects input dim " + std::to_string(model.config.input_dim) +
                              ", pair vector has " + std::to_string(x.size()));
    }
    const auto prediction = predict(model, x);
    const auto record = make_record(args.seed_id, args.target_id, std::nullopt, prediction);
    const bool same = args.seed_id == args.target_id;
    if (args.json) {
        auto j = record_to_json(record);
        j["same_document"] = same;
        out << j.dump() << '\n';
        return;
    }
    const auto first = prediction.ranked[0];
    const auto second = prediction.ranked[1];
    out << "1st: " << display_name(first) << " (" << format_score(prediction.scores[class_index(first)])
        << "), 2nd: " << display_name(second) << " ("
        << format_score(prediction.scores[class_index(second)]) << ")\n";
    if (same) out << "note: seed and target are the same document\n";
}

void cmd_report(const ReportArgs& args, std::ostream& out) {
    if (args.inputs.empty()) throw ValidationError("report needs at least one --input");
    std::vector<SummaryRow> rows;
    for (const auto& input : args.inputs) {
        require_input(input, "report input");
        const fs::path report_path = fs::is_directory(input) ? input / "report.json" : input;
        const json j = read_json(report_path);
        const auto report = report_from_json(j);
        SummaryRow row;
        row.model = report_path.parent_path().filename().string();
        row.scheme = "-";
        const auto cell_path = report_path.parent_path() / "cell.json";
        if (fs::exists(cell_path)) {
            const json cell = read_json(cell_path);
            row.model = cell.value("model", row.model);
            row.seq_len = cell.value("seq_len", row.seq_len);
            row.scheme = std::string(scheme_label(parse_scheme(cell.value("scheme", "uvdp"))));
        }
        row.f1 = report.micro.f1;
        row.std = report.micro_std.f1;
        rows.push_back(row);
        if (args.detail) {
            const auto conf = j.contains("confusion") ? confusion_from_json(j.at("confusion")) : ConfusionMatrix{};
            out << "== " << input.string() << '\n' << render_report(report, conf, args.format) << '\n';
        }
    }
    out << render_summary(rows, args.format);
}

}  // namespace semrel::cli
