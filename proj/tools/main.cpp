#include <cstdlib>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "commands.hpp"
#include "semrel/errors.hpp"

using namespace semrel;
using namespace semrel::cli;

namespace {

struct Overrides {
    std::string config;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> scheme;
    std::optional<std::string> embedder;
    std::optional<std::size_t> k;
    std::optional<std::string> out;
    std::optional<std::string> corpus, pairs, word_vectors, doc_vectors, stopwords, model;
    std::optional<unsigned> jobs;
    std::optional<int> epochs;
    std::optional<std::vector<long>> hidden;
    std::optional<double> dropout, learning_rate;
    std::optional<long> batch_size;
};

RunConfig resolve(const Overrides& o) {
    RunConfig cfg = o.config.empty() ? RunConfig{} : load_run_config(o.config);
    if (o.seed) cfg.rng_seed = *o.seed;
    if (o.scheme) cfg.scheme = parse_scheme(*o.scheme);
    if (o.embedder) cfg.embedder = parse_embedder(*o.embedder);
    if (o.k) cfg.k = *o.k;
    if (o.out) cfg.output_dir = *o.out;
    if (o.corpus) cfg.corpus = *o.corpus;
    if (o.pairs) cfg.pairs = *o.pairs;
    if (o.word_vectors) cfg.word_vectors = *o.word_vectors;
    if (o.doc_vectors) cfg.doc_vectors = *o.doc_vectors;
    if (o.stopwords) cfg.stopwords = *o.stopwords;
    if (o.model) cfg.model = *o.model;
    if (o.jobs) cfg.jobs = *o.jobs;
    if (o.epochs) cfg.mlp.epochs = *o.epochs;
    if (o.hidden) cfg.mlp.hidden_layers.assign(o.hidden->begin(), o.hidden->end());
    if (o.dropout) cfg.mlp.dropout_prob = *o.dropout;
    if (o.learning_rate) cfg.mlp.learning_rate = *o.learning_rate;
    if (o.batch_size) cfg.mlp.batch_size = *o.batch_size;
    if (const char* env = std::getenv("SPARQL_ENDPOINT"); env != nullptr && *env != '\0') {
        cfg.sparql_endpoint = env;
    }
    cfg.validate();
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Pairwise semantic-relation classification of Wikipedia articles"};
    app.require_subcommand(1);
    app.fallthrough();

    Overrides o;
    app.add_option("--config", o.config, "JSON run configuration");
    app.add_option("--seed", o.seed, "RNG seed for every stage");
    app.add_option("--scheme", o.scheme, "Concatenation scheme: uv|uvd|uvdp");
    app.add_option("--embedder", o.embedder, "Document embedder: avgglove|pvdbow");
    app.add_option("--k", o.k, "Number of cross-validation folds");
    app.add_option("--out", o.out, "Output directory");
    app.add_option("--corpus", o.corpus, "Corpus JSONL");
    app.add_option("--pairs", o.pairs, "Labeled pairs JSONL");
    app.add_option("--word-vectors", o.word_vectors, "Pretrained word vectors (text format)");
    app.add_option("--doc-vectors", o.doc_vectors, "Precomputed document vectors");
    app.add_option("--stopwords", o.stopwords, "Stop-word list, one per line");
    app.add_option("--model", o.model, "Classifier checkpoint");
    app.add_option("--jobs", o.jobs, "Folds trained in parallel");
    app.add_option("--epochs", o.epochs, "MLP training epochs");
    app.add_option("--hidden", o.hidden, "MLP hidden layer sizes")->expected(0, -1);
    app.add_option("--dropout", o.dropout, "MLP dropout probability");
    app.add_option("--learning-rate", o.learning_rate, "Adam learning rate");
    app.add_option("--batch-size", o.batch_size, "Mini-batch size");

    auto* build = app.add_subcommand("build-dataset", "Harvest relations and assemble the dataset");
    auto* train_emb = app.add_subcommand("train-embeddings", "Train PV-DBOW document vectors");
    auto* embed = app.add_subcommand("embed", "Compute document (and pair) vectors");
    auto* experiment = app.add_subcommand("experiment", "k-fold cross-validation for one or all schemes");
    bool grid = false;
    experiment->add_flag("--grid", grid, "Run all three concatenation schemes");
    auto* train_cmd = app.add_subcommand("train", "Train a classifier on the whole dataset");
    auto* evaluate = app.add_subcommand("evaluate", "Score a prediction file");
    std::string predictions_path;
    std::string eval_format = "text";
    evaluate->add_option("--predictions", predictions_path, "Prediction records JSONL")->required();
    evaluate->add_option("--format", eval_format, "text|json|csv");
    auto* predict_cmd = app.add_subcommand("predict", "Rank the relations of one document pair");
    PredictArgs pargs;
    predict_cmd->add_option("--seed-id", pargs.seed_id, "Seed document id")->required();
    predict_cmd->add_option("--target-id", pargs.target_id, "Target document id")->required();
    predict_cmd->add_flag("--json", pargs.json, "Machine-readable output");
    auto* report = app.add_subcommand("report", "Summarize experiment reports");
    ReportArgs rargs;
    std::vector<std::string> inputs;
    std::string report_format = "text";
    report->add_option("--input", inputs, "Experiment cell directory or report.json")->required();
    report->add_option("--format", report_format, "text|json|csv");
    report->add_flag("--detail", rargs.detail, "Also print per-class tables");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (report->parsed()) {
            rargs.inputs.assign(inputs.begin(), inputs.end());
            rargs.format = parse_report_format(report_format);
            cmd_report(rargs, std::cout);
            return 0;
        }
        const RunConfig cfg = resolve(o);
        if (build->parsed()) cmd_build_dataset(cfg, std::cout, std::cerr);
        if (train_emb->parsed()) cmd_train_embeddings(cfg, std::cout, std::cerr);
        if (embed->parsed()) cmd_embed(cfg, std::cout, std::cerr);
        if (experiment->parsed()) cmd_experiment(cfg, grid, std::cout, std::cerr);
        if (train_cmd->parsed()) cmd_train(cfg, std::cout, std::cerr);
        if (evaluate->parsed()) {
            cmd_evaluate(cfg, predictions_path, parse_report_format(eval_format), std::cout, std::cerr);
        }
        if (predict_cmd->parsed()) {
            pargs.scheme_given = o.scheme.has_value();
            cmd_predict(cfg, pargs, std::cout);
        }
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::filesystem::filesystem_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
