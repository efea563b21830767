#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "run_config.hpp"
#include "semrel/report.hpp"

namespace semrel::cli {

struct PredictArgs {
    std::string seed_id;
    std::string target_id;
    bool json = false;
    bool scheme_given = false;
};

struct ReportArgs {
    std::vector<std::filesystem::path> inputs;
    ReportFormat format = ReportFormat::Text;
    bool detail = false;
};

void cmd_build_dataset(const RunConfig& cfg, std::ostream& out, std::ostream& log);
void cmd_train_embeddings(const RunConfig& cfg, std::ostream& out, std::ostream& log);
void cmd_embed(const RunConfig& cfg, std::ostream& out, std::ostream& log);
void cmd_experiment(const RunConfig& cfg, bool grid, std::ostream& out, std::ostream& log);
void cmd_train(const RunConfig& cfg, std::ostream& out, std::ostream& log);
void cmd_evaluate(const RunConfig& cfg, const std::filesystem::path& predictions,
                  ReportFormat format, std::ostream& out, std::ostream& log);
void cmd_predict(const RunConfig& cfg, const PredictArgs& args, std::ostream& out);
void cmd_report(const ReportArgs& args, std::ostream& out);

}  // namespace semrel::cli
