#ifndef FCSSC_COMMANDS_HPP
#define FCSSC_COMMANDS_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace fcssc {

/// Everything a command invocation can be configured with; unused fields
/// are ignored by commands that do not need them.
struct RunConfig {
    std::string input;
    std::string label_column;  // empty -> last column
    bool has_header = true;
    double beta = 0.5;
    std::size_t delta = 0;            // 0 -> selector default
    double pi = 1.0;
    std::string clustering = "auto";  // auto | on | off
    std::size_t k_override = 0;       // 0 -> derived cluster count
    std::size_t knn_k = 5;
    std::size_t folds = 10;
    bool stratified = true;
    std::uint64_t seed = 0;
    std::string output;  // empty -> stdout (handled by the caller)
    bool select_once = false;
    double q_alpha = 0.0;  // 0 -> critical difference omitted
    std::vector<std::string> stats_inputs;
};

/// Outcome of one command: a report to print on success, or a
/// machine-readable error document for stderr and a nonzero exit code.
struct CommandResult {
    int exit_code = 0;
    std::string report_json;
    std::string error_json;
};

CommandResult cmd_cluster(const RunConfig& config);
CommandResult cmd_select(const RunConfig& config);
CommandResult cmd_evaluate(const RunConfig& config);
CommandResult cmd_stats(const RunConfig& config);

}  // namespace fcssc

#endif
