#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "fcssc/commands.hpp"
#include "fcssc/version.hpp"

namespace {

using fcssc::CommandResult;
using fcssc::RunConfig;

void add_dataset_options(CLI::App& sub, RunConfig& config, bool& no_header) {
    sub.add_option("--input", config.input, "CSV file to read")
        ->required()
        ->envname("FCSSC_INPUT");
    sub.add_option("--label-col", config.label_column,
                   "label column name or zero-based index (default: last column)")
        ->envname("FCSSC_LABEL_COL");
    sub.add_flag("--no-header", no_header, "treat the first row as data");
    sub.add_option("--seed", config.seed, "seed for all randomness")
        ->capture_default_str()
        ->envname("FCSSC_SEED");
    sub.add_option("--output", config.output, "write the report here instead of stdout")
        ->envname("FCSSC_OUTPUT");
}

void add_selector_options(CLI::App& sub, RunConfig& config) {
    sub.add_option("--beta", config.beta, "weight of separability vs consistency, in [0,1]")
        ->capture_default_str()
        ->envname("FCSSC_BETA");
    sub.add_option("--delta", config.delta,
                   "number of features to select (0 = all up to 100 features, else 50)")
        ->capture_default_str()
        ->envname("FCSSC_DELTA");
    sub.add_option("--pi", config.pi, "neighborhood radius divisor, > 0")
        ->capture_default_str()
        ->envname("FCSSC_PI");
    sub.add_option("--clustering", config.clustering,
                   "feature clustering stage: auto, on, or off")
        ->capture_default_str()
        ->envname("FCSSC_CLUSTERING");
    sub.add_option("--k", config.k_override,
                   "cluster count override (0 = derive from the feature count)")
        ->capture_default_str()
        ->envname("FCSSC_K");
}

int finish(const CommandResult& result, const RunConfig& config) {
    if (result.exit_code != 0) {
        std::cerr << result.error_json << '\n';
        return result.exit_code;
    }
    if (config.output.empty()) {
        std::cout << result.report_json << '\n';
        return 0;
    }
    std::ofstream out(config.output);
    out << result.report_json << '\n';
    if (!out) {
        std::cerr << "{\"error\": {\"code\": \"unreadable_file\", \"message\": "
                     "\"cannot write output file\", \"exit_code\": 2}}\n";
        return 2;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Feature selection by clustered greedy forward search, with an "
                 "evaluation harness and rank statistics"};
    app.set_version_flag("--version", fcssc::kToolVersion);
    app.require_subcommand(1);

    RunConfig config;
    bool no_header = false;
    bool no_stratify = false;

    CLI::App* cluster = app.add_subcommand("cluster", "group features by fuzzy C-means");
    add_dataset_options(*cluster, config, no_header);
    cluster->add_option("--k", config.k_override,
                        "cluster count override (0 = derive from the feature count)")
        ->capture_default_str()
        ->envname("FCSSC_K");

    CLI::App* select = app.add_subcommand("select", "run the two-stage feature selection");
    add_dataset_options(*select, config, no_header);
    add_selector_options(*select, config);

    CLI::App* evaluate = app.add_subcommand(
        "evaluate", "cross-validate KNN on all features and on the selected subset");
    add_dataset_options(*evaluate, config, no_header);
    add_selector_options(*evaluate, config);
    evaluate->add_option("--knn-k", config.knn_k, "neighbor count for KNN")
        ->capture_default_str()
        ->envname("FCSSC_KNN_K");
    evaluate->add_option("--folds", config.folds, "cross-validation fold count")
        ->capture_default_str()
        ->envname("FCSSC_FOLDS");
    evaluate->add_flag("--no-stratify", no_stratify, "plain random folds");
    evaluate->add_flag("--select-once", config.select_once,
                       "select on the full dataset instead of per fold");

    CLI::App* stats = app.add_subcommand(
        "stats", "Friedman test and critical difference over method result files");
    stats->add_option("inputs", config.stats_inputs,
                      "JSON files, each {\"method\": name, \"scores\": {dataset: accuracy}}")
        ->expected(-1);
    stats->add_option("--q-alpha", config.q_alpha,
                      "Studentized-range quantile; adds the critical difference")
        ->envname("FCSSC_Q_ALPHA");
    stats->add_option("--output", config.output, "write the report here instead of stdout")
        ->envname("FCSSC_OUTPUT");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        nlohmann::json error{{"error",
                              {{"code", "invalid_argument"},
                               {"message", e.what()},
                               {"exit_code", 2}}}};
        std::cerr << error.dump(2) << '\n';
        return 2;
    }

    config.has_header = !no_header;
    config.stratified = !no_stratify;

    if (cluster->parsed()) {
        return finish(fcssc::cmd_cluster(config), config);
    }
    if (select->parsed()) {
        return finish(fcssc::cmd_select(config), config);
    }
    if (evaluate->parsed()) {
        return finish(fcssc::cmd_evaluate(config), config);
    }
    if (stats->parsed()) {
        return finish(fcssc::cmd_stats(config), config);
    }
    return 2;
}
