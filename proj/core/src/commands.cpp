#include "fcssc/commands.hpp"

#include <ctime>
#include <fstream>
#include <map>
#include <set>

#include <json.hpp>

#include "fcssc/dataset.hpp"
#include "fcssc/errors.hpp"
#include "fcssc/evaluation.hpp"
#include "fcssc/fcm.hpp"
#include "fcssc/selection.hpp"
#include "fcssc/version.hpp"

namespace fcssc {

namespace {

using nlohmann::json;

std::string utc_timestamp() {
    const std::time_t now = std::time(nullptr);
    std::tm parts{};
    gmtime_r(&now, &parts);
    char buffer[32];
    std::strftime(buffer, sizeof(buffer), "%Y-%m-%dT%H:%M:%SZ", &parts);
    return buffer;
}

ClusteringMode parse_clustering(const std::string& mode) {
    if (mode == "auto") return ClusteringMode::Auto;
    if (mode == "on") return ClusteringMode::On;
    if (mode == "off") return ClusteringMode::Off;
    throw Error(ErrorCode::InvalidArgument,
                "clustering mode must be auto, on, or off; got '" + mode + "'");
}

json config_echo(const RunConfig& config) {
    json echo{{"input", config.input},
              {"label_col", config.label_column},
              {"header", config.has_header},
              {"beta", config.beta},
              {"delta", config.delta},
              {"pi", config.pi},
              {"clustering", config.clustering},
              {"k", config.k_override},
              {"knn_k", config.knn_k},
              {"folds", config.folds},
              {"stratified", config.stratified},
              {"seed", config.seed},
              {"select_once", config.select_once}};
    if (config.q_alpha > 0.0) {
        echo["q_alpha"] = config.q_alpha;
    }
    if (!config.stats_inputs.empty()) {
        echo["inputs"] = config.stats_inputs;
    }
    return echo;
}

json envelope(const std::string& command, const RunConfig& config, json payload) {
    return json{{"schema_version", 1},
                {"tool", {{"name", kToolName}, {"version", kToolVersion}}},
                {"generated_at", utc_timestamp()},
                {"command", command},
                {"config", config_echo(config)},
                {"payload", std::move(payload)}};
}

FuzzyDecisionSystem load_pipeline(const RunConfig& config) {
    RawTable table = load_csv(config.input, config.label_column, config.has_header);
    table = impute_missing(std::move(table));
    return normalize_min_max(table);
}

SelectorConfig selector_config(const RunConfig& config) {
    SelectorConfig selector;
    selector.beta = config.beta;
    selector.delta = config.delta;
    selector.clustering = parse_clustering(config.clustering);
    selector.cluster_override = config.k_override;
    selector.pi = config.pi;
    selector.seed = config.seed;
    selector.validate();
    return selector;
}

json groups_json(const FeatureGroups& groups) {
    json out = json::array();
    for (const auto& group : groups.groups) {
        out.push_back(group);
    }
    return out;
}

json trace_json(const SelectionTrace& trace, const FuzzyDecisionSystem& fds) {
    json steps = json::array();
    for (const SelectionStep& step : trace.steps) {
        steps.push_back(json{{"feature", step.feature},
                             {"name", fds.feature_names[step.feature]},
                             {"group", step.group},
                             {"gs", step.gs},
                             {"lc", step.lc},
                             {"gamma", step.gamma},
                             {"sig", step.sig},
                             {"candidates_evaluated", step.candidates_evaluated}});
    }
    json names = json::array();
    for (std::size_t a : trace.selected) {
        names.push_back(fds.feature_names[a]);
    }
    std::vector<std::size_t> sizes;
    for (const auto& group : trace.groups.groups) {
        sizes.push_back(group.size());
    }
    return json{{"selected", trace.selected},
                {"selected_names", names},
                {"steps", steps},
                {"groups", groups_json(trace.groups)},
                {"groups_consumed", trace.groups_consumed},
                {"clustering_used", trace.clustering_used},
                {"total_evaluations", trace.total_evaluations},
                {"evaluation_budget", evaluation_budget(sizes, trace.selected.size())}};
}

json report_json(const EvalReport& report) {
    json folds = json::array();
    for (const FoldResult& fold : report.folds) {
        folds.push_back(json{{"accuracy", fold.metrics.accuracy},
                             {"precision", fold.metrics.macro_precision},
                             {"f1", fold.metrics.macro_f1},
                             {"selected", fold.selected}});
    }
    return json{{"folds", folds},
                {"accuracy", {{"mean", report.mean_accuracy}, {"std", report.std_accuracy}}},
                {"precision",
                 {{"mean", report.mean_precision}, {"std", report.std_precision}}},
                {"f1", {{"mean", report.mean_f1}, {"std", report.std_f1}}},
                {"runtime_seconds", report.runtime_seconds},
                {"warnings", report.warnings}};
}

CommandResult success(const std::string& command, const RunConfig& config, json payload) {
    CommandResult result;
    result.report_json = envelope(command, config, std::move(payload)).dump(2);
    return result;
}

CommandResult failure(const Error& error) {
    CommandResult result;
    result.exit_code = exit_code_for(error.code());
    result.error_json = json{{"error",
                              {{"code", error.code_name()},
                               {"message", error.what()},
                               {"exit_code", result.exit_code}}}}
                            .dump(2);
    return result;
}

template <typename Fn>
CommandResult guarded(Fn&& fn) {
    try {
        return fn();
    } catch (const Error& error) {
        return failure(error);
    } catch (const std::exception& ex) {
        return failure(Error(ErrorCode::Internal, ex.what()));
    }
}

}  // namespace

CommandResult cmd_cluster(const RunConfig& config) {
    return guarded([&] {
        const FuzzyDecisionSystem fds = load_pipeline(config);
        const Matrix objects = feature_objects(fds);
        FcmConfig fcm;
        fcm.k = config.k_override > 0 ? config.k_override
                                      : cluster_count(fds.num_features());
        fcm.seed = config.seed;
        const FcmState state = run_fcm(objects, fcm);
        const FeatureGroups groups = harden_groups(state);
        json payload{{"k", fcm.k},
                     {"objective", state.objective},
                     {"iterations", state.iterations},
                     {"feature_names", fds.feature_names},
                     {"groups", groups_json(groups)}};
        return success("cluster", config, std::move(payload));
    });
}

CommandResult cmd_select(const RunConfig& config) {
    return guarded([&] {
        const FuzzyDecisionSystem fds = load_pipeline(config);
        const SelectorConfig selector = selector_config(config);
        const SelectionTrace trace = fcssc(fds, selector);
        json payload = trace_json(trace, fds);
        payload["delta_resolved"] = selector.resolved_delta(fds.num_features());
        return success("select", config, std::move(payload));
    });
}

CommandResult cmd_evaluate(const RunConfig& config) {
    return guarded([&] {
        const FuzzyDecisionSystem fds = load_pipeline(config);
        const SelectorConfig selector = selector_config(config);
        const FoldPlan plan =
            make_fold_plan(fds, config.folds, config.seed, config.stratified);

        std::vector<std::size_t> all_features(fds.num_features());
        for (std::size_t a = 0; a < all_features.size(); ++a) {
            all_features[a] = a;
        }
        const EvalReport baseline = cross_validate(fds, all_features, plan, config.knn_k);

        json payload{{"baseline", report_json(baseline)},
                     {"select_once", config.select_once}};
        if (config.select_once) {
            const SelectionTrace trace = fcssc(fds, selector);
            const EvalReport selected =
                cross_validate(fds, trace.selected, plan, config.knn_k);
            payload["selected"] = report_json(selected);
            payload["selected_features"] = trace.selected;
        } else {
            const EvalReport selected = cross_validate(fds, selector, plan, config.knn_k);
            payload["selected"] = report_json(selected);
        }
        return success("evaluate", config, std::move(payload));
    });
}

CommandResult cmd_stats(const RunConfig& config) {
    return guarded([&] {
        if (config.stats_inputs.size() < 2) {
            throw Error(ErrorCode::InvalidArgument,
                        "stats needs at least two method result files");
        }
        std::vector<std::string> methods;
        std::vector<std::map<std::string, double>> scores_by_method;
        for (const std::string& path : config.stats_inputs) {
            std::ifstream in(path);
            if (!in) {
                throw Error(ErrorCode::UnreadableFile, "cannot open input file: " + path);
            }
            json doc;
            try {
                doc = json::parse(in);
            } catch (const json::exception& ex) {
                throw Error(ErrorCode::MalformedInput,
                            path + " is not valid JSON: " + ex.what());
            }
            if (!doc.contains("method") || !doc.contains("scores") ||
                !doc["scores"].is_object()) {
                throw Error(ErrorCode::MalformedInput,
                            path + " must carry a 'method' name and a 'scores' object");
            }
            methods.push_back(doc["method"].get<std::string>());
            std::map<std::string, double> scores;
            for (const auto& [dataset, value] : doc["scores"].items()) {
                if (!value.is_number()) {
                    throw Error(ErrorCode::MalformedInput,
                                path + ": score for '" + dataset + "' is not a number");
                }
                scores[dataset] = value.get<double>();
            }
            if (scores.empty()) {
                throw Error(ErrorCode::MalformedInput, path + " has no scores");
            }
            scores_by_method.push_back(std::move(scores));
        }

        std::vector<std::string> datasets;
        for (const auto& [dataset, _] : scores_by_method.front()) {
            datasets.push_back(dataset);
        }
        if (datasets.size() < 2) {
            throw Error(ErrorCode::InvalidArgument,
                        "stats needs at least two datasets per method");
        }
        for (std::size_t j = 1; j < scores_by_method.size(); ++j) {
            std::vector<std::string> other;
            for (const auto& [dataset, _] : scores_by_method[j]) {
                other.push_back(dataset);
            }
            if (other != datasets) {
                throw Error(ErrorCode::InconsistentDatasets,
                            "dataset names in " + config.stats_inputs[j] +
                                " do not match " + config.stats_inputs.front());
            }
        }

        Matrix scores(datasets.size(), methods.size());
        for (std::size_t i = 0; i < datasets.size(); ++i) {
            for (std::size_t j = 0; j < methods.size(); ++j) {
                scores(i, j) = scores_by_method[j].at(datasets[i]);
            }
        }
        const RankTable table = rank_methods(scores);
        const std::vector<double> ranks = average_ranks(table);
        const FriedmanResult result = friedman(table);

        json rank_rows = json::array();
        for (std::size_t i = 0; i < datasets.size(); ++i) {
            json row = json::array();
            for (std::size_t j = 0; j < methods.size(); ++j) {
                row.push_back(table.ranks(i, j));
            }
            rank_rows.push_back(std::move(row));
        }
        json payload{{"methods", methods},
                     {"datasets", datasets},
                     {"ranks", rank_rows},
                     {"average_ranks", ranks},
                     {"tau_chi2", result.tau_chi2},
                     {"tau_f", result.tau_f}};
        if (config.q_alpha > 0.0) {
            payload["critical_difference"] =
                critical_difference(config.q_alpha, methods.size(), datasets.size());
        }
        return success("stats", config, std::move(payload));
    });
}

}  // namespace fcssc
