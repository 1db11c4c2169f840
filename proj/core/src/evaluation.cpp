#include "fcssc/evaluation.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <set>

#include "fcssc/errors.hpp"
#include "fcssc/rng.hpp"

namespace fcssc {

FoldPlan make_fold_plan(const FuzzyDecisionSystem& fds, std::size_t k, std::uint64_t seed,
                        bool stratified) {
    const std::size_t n = fds.num_samples();
    if (k < 2) {
        throw Error(ErrorCode::InvalidArgument, "fold count must be at least 2");
    }
    if (k > n) {
        throw Error(ErrorCode::InvalidArgument, "fold count exceeds sample count");
    }
    FoldPlan plan;
    plan.k = k;
    plan.seed = seed;
    plan.stratified = stratified;
    plan.assignments.assign(n, 0);
    Rng rng(seed);
    std::size_t pointer = 0;
    if (stratified) {
        for (const auto& members : fds.classes) {
            std::vector<std::size_t> order(members);
            shuffle(order, rng);
            for (std::size_t idx : order) {
                plan.assignments[idx] = pointer % k;
                ++pointer;
            }
        }
    } else {
        std::vector<std::size_t> order(n);
        for (std::size_t i = 0; i < n; ++i) {
            order[i] = i;
        }
        shuffle(order, rng);
        for (std::size_t idx : order) {
            plan.assignments[idx] = pointer % k;
            ++pointer;
        }
    }
    return plan;
}

int knn_predict(const FuzzyDecisionSystem& train, std::span<const std::size_t> subset,
                std::span<const double> query, std::size_t k_neighbors) {
    const std::size_t n = train.num_samples();
    if (n == 0 || k_neighbors == 0) {
        throw Error(ErrorCode::InvalidArgument, "knn needs training samples and k >= 1");
    }
    std::vector<std::pair<double, std::size_t>> by_distance;
    by_distance.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        double sum = 0.0;
        for (std::size_t a : subset) {
            const double diff = train.samples(i, a) - query[a];
            sum += diff * diff;
        }
        by_distance.emplace_back(std::sqrt(sum), i);
    }
    std::sort(by_distance.begin(), by_distance.end());
    const std::size_t take = std::min(k_neighbors, n);
    std::map<int, std::size_t> votes;
    for (std::size_t i = 0; i < take; ++i) {
        ++votes[train.labels[by_distance[i].second]];
    }
    int best_label = votes.begin()->first;
    std::size_t best_count = votes.begin()->second;
    for (const auto& [label, count] : votes) {
        if (count > best_count) {  // map order makes ties keep the smallest id
            best_label = label;
            best_count = count;
        }
    }
    return best_label;
}

Metrics metrics(std::span<const int> predictions, std::span<const int> truths) {
    if (predictions.size() != truths.size() || truths.empty()) {
        throw Error(ErrorCode::InvalidArgument,
                    "predictions and truths must be nonempty and equal-length");
    }
    std::set<int> class_set(truths.begin(), truths.end());
    class_set.insert(predictions.begin(), predictions.end());

    Metrics out;
    const std::size_t n = truths.size();
    std::size_t correct = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (predictions[i] == truths[i]) {
            ++correct;
        }
    }
    out.accuracy = static_cast<double>(correct) / static_cast<double>(n);

    double precision_total = 0.0;
    double f1_total = 0.0;
    for (int cls : class_set) {
        std::size_t tp = 0;
        std::size_t predicted = 0;
        std::size_t actual = 0;
        for (std::size_t i = 0; i < n; ++i) {
            const bool was = truths[i] == cls;
            const bool said = predictions[i] == cls;
            tp += static_cast<std::size_t>(was && said);
            predicted += static_cast<std::size_t>(said);
            actual += static_cast<std::size_t>(was);
        }
        const double precision =
            predicted == 0 ? 0.0 : static_cast<double>(tp) / static_cast<double>(predicted);
        const double recall =
            actual == 0 ? 0.0 : static_cast<double>(tp) / static_cast<double>(actual);
        const double f1 = (precision + recall) > 0.0
                              ? 2.0 * precision * recall / (precision + recall)
                              : 0.0;
        precision_total += precision;
        f1_total += f1;
    }
    const double num_classes = static_cast<double>(class_set.size());
    out.macro_precision = precision_total / num_classes;
    out.macro_f1 = f1_total / num_classes;
    return out;
}

namespace {

struct MeanStd {
    double mean = 0.0;
    double std_dev = 0.0;
};

MeanStd mean_std(const std::vector<double>& values) {
    MeanStd out;
    if (values.empty()) {
        return out;
    }
    for (double v : values) {
        out.mean += v;
    }
    out.mean /= static_cast<double>(values.size());
    double variance = 0.0;
    for (double v : values) {
        const double diff = v - out.mean;
        variance += diff * diff;
    }
    out.std_dev = std::sqrt(variance / static_cast<double>(values.size()));
    return out;
}

std::vector<std::vector<std::size_t>> fold_rows(const FoldPlan& plan) {
    std::vector<std::vector<std::size_t>> rows(plan.k);
    for (std::size_t i = 0; i < plan.assignments.size(); ++i) {
        rows[plan.assignments[i]].push_back(i);
    }
    return rows;
}

// Indices of classes absent from some fold's training portion, if any.
bool every_class_trainable(const FuzzyDecisionSystem& fds, const FoldPlan& plan) {
    for (std::size_t f = 0; f < plan.k; ++f) {
        for (const auto& members : fds.classes) {
            bool seen = false;
            for (std::size_t idx : members) {
                if (plan.assignments[idx] != f) {
                    seen = true;
                    break;
                }
            }
            if (!seen) {
                return false;
            }
        }
    }
    return true;
}

// Shared fold loop: `select` maps a training subsystem to the feature
// subset evaluated on the matching held-out fold.
template <typename SelectFn>
EvalReport run_folds(const FuzzyDecisionSystem& fds, FoldPlan plan, std::size_t knn_k,
                     SelectFn select) {
    const auto start = std::chrono::steady_clock::now();
    EvalReport report;
    if (!every_class_trainable(fds, plan)) {
        if (!plan.stratified) {
            report.warnings.push_back(
                "a class was absent from a training fold; rebuilt the plan stratified");
            plan = make_fold_plan(fds, plan.k, plan.seed, true);
        }
        if (!every_class_trainable(fds, plan)) {
            report.warnings.push_back(
                "a class has fewer samples than folds; some folds cannot train on it");
        }
    }

    const std::vector<std::vector<std::size_t>> test_rows = fold_rows(plan);
    const std::size_t n = fds.num_samples();
    std::vector<double> accuracies;
    std::vector<double> precisions;
    std::vector<double> f1s;
    for (std::size_t f = 0; f < plan.k; ++f) {
        std::vector<std::size_t> train_rows;
        train_rows.reserve(n - test_rows[f].size());
        for (std::size_t i = 0; i < n; ++i) {
            if (plan.assignments[i] != f) {
                train_rows.push_back(i);
            }
        }
        const Subsystem train = subsystem_from_rows(fds, train_rows);
        FoldResult fold;
        fold.selected = select(train.fds);
        std::vector<int> predictions;
        std::vector<int> truths;
        predictions.reserve(test_rows[f].size());
        truths.reserve(test_rows[f].size());
        for (std::size_t idx : test_rows[f]) {
            const int local = knn_predict(train.fds, fold.selected, fds.samples.row(idx),
                                          knn_k);
            predictions.push_back(train.class_ids[static_cast<std::size_t>(local)]);
            truths.push_back(fds.labels[idx]);
        }
        fold.metrics = metrics(predictions, truths);
        accuracies.push_back(fold.metrics.accuracy);
        precisions.push_back(fold.metrics.macro_precision);
        f1s.push_back(fold.metrics.macro_f1);
        report.folds.push_back(std::move(fold));
    }

    const MeanStd acc = mean_std(accuracies);
    const MeanStd prec = mean_std(precisions);
    const MeanStd f1 = mean_std(f1s);
    report.mean_accuracy = acc.mean;
    report.std_accuracy = acc.std_dev;
    report.mean_precision = prec.mean;
    report.std_precision = prec.std_dev;
    report.mean_f1 = f1.mean;
    report.std_f1 = f1.std_dev;
    report.runtime_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

}  // namespace

EvalReport cross_validate(const FuzzyDecisionSystem& fds, std::span<const std::size_t> subset,
                          const FoldPlan& plan, std::size_t knn_k) {
    if (subset.empty()) {
        throw Error(ErrorCode::InvalidArgument, "feature subset must be non-empty");
    }
    std::vector<std::size_t> fixed(subset.begin(), subset.end());
    return run_folds(fds, plan, knn_k,
                     [&fixed](const FuzzyDecisionSystem&) { return fixed; });
}

EvalReport cross_validate(const FuzzyDecisionSystem& fds, const SelectorConfig& selector,
                          const FoldPlan& plan, std::size_t knn_k) {
    return run_folds(fds, plan, knn_k, [&selector](const FuzzyDecisionSystem& train) {
        return fcssc(train, selector).selected;
    });
}

RankTable rank_methods(const Matrix& scores) {
    const std::size_t n = scores.rows();
    const std::size_t m = scores.cols();
    if (n == 0 || m == 0) {
        throw Error(ErrorCode::InvalidArgument, "score table is empty");
    }
    RankTable table{Matrix(n, m)};
    std::vector<std::size_t> order(m);
    for (std::size_t row = 0; row < n; ++row) {
        for (std::size_t j = 0; j < m; ++j) {
            order[j] = j;
        }
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return scores(row, a) > scores(row, b);
        });
        std::size_t pos = 0;
        while (pos < m) {
            std::size_t end = pos;
            while (end + 1 < m && scores(row, order[end + 1]) == scores(row, order[pos])) {
                ++end;
            }
            // 1-based positions pos+1 .. end+1 share the mid rank
            const double rank = static_cast<double>(pos + 1 + end + 1) / 2.0;
            for (std::size_t j = pos; j <= end; ++j) {
                table.ranks(row, order[j]) = rank;
            }
            pos = end + 1;
        }
    }
    return table;
}

std::vector<double> average_ranks(const RankTable& table) {
    const std::size_t n = table.ranks.rows();
    const std::size_t m = table.ranks.cols();
    std::vector<double> means(m, 0.0);
    for (std::size_t j = 0; j < m; ++j) {
        for (std::size_t i = 0; i < n; ++i) {
            means[j] += table.ranks(i, j);
        }
        means[j] /= static_cast<double>(n);
    }
    return means;
}

FriedmanResult friedman(const RankTable& table) {
    const std::size_t n = table.ranks.rows();
    const std::size_t m = table.ranks.cols();
    if (n < 2 || m < 2) {
        throw Error(ErrorCode::InvalidArgument,
                    "friedman needs at least 2 datasets and 2 methods");
    }
    const std::vector<double> r = average_ranks(table);
    double sum_sq = 0.0;
    for (double ri : r) {
        sum_sq += ri * ri;
    }
    const double nd = static_cast<double>(n);
    const double md = static_cast<double>(m);
    FriedmanResult result;
    result.tau_chi2 =
        (12.0 * nd / (md * (md + 1.0))) * (sum_sq - md * (md + 1.0) * (md + 1.0) / 4.0);
    const double denominator = nd * (md - 1.0) - result.tau_chi2;
    if (std::abs(denominator) < 1e-12) {
        throw Error(ErrorCode::DegenerateStatistic,
                    "Friedman refinement undefined: chi-square statistic equals n(m-1)");
    }
    result.tau_f = (nd - 1.0) * result.tau_chi2 / denominator;
    return result;
}

double critical_difference(double q_alpha, std::size_t m, std::size_t n) {
    if (!(q_alpha > 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "q_alpha must be positive");
    }
    if (m < 2 || n < 1) {
        throw Error(ErrorCode::InvalidArgument,
                    "critical difference needs m >= 2 methods and n >= 1 datasets");
    }
    const double md = static_cast<double>(m);
    const double nd = static_cast<double>(n);
    return q_alpha * std::sqrt(md * (md + 1.0) / (6.0 * nd));
}

}  // namespace fcssc
