#ifndef FCSSC_EVALUATION_HPP
#define FCSSC_EVALUATION_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "fcssc/dataset.hpp"
#include "fcssc/matrix.hpp"
#include "fcssc/selection.hpp"

namespace fcssc {

struct FoldPlan {
    std::size_t k = 10;
    std::vector<std::size_t> assignments;  // per-sample fold id in [0,k)
    std::uint64_t seed = 0;
    bool stratified = true;
};

/// Assign samples to folds. Stratified plans deal each class round-robin
/// with a pointer that rolls across classes, keeping per-fold class counts
/// within one of each other; unstratified plans deal a single shuffled pass.
FoldPlan make_fold_plan(const FuzzyDecisionSystem& fds, std::size_t k, std::uint64_t seed,
                        bool stratified);

/// Majority label among the k nearest training samples by Euclidean
/// distance over the subset features. Distance ties prefer the lower
/// training index; vote ties prefer the smallest class id.
int knn_predict(const FuzzyDecisionSystem& train, std::span<const std::size_t> subset,
                std::span<const double> query, std::size_t k_neighbors);

struct Metrics {
    double accuracy = 0.0;
    double macro_precision = 0.0;
    double macro_f1 = 0.0;
};

/// Accuracy plus macro-averaged precision and F1 over the union of classes
/// seen in either vector; a class nobody predicted contributes precision 0.
Metrics metrics(std::span<const int> predictions, std::span<const int> truths);

struct FoldResult {
    Metrics metrics;
    std::vector<std::size_t> selected;  // features used for this fold
};

struct EvalReport {
    std::vector<FoldResult> folds;
    double mean_accuracy = 0.0;
    double std_accuracy = 0.0;
    double mean_precision = 0.0;
    double std_precision = 0.0;
    double mean_f1 = 0.0;
    double std_f1 = 0.0;
    double runtime_seconds = 0.0;
    std::vector<std::string> warnings;
};

/// Evaluate a fixed feature subset with KNN across the plan's folds.
EvalReport cross_validate(const FuzzyDecisionSystem& fds, std::span<const std::size_t> subset,
                          const FoldPlan& plan, std::size_t knn_k);

/// Run feature selection on each fold's training rows only, then evaluate
/// the per-fold subset on the held-out fold. If a training portion misses a
/// class and the plan was unstratified, a stratified plan with the same
/// seed replaces it (with a warning); a class too small to cover every
/// training portion is warned about and evaluation proceeds.
EvalReport cross_validate(const FuzzyDecisionSystem& fds, const SelectorConfig& selector,
                          const FoldPlan& plan, std::size_t knn_k);

struct RankTable {
    Matrix ranks;  // n datasets x m methods
};

/// Rank methods per dataset: rank 1 for the highest score, ties get the
/// mean of the positions they span.
RankTable rank_methods(const Matrix& scores);

/// Mean rank of each method across datasets.
std::vector<double> average_ranks(const RankTable& table);

struct FriedmanResult {
    double tau_chi2 = 0.0;
    double tau_f = 0.0;
};

/// Friedman statistic and its F-distributed refinement. A rank table whose
/// chi-square statistic reaches n(m-1) leaves the refinement undefined and
/// raises an error.
FriedmanResult friedman(const RankTable& table);

/// Nemenyi critical difference q_alpha * sqrt(m(m+1)/(6n)).
double critical_difference(double q_alpha, std::size_t m, std::size_t n);

}  // namespace fcssc

#endif
