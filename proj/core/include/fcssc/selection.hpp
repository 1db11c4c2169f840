#ifndef FCSSC_SELECTION_HPP
#define FCSSC_SELECTION_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "fcssc/consistency.hpp"
#include "fcssc/dataset.hpp"
#include "fcssc/fcm.hpp"

namespace fcssc {

enum class ClusteringMode {
    Auto,  // enabled when the dataset has more than 100 features
    On,
    Off,
};

struct SelectorConfig {
    double beta = 0.5;  // weight of separability vs consistency in gamma
    // 0 picks the default: all features when M <= 100, else 50.
    std::size_t delta = 0;
    ClusteringMode clustering = ClusteringMode::Auto;
    // 0 derives the cluster count from the feature count.
    std::size_t cluster_override = 0;
    double pi = 1.0;
    std::uint64_t seed = 0;
    FcmConfig fcm;  // k and seed are filled in by the selector

    void validate() const;
    std::size_t resolved_delta(std::size_t num_features) const;
    bool clustering_enabled(std::size_t num_features) const;
};

struct GammaResult {
    double gs = 0.0;
    double lc = 0.0;
    double gamma = 0.0;
    bool degenerate_single_class = false;
};

/// Discrimination degree of a subset: beta * GS + (1 - beta) * LC.
/// The empty subset scores 0 so first-step significance is well defined.
/// The subset is evaluated in ascending index order, so permutations of the
/// same subset produce bit-identical results.
GammaResult gamma(const FuzzyDecisionSystem& fds, SimilarityCache& cache,
                  std::span<const std::size_t> subset, double beta);

/// Marginal gain of adding a feature to the reduct; may be negative.
double significance(const FuzzyDecisionSystem& fds, SimilarityCache& cache,
                    std::size_t feature, std::span<const std::size_t> reduct, double beta);

struct SelectionStep {
    std::size_t feature = 0;  // chosen feature, original index
    std::size_t group = 0;    // id of the group removed with it
    double gs = 0.0;          // separability of the reduct after this step
    double lc = 0.0;
    double gamma = 0.0;
    double sig = 0.0;
    std::size_t candidates_evaluated = 0;
};

struct SelectionTrace {
    std::vector<std::size_t> selected;  // in selection order
    std::vector<SelectionStep> steps;
    std::vector<std::size_t> groups_consumed;
    std::size_t total_evaluations = 0;
    bool clustering_used = false;
    FeatureGroups groups;  // groups the run started from (singletons when off)
};

/// Two-stage greedy forward selection: optionally cluster the features,
/// then repeatedly add the feature with the highest significance (ties to
/// the lowest index) and drop its whole group, until delta features are
/// chosen or no group remains.
SelectionTrace fcssc(const FuzzyDecisionSystem& fds, const SelectorConfig& config);

/// Upper bound on candidate evaluations for group sizes and a step limit:
/// sum over the first min(K, delta) steps of the features still standing
/// when the smallest groups are removed first.
std::size_t evaluation_budget(std::vector<std::size_t> group_sizes, std::size_t delta);

}  // namespace fcssc

#endif
