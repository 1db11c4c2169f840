#include "fcssc/selection.hpp"

#include <algorithm>
#include <optional>
#include <string>

#include "fcssc/errors.hpp"
#include "fcssc/separability.hpp"

namespace fcssc {

void SelectorConfig::validate() const {
    if (!(beta >= 0.0 && beta <= 1.0)) {
        throw Error(ErrorCode::InvalidArgument, "beta must lie in [0,1]");
    }
    if (!(pi > 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "pi must be positive");
    }
}

std::size_t SelectorConfig::resolved_delta(std::size_t num_features) const {
    if (delta > 0) {
        return delta;
    }
    return num_features <= 100 ? num_features : 50;
}

bool SelectorConfig::clustering_enabled(std::size_t num_features) const {
    switch (clustering) {
        case ClusteringMode::On:
            return true;
        case ClusteringMode::Off:
            return false;
        case ClusteringMode::Auto:
            return num_features > 100;
    }
    return false;
}

namespace {

// gamma of sorted_subset, reusing a precomputed subset relation. The
// relation must equal the pointwise min over the subset's features; LC and
// GS then match a fresh gamma() call bit for bit.
GammaResult gamma_with_relation(const FuzzyDecisionSystem& fds, const Matrix& relation,
                                std::span<const std::size_t> sorted_subset, double beta) {
    GammaResult result;
    result.lc = local_consistency(relation, fds.classes);
    const SeparabilityResult sep = global_separability(fds, sorted_subset);
    result.gs = sep.gs;
    result.degenerate_single_class = sep.degenerate_single_class;
    result.gamma = beta * result.gs + (1.0 - beta) * result.lc;
    return result;
}

}  // namespace

GammaResult gamma(const FuzzyDecisionSystem& fds, SimilarityCache& cache,
                  std::span<const std::size_t> subset, double beta) {
    if (subset.empty()) {
        return GammaResult{};
    }
    std::vector<std::size_t> sorted(subset.begin(), subset.end());
    std::sort(sorted.begin(), sorted.end());
    const Matrix relation = subset_relation(cache, sorted);
    return gamma_with_relation(fds, relation, sorted, beta);
}

double significance(const FuzzyDecisionSystem& fds, SimilarityCache& cache,
                    std::size_t feature, std::span<const std::size_t> reduct, double beta) {
    if (std::find(reduct.begin(), reduct.end(), feature) != reduct.end()) {
        throw Error(ErrorCode::InvalidArgument,
                    "feature " + std::to_string(feature) + " is already in the reduct");
    }
    std::vector<std::size_t> extended(reduct.begin(), reduct.end());
    extended.push_back(feature);
    return gamma(fds, cache, extended, beta).gamma - gamma(fds, cache, reduct, beta).gamma;
}

SelectionTrace fcssc(const FuzzyDecisionSystem& fds, const SelectorConfig& config) {
    config.validate();
    const std::size_t m = fds.num_features();
    if (m == 0) {
        throw Error(ErrorCode::InvalidArgument, "dataset has no features");
    }

    SelectionTrace trace;
    trace.clustering_used = config.clustering_enabled(m);
    if (trace.clustering_used) {
        FcmConfig fcm = config.fcm;
        fcm.k = config.cluster_override > 0 ? config.cluster_override : cluster_count(m);
        fcm.seed = config.seed;
        const Matrix objects = feature_objects(fds);
        trace.groups = harden_groups(run_fcm(objects, fcm));
    } else {
        trace.groups.groups.reserve(m);
        for (std::size_t a = 0; a < m; ++a) {
            trace.groups.groups.push_back({a});
        }
    }

    SimilarityCache cache(fds, config.pi);
    const std::size_t delta = config.resolved_delta(m);

    // group id for each still-available feature; npos once its group is gone
    constexpr std::size_t kGone = static_cast<std::size_t>(-1);
    std::vector<std::size_t> group_of(m, kGone);
    for (std::size_t g = 0; g < trace.groups.groups.size(); ++g) {
        for (std::size_t a : trace.groups.groups[g]) {
            group_of[a] = g;
        }
    }

    std::vector<std::size_t> reduct_sorted;
    std::optional<Matrix> base_relation;
    double prev_gamma = 0.0;
    std::vector<std::size_t> candidate_subset;

    while (trace.selected.size() < delta) {
        std::size_t best = kGone;
        GammaResult best_result;
        double best_sig = 0.0;
        std::size_t evaluated = 0;

        for (std::size_t a = 0; a < m; ++a) {
            if (group_of[a] == kGone) {
                continue;
            }
            const std::shared_ptr<const Matrix> feature_relation = cache.relation(a);
            Matrix relation = base_relation ? *base_relation : *feature_relation;
            if (base_relation) {
                min_in_place(relation, *feature_relation);
            }
            candidate_subset.assign(reduct_sorted.begin(), reduct_sorted.end());
            candidate_subset.insert(
                std::upper_bound(candidate_subset.begin(), candidate_subset.end(), a), a);
            const GammaResult result =
                gamma_with_relation(fds, relation, candidate_subset, config.beta);
            const double sig = result.gamma - prev_gamma;
            ++evaluated;
            if (best == kGone || sig > best_sig) {
                best = a;
                best_result = result;
                best_sig = sig;
            }
        }
        if (best == kGone) {
            break;  // all groups consumed
        }

        trace.total_evaluations += evaluated;
        trace.selected.push_back(best);
        reduct_sorted.insert(
            std::upper_bound(reduct_sorted.begin(), reduct_sorted.end(), best), best);
        if (base_relation) {
            min_in_place(*base_relation, *cache.relation(best));
        } else {
            base_relation = *cache.relation(best);
        }
        prev_gamma = best_result.gamma;

        const std::size_t consumed = group_of[best];
        trace.groups_consumed.push_back(consumed);
        for (std::size_t a : trace.groups.groups[consumed]) {
            group_of[a] = kGone;
        }

        trace.steps.push_back(SelectionStep{best, consumed, best_result.gs, best_result.lc,
                                            best_result.gamma, best_sig, evaluated});
    }
    return trace;
}

std::size_t evaluation_budget(std::vector<std::size_t> group_sizes, std::size_t delta) {
    std::sort(group_sizes.begin(), group_sizes.end());
    std::size_t remaining = 0;
    for (std::size_t size : group_sizes) {
        remaining += size;
    }
    const std::size_t steps = std::min(group_sizes.size(), delta);
    std::size_t budget = 0;
    for (std::size_t t = 0; t < steps; ++t) {
        budget += remaining;
        remaining -= group_sizes[t];
    }
    return budget;
}

}  // namespace fcssc
