#ifndef FCSSC_SEPARABILITY_HPP
#define FCSSC_SEPARABILITY_HPP

#include <span>
#include <vector>

#include "fcssc/dataset.hpp"
#include "fcssc/matrix.hpp"

namespace fcssc {

/// Per-class feature means over a subset: entry (i, a) is the mean of the
/// a-th subset feature across class i.
struct ClassCentroids {
    Matrix means;  // c x |B|
};

/// Fuzzy membership of each sample to each decision class; rows sum to 1.
struct ClassMembershipMatrix {
    Matrix values;  // N x c
    std::size_t num_classes() const { return values.cols(); }
};

ClassCentroids class_centroids(const FuzzyDecisionSystem& fds,
                               std::span<const std::size_t> subset);

/// Euclidean distance from a sample to a class centroid over the subset.
double class_distance(const FuzzyDecisionSystem& fds, std::span<const std::size_t> subset,
                      std::size_t sample, std::size_t cls, const ClassCentroids& centroids);

/// Membership of each sample to each class centroid (fuzzifier fixed at 2).
/// A sample within 1e-12 of a centroid is assigned crisply to the nearest
/// such class, lowest index on ties; a single-class system is all ones.
ClassMembershipMatrix fuzzy_class_memberships(const FuzzyDecisionSystem& fds,
                                              std::span<const std::size_t> subset);

/// Mean membership of class members to their own class.
double dic_class(const ClassMembershipMatrix& memberships,
                 const std::vector<std::vector<std::size_t>>& classes, std::size_t cls);

/// Intra-class cohesion: per-class dic averaged over classes, in [0,1].
double dic(const ClassMembershipMatrix& memberships,
           const std::vector<std::vector<std::size_t>>& classes);

/// min of the two class memberships at one sample.
double pointwise_similarity(const ClassMembershipMatrix& memberships, std::size_t class_i,
                            std::size_t class_j, std::size_t sample);

/// Entropy of each membership row, normalized by the maximum entropy over
/// all samples; all-crisp systems get all-zero weights.
std::vector<double> entropy_weights(const ClassMembershipMatrix& memberships);

/// Weighted overlap between two classes: (c/N) * sum_k w_k * min(u_i, u_j).
double class_similarity(const ClassMembershipMatrix& memberships,
                        std::span<const double> weights, std::size_t class_i,
                        std::size_t class_j);

struct DisResult {
    double value = 1.0;
    bool degenerate_single_class = false;
};

/// Inter-class separation: one minus the mean pairwise class similarity over
/// unordered pairs, clamped to [0,1]. A single-class system returns 1 with
/// the degenerate flag set.
DisResult dis(const ClassMembershipMatrix& memberships);

struct SeparabilityResult {
    double dic = 0.0;
    double dis = 0.0;
    double gs = 0.0;
    bool degenerate_single_class = false;
};

/// Global separability GS = DIC * DIS with the intermediates.
SeparabilityResult global_separability(const FuzzyDecisionSystem& fds,
                                       std::span<const std::size_t> subset);

}  // namespace fcssc

#endif
