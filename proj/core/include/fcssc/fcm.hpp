#ifndef FCSSC_FCM_HPP
#define FCSSC_FCM_HPP

#include <cstdint>
#include <vector>

#include "fcssc/dataset.hpp"
#include "fcssc/matrix.hpp"

namespace fcssc {

struct FcmConfig {
    std::size_t k = 1;
    double fuzzifier = 2.0;  // m > 1
    double epsilon = 1e-6;
    std::size_t max_iters = 300;
    std::uint64_t seed = 0;

    /// Throws InvalidArgument unless m > 1, epsilon > 0 and 1 <= k <= num_objects.
    void validate(std::size_t num_objects) const;
};

struct FcmState {
    Matrix centroids;    // K x N
    Matrix memberships;  // K x M, column per object, columns sum to 1
    double objective = 0.0;
    std::size_t iterations = 0;
    std::vector<double> objective_history;  // one entry per iteration
};

/// Disjoint nonempty groups of feature indices covering 0..M-1.
struct FeatureGroups {
    std::vector<std::vector<std::size_t>> groups;
};

/// K = max(1, ceil(sqrt(M) * ln M)), clamped to at most M.
std::size_t cluster_count(std::size_t m_features);

/// Each feature becomes one clustering object: the M x N transpose of the
/// sample matrix.
Matrix feature_objects(const FuzzyDecisionSystem& fds);

/// KMeans++ seeding over the object rows: first pick uniform, later picks
/// proportional to squared distance to the nearest chosen centroid.
/// Deterministic for a fixed seed.
Matrix kmeanspp_init(const Matrix& objects, std::size_t k, std::uint64_t seed);

/// Membership update. An object within 1e-12 of a centroid is assigned
/// crisply to the lowest-index such centroid.
Matrix update_memberships(const Matrix& objects, const Matrix& centroids, double fuzzifier);

/// Centroid update; a cluster whose membership mass vanishes is reseeded to
/// the object farthest from its nearest surviving centroid.
Matrix update_centroids(const Matrix& objects, const Matrix& memberships, double fuzzifier);

double fcm_objective(const Matrix& objects, const Matrix& centroids,
                     const Matrix& memberships, double fuzzifier);

/// Alternate membership and centroid updates until the objective change
/// drops below epsilon or max_iters is hit.
FcmState run_fcm(const Matrix& objects, const FcmConfig& config);

/// Defuzzify: each object joins the cluster of its largest membership (ties
/// to the lowest cluster index); empty clusters are dropped.
FeatureGroups harden_groups(const FcmState& state);

}  // namespace fcssc

#endif
