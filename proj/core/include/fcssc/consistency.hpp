#ifndef FCSSC_CONSISTENCY_HPP
#define FCSSC_CONSISTENCY_HPP

#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <vector>

#include "fcssc/dataset.hpp"
#include "fcssc/matrix.hpp"

namespace fcssc {

struct ConsistencyConfig {
    double pi = 1.0;      // neighborhood radius divisor; larger -> tighter granules
    double lambda = 0.2;  // cut level for the rough-set primitives

    void validate() const;
};

/// Radius for one feature: population standard deviation of the column
/// divided by pi. A constant column yields 0.
double adaptive_radius(const FuzzyDecisionSystem& fds, std::size_t feature, double pi);

/// Similarity between samples under one feature: 1 - |difference| when the
/// difference is within the feature's radius, 0 beyond it. Reflexive and
/// symmetric by construction.
Matrix fuzzy_similarity(const FuzzyDecisionSystem& fds, std::size_t feature, double pi);

/// Lazily built per-feature similarity relations. The selector probes many
/// subsets that share features, so each N x N relation is built once and
/// reused. Reads are lock-protected; entries are immutable once published.
/// When the configured byte budget is exhausted, further relations are
/// computed on demand and handed out without being retained.
class SimilarityCache {
public:
    static constexpr std::size_t kDefaultCapacityBytes = std::size_t{256} << 20;

    SimilarityCache(const FuzzyDecisionSystem& fds, double pi,
                    std::size_t capacity_bytes = kDefaultCapacityBytes);

    std::shared_ptr<const Matrix> relation(std::size_t feature);
    double radius(std::size_t feature) const { return radii_.at(feature); }
    std::size_t cached_count() const;

private:
    const FuzzyDecisionSystem& fds_;
    double pi_;
    std::size_t max_entries_;
    std::vector<double> radii_;
    mutable std::mutex mutex_;
    std::map<std::size_t, std::shared_ptr<const Matrix>> entries_;
};

/// Pointwise minimum of the per-feature relations over a non-empty subset.
Matrix subset_relation(SimilarityCache& cache, std::span<const std::size_t> subset);

/// acc = min(acc, relation), entry by entry.
void min_in_place(Matrix& acc, const Matrix& relation);

/// Mean fraction of each sample's fuzzy-neighbor mass that shares its label,
/// with sigma-count cardinalities. In (0,1] for reflexive relations.
double local_consistency(const Matrix& relation,
                         const std::vector<std::vector<std::size_t>>& classes);

/// Row of the relation with entries below 1 - lambda zeroed out.
std::vector<double> lambda_granule(const Matrix& relation, double lambda, std::size_t sample);

/// Share of the granule's sigma-count mass lying inside the class.
double fuzzy_decision(std::span<const double> granule,
                      std::span<const std::size_t> class_members);

/// Members of the class whose granule never touches an out-of-class sample.
std::vector<std::size_t> lower_approximation(const Matrix& relation, double lambda,
                                             std::span<const std::size_t> class_members);

/// Members of the class whose granule meets the class: always the whole
/// class for reflexive relations, kept for symmetry with the lower bound.
std::vector<std::size_t> upper_approximation(const Matrix& relation, double lambda,
                                             std::span<const std::size_t> class_members);

/// Union of the lower approximations of all classes, ascending.
std::vector<std::size_t> positive_region(const Matrix& relation, double lambda,
                                         const std::vector<std::vector<std::size_t>>& classes);

}  // namespace fcssc

#endif
