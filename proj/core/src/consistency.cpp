#include "fcssc/consistency.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fcssc/errors.hpp"

namespace fcssc {

namespace {

void check_feature(const FuzzyDecisionSystem& fds, std::size_t feature) {
    if (feature >= fds.num_features()) {
        throw Error(ErrorCode::InvalidArgument,
                    "feature index " + std::to_string(feature) + " out of range");
    }
}

}  // namespace

void ConsistencyConfig::validate() const {
    if (!(pi > 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "pi must be positive");
    }
    if (!(lambda >= 0.0 && lambda <= 1.0)) {
        throw Error(ErrorCode::InvalidArgument, "lambda must lie in [0,1]");
    }
}

double adaptive_radius(const FuzzyDecisionSystem& fds, std::size_t feature, double pi) {
    check_feature(fds, feature);
    if (!(pi > 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "pi must be positive");
    }
    const std::size_t n = fds.num_samples();
    double mean = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        mean += fds.samples(k, feature);
    }
    mean /= static_cast<double>(n);
    double variance = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const double diff = fds.samples(k, feature) - mean;
        variance += diff * diff;
    }
    variance /= static_cast<double>(n);
    return std::sqrt(variance) / pi;
}

Matrix fuzzy_similarity(const FuzzyDecisionSystem& fds, std::size_t feature, double pi) {
    const double delta = adaptive_radius(fds, feature, pi);
    const std::size_t n = fds.num_samples();
    Matrix relation(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        relation(i, i) = 1.0;
        for (std::size_t j = i + 1; j < n; ++j) {
            const double diff = std::abs(fds.samples(i, feature) - fds.samples(j, feature));
            const double value = diff <= delta ? 1.0 - diff : 0.0;
            relation(i, j) = value;
            relation(j, i) = value;
        }
    }
    return relation;
}

SimilarityCache::SimilarityCache(const FuzzyDecisionSystem& fds, double pi,
                                 std::size_t capacity_bytes)
    : fds_(fds), pi_(pi) {
    if (!(pi > 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "pi must be positive");
    }
    const std::size_t n = fds.num_samples();
    const std::size_t bytes_each = std::max<std::size_t>(n * n * sizeof(double), 1);
    max_entries_ = std::max<std::size_t>(capacity_bytes / bytes_each, 1);
    radii_.reserve(fds.num_features());
    for (std::size_t a = 0; a < fds.num_features(); ++a) {
        radii_.push_back(adaptive_radius(fds, a, pi));
    }
}

std::shared_ptr<const Matrix> SimilarityCache::relation(std::size_t feature) {
    check_feature(fds_, feature);
    {
        std::lock_guard<std::mutex> lock(mutex_);
        auto it = entries_.find(feature);
        if (it != entries_.end()) {
            return it->second;
        }
    }
    auto built = std::make_shared<const Matrix>(fuzzy_similarity(fds_, feature, pi_));
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = entries_.find(feature);
    if (it != entries_.end()) {
        return it->second;  // lost a race; keep the published copy
    }
    if (entries_.size() < max_entries_) {
        entries_.emplace(feature, built);
    }
    return built;
}

std::size_t SimilarityCache::cached_count() const {
    std::lock_guard<std::mutex> lock(mutex_);
    return entries_.size();
}

void min_in_place(Matrix& acc, const Matrix& relation) {
    if (acc.rows() != relation.rows() || acc.cols() != relation.cols()) {
        throw Error(ErrorCode::InvalidArgument, "relation shape mismatch");
    }
    double* a = acc.data();
    const double* r = relation.data();
    const std::size_t total = acc.rows() * acc.cols();
    for (std::size_t i = 0; i < total; ++i) {
        a[i] = std::min(a[i], r[i]);
    }
}

Matrix subset_relation(SimilarityCache& cache, std::span<const std::size_t> subset) {
    if (subset.empty()) {
        throw Error(ErrorCode::InvalidArgument, "feature subset must be non-empty");
    }
    Matrix acc = *cache.relation(subset[0]);
    for (std::size_t i = 1; i < subset.size(); ++i) {
        min_in_place(acc, *cache.relation(subset[i]));
    }
    return acc;
}

double local_consistency(const Matrix& relation,
                         const std::vector<std::vector<std::size_t>>& classes) {
    const std::size_t n = relation.rows();
    if (n == 0) {
        throw Error(ErrorCode::InvalidArgument, "relation is empty");
    }
    std::vector<std::size_t> label_of(n, 0);
    for (std::size_t c = 0; c < classes.size(); ++c) {
        for (std::size_t k : classes[c]) {
            label_of[k] = c;
        }
    }
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double own = 0.0;
        double all = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            const double r = relation(i, j);
            all += r;
            if (label_of[j] == label_of[i]) {
                own += r;
            }
        }
        total += own / all;  // all >= 1 by reflexivity
    }
    return total / static_cast<double>(n);
}

std::vector<double> lambda_granule(const Matrix& relation, double lambda, std::size_t sample) {
    if (!(lambda >= 0.0 && lambda <= 1.0)) {
        throw Error(ErrorCode::InvalidArgument, "lambda must lie in [0,1]");
    }
    const std::size_t n = relation.cols();
    std::vector<double> granule(n, 0.0);
    const double cut = 1.0 - lambda;
    for (std::size_t j = 0; j < n; ++j) {
        const double r = relation(sample, j);
        granule[j] = r >= cut ? r : 0.0;
    }
    return granule;
}

double fuzzy_decision(std::span<const double> granule,
                      std::span<const std::size_t> class_members) {
    double cardinality = 0.0;
    for (double g : granule) {
        cardinality += g;
    }
    if (cardinality <= 0.0) {
        throw Error(ErrorCode::DegenerateStatistic, "granule has zero cardinality");
    }
    double inside = 0.0;
    for (std::size_t k : class_members) {
        inside += granule[k];
    }
    return inside / cardinality;
}

std::vector<std::size_t> lower_approximation(const Matrix& relation, double lambda,
                                             std::span<const std::size_t> class_members) {
    const std::size_t n = relation.rows();
    std::vector<char> in_class(n, 0);
    for (std::size_t k : class_members) {
        in_class[k] = 1;
    }
    std::vector<std::size_t> lower;
    for (std::size_t x : class_members) {
        const std::vector<double> granule = lambda_granule(relation, lambda, x);
        bool contained = true;
        for (std::size_t y = 0; y < n; ++y) {
            if (!in_class[y] && granule[y] > 0.0) {
                contained = false;
                break;
            }
        }
        if (contained) {
            lower.push_back(x);
        }
    }
    return lower;
}

std::vector<std::size_t> upper_approximation(const Matrix& relation, double lambda,
                                             std::span<const std::size_t> class_members) {
    std::vector<std::size_t> upper;
    for (std::size_t x : class_members) {
        const std::vector<double> granule = lambda_granule(relation, lambda, x);
        for (std::size_t y : class_members) {
            if (granule[y] > 0.0) {
                upper.push_back(x);
                break;
            }
        }
    }
    return upper;
}

std::vector<std::size_t> positive_region(const Matrix& relation, double lambda,
                                         const std::vector<std::vector<std::size_t>>& classes) {
    std::vector<std::size_t> region;
    for (const auto& members : classes) {
        const std::vector<std::size_t> lower = lower_approximation(relation, lambda, members);
        region.insert(region.end(), lower.begin(), lower.end());
    }
    std::sort(region.begin(), region.end());
    return region;
}

}  // namespace fcssc
