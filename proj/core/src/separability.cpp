#include "fcssc/separability.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>

#include "fcssc/errors.hpp"

namespace fcssc {

namespace {

constexpr double kZeroDistance = 1e-12;
constexpr double kZeroEntropy = 1e-12;

void check_subset(const FuzzyDecisionSystem& fds, std::span<const std::size_t> subset) {
    if (subset.empty()) {
        throw Error(ErrorCode::InvalidArgument, "feature subset must be non-empty");
    }
    for (std::size_t a : subset) {
        if (a >= fds.num_features()) {
            throw Error(ErrorCode::InvalidArgument,
                        "feature index " + std::to_string(a) + " out of range");
        }
    }
}

}  // namespace

ClassCentroids class_centroids(const FuzzyDecisionSystem& fds,
                               std::span<const std::size_t> subset) {
    check_subset(fds, subset);
    const std::size_t c = fds.num_classes();
    Matrix means(c, subset.size());
    for (std::size_t i = 0; i < c; ++i) {
        const auto& members = fds.classes[i];
        for (std::size_t a = 0; a < subset.size(); ++a) {
            double total = 0.0;
            for (std::size_t k : members) {
                total += fds.samples(k, subset[a]);
            }
            means(i, a) = total / static_cast<double>(members.size());
        }
    }
    return ClassCentroids{std::move(means)};
}

double class_distance(const FuzzyDecisionSystem& fds, std::span<const std::size_t> subset,
                      std::size_t sample, std::size_t cls, const ClassCentroids& centroids) {
    double sum = 0.0;
    for (std::size_t a = 0; a < subset.size(); ++a) {
        const double diff = fds.samples(sample, subset[a]) - centroids.means(cls, a);
        sum += diff * diff;
    }
    return std::sqrt(sum);
}

ClassMembershipMatrix fuzzy_class_memberships(const FuzzyDecisionSystem& fds,
                                              std::span<const std::size_t> subset) {
    check_subset(fds, subset);
    const std::size_t n = fds.num_samples();
    const std::size_t c = fds.num_classes();
    Matrix values(n, c);
    if (c == 1) {
        for (std::size_t k = 0; k < n; ++k) {
            values(k, 0) = 1.0;
        }
        return ClassMembershipMatrix{std::move(values)};
    }
    const ClassCentroids centroids = class_centroids(fds, subset);
    std::vector<double> dist(c, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t coincident = c;
        for (std::size_t i = 0; i < c; ++i) {
            dist[i] = class_distance(fds, subset, k, i, centroids);
            if (dist[i] < kZeroDistance && (coincident == c || dist[i] < dist[coincident])) {
                coincident = i;
            }
        }
        if (coincident != c) {
            for (std::size_t i = 0; i < c; ++i) {
                values(k, i) = (i == coincident) ? 1.0 : 0.0;
            }
            continue;
        }
        // Fuzzifier 2 turns the usual exponent 2/(m-1) into inverse-squared
        // distances.
        double denom = 0.0;
        for (std::size_t i = 0; i < c; ++i) {
            denom += 1.0 / (dist[i] * dist[i]);
        }
        for (std::size_t i = 0; i < c; ++i) {
            values(k, i) = (1.0 / (dist[i] * dist[i])) / denom;
        }
    }
    return ClassMembershipMatrix{std::move(values)};
}

double dic_class(const ClassMembershipMatrix& memberships,
                 const std::vector<std::vector<std::size_t>>& classes, std::size_t cls) {
    const auto& members = classes[cls];
    if (members.empty()) {
        throw Error(ErrorCode::InvalidArgument, "decision class has no members");
    }
    double total = 0.0;
    for (std::size_t k : members) {
        total += memberships.values(k, cls);
    }
    return total / static_cast<double>(members.size());
}

double dic(const ClassMembershipMatrix& memberships,
           const std::vector<std::vector<std::size_t>>& classes) {
    double total = 0.0;
    for (std::size_t i = 0; i < classes.size(); ++i) {
        total += dic_class(memberships, classes, i);
    }
    return total / static_cast<double>(classes.size());
}

double pointwise_similarity(const ClassMembershipMatrix& memberships, std::size_t class_i,
                            std::size_t class_j, std::size_t sample) {
    return std::min(memberships.values(sample, class_i), memberships.values(sample, class_j));
}

std::vector<double> entropy_weights(const ClassMembershipMatrix& memberships) {
    const std::size_t n = memberships.values.rows();
    const std::size_t c = memberships.values.cols();
    std::vector<double> entropy(n, 0.0);
    double max_entropy = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        double h = 0.0;
        for (std::size_t i = 0; i < c; ++i) {
            const double u = memberships.values(k, i);
            if (u > 0.0) {
                h -= u * std::log(u);
            }
        }
        entropy[k] = h;
        max_entropy = std::max(max_entropy, h);
    }
    if (max_entropy < kZeroEntropy) {
        std::fill(entropy.begin(), entropy.end(), 0.0);
        return entropy;
    }
    for (double& h : entropy) {
        h /= max_entropy;
    }
    return entropy;
}

double class_similarity(const ClassMembershipMatrix& memberships,
                        std::span<const double> weights, std::size_t class_i,
                        std::size_t class_j) {
    const std::size_t n = memberships.values.rows();
    const std::size_t c = memberships.values.cols();
    double total = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        total += weights[k] * pointwise_similarity(memberships, class_i, class_j, k);
    }
    return total * static_cast<double>(c) / static_cast<double>(n);
}

DisResult dis(const ClassMembershipMatrix& memberships) {
    const std::size_t c = memberships.num_classes();
    if (c < 2) {
        return DisResult{1.0, true};
    }
    const std::vector<double> weights = entropy_weights(memberships);
    double total = 0.0;
    std::size_t pairs = 0;
    for (std::size_t i = 0; i < c; ++i) {
        for (std::size_t j = i + 1; j < c; ++j) {
            total += class_similarity(memberships, weights, i, j);
            ++pairs;
        }
    }
    const double value = 1.0 - total / static_cast<double>(pairs);
    return DisResult{std::clamp(value, 0.0, 1.0), false};
}

SeparabilityResult global_separability(const FuzzyDecisionSystem& fds,
                                       std::span<const std::size_t> subset) {
    const ClassMembershipMatrix memberships = fuzzy_class_memberships(fds, subset);
    SeparabilityResult result;
    result.dic = dic(memberships, fds.classes);
    const DisResult d = dis(memberships);
    result.dis = d.value;
    result.degenerate_single_class = d.degenerate_single_class;
    result.gs = result.dic * result.dis;
    return result;
}

}  // namespace fcssc
