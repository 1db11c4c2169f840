#include "fcssc/fcm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fcssc/errors.hpp"
#include "fcssc/rng.hpp"

namespace fcssc {
namespace {

constexpr double kZeroDistance = 1e-12;
constexpr double kZeroMass = 1e-12;

double squared_distance(std::span<const double> a, std::span<const double> b) {
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        sum += d * d;
    }
    return sum;
}

}  // namespace

void FcmConfig::validate(std::size_t num_objects) const {
    if (fuzzifier <= 1.0) {
        throw Error(ErrorCode::InvalidArgument, "fcm fuzzifier must be > 1");
    }
    if (epsilon <= 0.0) {
        throw Error(ErrorCode::InvalidArgument, "fcm epsilon must be > 0");
    }
    if (k < 1 || k > num_objects) {
        throw Error(ErrorCode::InvalidArgument,
                    "fcm cluster count must be in [1, " + std::to_string(num_objects) + "]");
    }
    if (max_iters < 1) {
        throw Error(ErrorCode::InvalidArgument, "fcm max_iters must be >= 1");
    }
}

std::size_t cluster_count(std::size_t m_features) {
    if (m_features <= 1) return 1;
    const double m = static_cast<double>(m_features);
    const double k = std::ceil(std::sqrt(m) * std::log(m));
    const auto count = static_cast<std::size_t>(std::max(1.0, k));
    return std::min(count, m_features);
}

Matrix feature_objects(const FuzzyDecisionSystem& fds) {
    Matrix objects(fds.num_features(), fds.num_samples());
    for (std::size_t j = 0; j < fds.num_features(); ++j) {
        for (std::size_t i = 0; i < fds.num_samples(); ++i) {
            objects(j, i) = fds.samples(i, j);
        }
    }
    return objects;
}

Matrix kmeanspp_init(const Matrix& objects, std::size_t k, std::uint64_t seed) {
    const std::size_t m = objects.rows();
    if (k < 1 || k > m) {
        throw Error(ErrorCode::InvalidArgument,
                    "kmeans++ needs 1 <= k <= number of objects (k=" + std::to_string(k) +
                        ", objects=" + std::to_string(m) + ")");
    }

    Rng rng(seed);
    Matrix centroids(k, objects.cols());
    std::vector<bool> chosen(m, false);
    std::vector<double> nearest(m, std::numeric_limits<double>::infinity());

    std::size_t pick = static_cast<std::size_t>(uniform_below(rng, m));
    for (std::size_t c = 0; c < k; ++c) {
        if (c > 0) {
            double total = 0.0;
            for (std::size_t i = 0; i < m; ++i) total += chosen[i] ? 0.0 : nearest[i];
            if (total > 0.0) {
                const double target = uniform_unit(rng) * total;
                double cumulative = 0.0;
                pick = m;  // sentinel
                for (std::size_t i = 0; i < m; ++i) {
                    if (chosen[i]) continue;
                    cumulative += nearest[i];
                    if (cumulative > target) {
                        pick = i;
                        break;
                    }
                }
                if (pick == m) {
                    // Rounding pushed the target past the last mass.
                    for (std::size_t i = m; i-- > 0;) {
                        if (!chosen[i] && nearest[i] > 0.0) {
                            pick = i;
                            break;
                        }
                    }
                }
            } else {
                // All remaining objects coincide with a centroid.
                pick = 0;
                while (chosen[pick]) ++pick;
            }
        }
        chosen[pick] = true;
        for (std::size_t j = 0; j < objects.cols(); ++j) centroids(c, j) = objects(pick, j);
        for (std::size_t i = 0; i < m; ++i) {
            nearest[i] = std::min(nearest[i], squared_distance(objects.row(i), centroids.row(c)));
        }
    }
    return centroids;
}

Matrix update_memberships(const Matrix& objects, const Matrix& centroids, double fuzzifier) {
    const std::size_t k = centroids.rows();
    const std::size_t m = objects.rows();
    if (k == 0) throw Error(ErrorCode::InvalidArgument, "membership update needs centroids");

    const double exponent = 2.0 / (fuzzifier - 1.0);
    Matrix memberships(k, m);
    std::vector<double> dist(k);
    for (std::size_t obj = 0; obj < m; ++obj) {
        std::size_t coincident = k;
        for (std::size_t c = 0; c < k; ++c) {
            dist[c] = std::sqrt(squared_distance(objects.row(obj), centroids.row(c)));
            if (dist[c] < kZeroDistance && (coincident == k || dist[c] < dist[coincident])) {
                coincident = c;
            }
        }
        if (coincident < k) {
            memberships(coincident, obj) = 1.0;
            continue;
        }
        double denom = 0.0;
        for (std::size_t c = 0; c < k; ++c) denom += std::pow(1.0 / dist[c], exponent);
        for (std::size_t c = 0; c < k; ++c) {
            memberships(c, obj) = std::pow(1.0 / dist[c], exponent) / denom;
        }
    }
    return memberships;
}

Matrix update_centroids(const Matrix& objects, const Matrix& memberships, double fuzzifier) {
    const std::size_t k = memberships.rows();
    const std::size_t m = objects.rows();
    const std::size_t dims = objects.cols();

    Matrix centroids(k, dims);
    std::vector<bool> degenerate(k, false);
    for (std::size_t c = 0; c < k; ++c) {
        double mass = 0.0;
        std::vector<double> sum(dims, 0.0);
        for (std::size_t obj = 0; obj < m; ++obj) {
            const double w = std::pow(memberships(c, obj), fuzzifier);
            mass += w;
            for (std::size_t j = 0; j < dims; ++j) sum[j] += w * objects(obj, j);
        }
        if (mass < kZeroMass) {
            degenerate[c] = true;
            continue;
        }
        for (std::size_t j = 0; j < dims; ++j) centroids(c, j) = sum[j] / mass;
    }

    // Empty-cluster rescue: reseed with the object farthest from its nearest
    // surviving centroid.
    for (std::size_t c = 0; c < k; ++c) {
        if (!degenerate[c]) continue;
        std::size_t farthest = 0;
        double best = -1.0;
        for (std::size_t obj = 0; obj < m; ++obj) {
            double nearest = std::numeric_limits<double>::infinity();
            for (std::size_t other = 0; other < k; ++other) {
                if (degenerate[other]) continue;
                nearest = std::min(nearest,
                                   squared_distance(objects.row(obj), centroids.row(other)));
            }
            if (std::isinf(nearest)) nearest = 0.0;
            if (nearest > best) {
                best = nearest;
                farthest = obj;
            }
        }
        for (std::size_t j = 0; j < dims; ++j) centroids(c, j) = objects(farthest, j);
        degenerate[c] = false;
    }
    return centroids;
}

double fcm_objective(const Matrix& objects, const Matrix& centroids,
                     const Matrix& memberships, double fuzzifier) {
    double total = 0.0;
    for (std::size_t c = 0; c < centroids.rows(); ++c) {
        for (std::size_t obj = 0; obj < objects.rows(); ++obj) {
            total += std::pow(memberships(c, obj), fuzzifier) *
                     squared_distance(objects.row(obj), centroids.row(c));
        }
    }
    return total;
}

FcmState run_fcm(const Matrix& objects, const FcmConfig& config) {
    config.validate(objects.rows());

    FcmState state;
    state.centroids = kmeanspp_init(objects, config.k, config.seed);
    double previous = std::numeric_limits<double>::infinity();
    for (std::size_t iter = 1; iter <= config.max_iters; ++iter) {
        state.memberships = update_memberships(objects, state.centroids, config.fuzzifier);
        state.centroids = update_centroids(objects, state.memberships, config.fuzzifier);
        state.objective = fcm_objective(objects, state.centroids, state.memberships,
                                        config.fuzzifier);
        state.objective_history.push_back(state.objective);
        state.iterations = iter;
        if (iter > 1 && std::abs(previous - state.objective) < config.epsilon) break;
        previous = state.objective;
    }
    return state;
}

FeatureGroups harden_groups(const FcmState& state) {
    const std::size_t k = state.memberships.rows();
    const std::size_t m = state.memberships.cols();
    std::vector<std::vector<std::size_t>> buckets(k);
    for (std::size_t obj = 0; obj < m; ++obj) {
        std::size_t best = 0;
        for (std::size_t c = 1; c < k; ++c) {
            if (state.memberships(c, obj) > state.memberships(best, obj)) best = c;
        }
        buckets[best].push_back(obj);
    }
    FeatureGroups groups;
    for (auto& bucket : buckets) {
        if (!bucket.empty()) groups.groups.push_back(std::move(bucket));
    }
    return groups;
}

}  // namespace fcssc
