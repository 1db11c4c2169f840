#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "fcssc/errors.hpp"
#include "fcssc/rng.hpp"
#include "fcssc/separability.hpp"
#include "support/generators.hpp"

using namespace fcssc;

namespace {

// Two tight classes in opposite corners of the unit square.
FuzzyDecisionSystem corner_classes() {
    FuzzyDecisionSystem fds;
    fds.samples = Matrix(4, 2);
    const double values[4][2] = {{0.0, 0.1}, {0.2, 0.0}, {0.9, 1.0}, {1.0, 0.8}};
    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = 0; j < 2; ++j) {
            fds.samples(i, j) = values[i][j];
        }
    }
    fds.feature_names = {"f0", "f1"};
    fds.labels = {0, 0, 1, 1};
    fds.class_names = {"low", "high"};
    fds.classes = {{0, 1}, {2, 3}};
    return fds;
}

}  // namespace

TEST_CASE("class_centroids averages members per class over the subset") {
    const FuzzyDecisionSystem fds = corner_classes();
    const std::vector<std::size_t> subset{0, 1};
    const ClassCentroids centroids = class_centroids(fds, subset);
    CHECK(centroids.means(0, 0) == doctest::Approx(0.1));
    CHECK(centroids.means(0, 1) == doctest::Approx(0.05));
    CHECK(centroids.means(1, 0) == doctest::Approx(0.95));
    CHECK(centroids.means(1, 1) == doctest::Approx(0.9));

    CHECK_THROWS_AS(class_centroids(fds, std::vector<std::size_t>{}), Error);
    CHECK_THROWS_AS(class_centroids(fds, std::vector<std::size_t>{5}), Error);
}

TEST_CASE("fuzzy_class_memberships rows sum to 1 and stay in bounds") {
    Rng rng(17);
    const FuzzyDecisionSystem fds = testsupport::random_fds(rng, 20, 5, 3);
    const std::vector<std::size_t> subset{0, 2, 4};
    const ClassMembershipMatrix memberships = fuzzy_class_memberships(fds, subset);
    for (std::size_t k = 0; k < 20; ++k) {
        double sum = 0.0;
        for (std::size_t i = 0; i < 3; ++i) {
            CHECK(memberships.values(k, i) >= 0.0);
            CHECK(memberships.values(k, i) <= 1.0);
            sum += memberships.values(k, i);
        }
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("a sample sitting on a class centroid is assigned crisply") {
    FuzzyDecisionSystem fds;
    fds.samples = Matrix(3, 1);
    fds.samples(0, 0) = 0.5;  // equals its own class mean (singleton class)
    fds.samples(1, 0) = 0.2;
    fds.samples(2, 0) = 0.8;
    fds.labels = {0, 1, 1};
    fds.feature_names = {"f0"};
    fds.class_names = {"a", "b"};
    fds.classes = {{0}, {1, 2}};
    const std::vector<std::size_t> subset{0};
    const ClassMembershipMatrix memberships = fuzzy_class_memberships(fds, subset);
    // sample 0 coincides with centroid of class 0 and also with the mean of
    // class 1 ((0.2 + 0.8) / 2 = 0.5): the nearest rule keeps the lowest index
    CHECK(memberships.values(0, 0) == 1.0);
    CHECK(memberships.values(0, 1) == 0.0);
}

TEST_CASE("single-class systems give unit memberships and a degenerate dis") {
    FuzzyDecisionSystem fds;
    fds.samples = Matrix(3, 2, 0.25);
    fds.samples(1, 0) = 0.5;
    fds.samples(2, 1) = 0.75;
    fds.labels = {0, 0, 0};
    fds.feature_names = {"f0", "f1"};
    fds.class_names = {"only"};
    fds.classes = {{0, 1, 2}};
    const std::vector<std::size_t> subset{0, 1};
    const ClassMembershipMatrix memberships = fuzzy_class_memberships(fds, subset);
    for (std::size_t k = 0; k < 3; ++k) {
        CHECK(memberships.values(k, 0) == 1.0);
    }
    const DisResult d = dis(memberships);
    CHECK(d.value == 1.0);
    CHECK(d.degenerate_single_class);
    const SeparabilityResult result = global_separability(fds, subset);
    CHECK(result.degenerate_single_class);
    CHECK(result.gs == doctest::Approx(result.dic));
}

TEST_CASE("corner-class dataset matches independently computed values") {
    const FuzzyDecisionSystem fds = corner_classes();
    const std::vector<std::size_t> subset{0, 1};
    const SeparabilityResult result = global_separability(fds, subset);
    CHECK(result.dic == doctest::Approx(0.991468072016437).epsilon(1e-12));
    CHECK(result.dis == doctest::Approx(0.9836689936826258).epsilon(1e-12));
    CHECK(result.gs == doctest::Approx(0.9752764006688618).epsilon(1e-12));
    CHECK_FALSE(result.degenerate_single_class);
}

TEST_CASE("entropy_weights normalize by the maximum row entropy") {
    ClassMembershipMatrix memberships;
    memberships.values = Matrix(3, 2);
    memberships.values(0, 0) = 0.5;  // maximal entropy row
    memberships.values(0, 1) = 0.5;
    memberships.values(1, 0) = 1.0;  // crisp row
    memberships.values(1, 1) = 0.0;
    memberships.values(2, 0) = 0.9;
    memberships.values(2, 1) = 0.1;
    const std::vector<double> weights = entropy_weights(memberships);
    CHECK(weights[0] == doctest::Approx(1.0));
    CHECK(weights[1] == doctest::Approx(0.0));
    CHECK(weights[2] > 0.0);
    CHECK(weights[2] < 1.0);
}

TEST_CASE("all-crisp memberships zero every weight and maximize dis") {
    ClassMembershipMatrix memberships;
    memberships.values = Matrix(4, 2);
    memberships.values(0, 0) = 1.0;
    memberships.values(1, 0) = 1.0;
    memberships.values(2, 1) = 1.0;
    memberships.values(3, 1) = 1.0;
    const std::vector<double> weights = entropy_weights(memberships);
    for (double w : weights) {
        CHECK(w == 0.0);
    }
    const DisResult d = dis(memberships);
    CHECK(d.value == 1.0);
    CHECK_FALSE(d.degenerate_single_class);
}

TEST_CASE("dic and dis stay in [0,1] on random systems") {
    Rng rng(29);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t c = 2 + uniform_below(rng, 3);
        const std::size_t n = c + uniform_below(rng, 20);
        const std::size_t m = 1 + uniform_below(rng, 6);
        const FuzzyDecisionSystem fds = testsupport::random_fds(rng, n, m, c);
        std::vector<std::size_t> subset;
        for (std::size_t a = 0; a < m; ++a) {
            if (subset.empty() || uniform_unit(rng) < 0.5) {
                subset.push_back(a);
            }
        }
        const SeparabilityResult result = global_separability(fds, subset);
        CHECK(result.dic >= 0.0);
        CHECK(result.dic <= 1.0);
        CHECK(result.dis >= 0.0);
        CHECK(result.dis <= 1.0);
        CHECK(result.gs >= 0.0);
        CHECK(result.gs <= 1.0);
    }
}

TEST_CASE("global_separability is insensitive to subset order") {
    Rng rng(31);
    const FuzzyDecisionSystem fds = testsupport::random_fds(rng, 15, 6, 3);
    const std::vector<std::size_t> ordered{1, 3, 5};
    const std::vector<std::size_t> permuted{5, 1, 3};
    const SeparabilityResult a = global_separability(fds, ordered);
    const SeparabilityResult b = global_separability(fds, permuted);
    CHECK(a.gs == doctest::Approx(b.gs).epsilon(1e-12));
}

namespace {

// One-feature system: class 0 = {0.0, 2.0} (centroid 1), class 1 = {3.0}.
FuzzyDecisionSystem line_classes() {
    FuzzyDecisionSystem fds;
    fds.samples = Matrix(3, 1);
    fds.samples(0, 0) = 0.0;
    fds.samples(1, 0) = 2.0;
    fds.samples(2, 0) = 3.0;
    fds.feature_names = {"f0"};
    fds.labels = {0, 0, 1};
    fds.class_names = {"near", "far"};
    fds.classes = {{0, 1}, {2}};
    return fds;
}

ClassMembershipMatrix direct_memberships(std::vector<std::vector<double>> rows) {
    ClassMembershipMatrix m;
    m.values = Matrix(rows.size(), rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t j = 0; j < rows[i].size(); ++j) {
            m.values(i, j) = rows[i][j];
        }
    }
    return m;
}

}  // namespace

TEST_CASE("class_distance matches hand-computed values") {
    const FuzzyDecisionSystem fds = line_classes();
    const std::vector<std::size_t> subset{0};
    const ClassCentroids centroids = class_centroids(fds, subset);
    CHECK(class_distance(fds, subset, 2, 1, centroids) == 0.0);  // on its centroid
    CHECK(class_distance(fds, subset, 1, 0, centroids) == doctest::Approx(1.0).epsilon(1e-12));

    // 3-4-5 triangle over two features
    FuzzyDecisionSystem plane;
    plane.samples = Matrix(2, 2);
    plane.samples(0, 0) = 0.0;
    plane.samples(0, 1) = 0.0;
    plane.samples(1, 0) = 0.3;
    plane.samples(1, 1) = 0.4;
    plane.feature_names = {"f0", "f1"};
    plane.labels = {0, 1};
    plane.class_names = {"a", "b"};
    plane.classes = {{0}, {1}};
    const std::vector<std::size_t> both{0, 1};
    const ClassCentroids plane_centroids = class_centroids(plane, both);
    CHECK(class_distance(plane, both, 0, 1, plane_centroids) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("fuzzy_class_memberships at distances (1, 3) give (0.9, 0.1)") {
    const FuzzyDecisionSystem fds = line_classes();
    const std::vector<std::size_t> subset{0};
    const ClassMembershipMatrix m = fuzzy_class_memberships(fds, subset);
    CHECK(m.values(0, 0) == doctest::Approx(0.9).epsilon(1e-12));
    CHECK(m.values(0, 1) == doctest::Approx(0.1).epsilon(1e-12));
}

TEST_CASE("dic_class and dic match hand-computed values") {
    const auto m = direct_memberships({{0.5, 0.5}, {0.7, 0.3}, {0.7, 0.3}});
    const std::vector<std::vector<std::size_t>> classes{{0, 1}, {2}};
    CHECK(dic_class(m, classes, 0) == doctest::Approx(0.6).epsilon(1e-12));
    CHECK(dic_class(m, classes, 1) == doctest::Approx(0.3).epsilon(1e-12));  // singleton

    const auto pair = direct_memberships({{0.4, 0.6}, {0.2, 0.8}});
    const std::vector<std::vector<std::size_t>> singles{{0}, {1}};
    CHECK(dic_class(pair, singles, 0) == doctest::Approx(0.4).epsilon(1e-12));
    CHECK(dic_class(pair, singles, 1) == doctest::Approx(0.8).epsilon(1e-12));
    CHECK(dic(pair, singles) == doctest::Approx(0.6).epsilon(1e-12));
}

TEST_CASE("pointwise_similarity is the min of the two class memberships") {
    const auto m = direct_memberships({{1.0, 0.0, 0.0}, {0.5, 0.5, 0.0}, {0.6, 0.3, 0.1}});
    CHECK(pointwise_similarity(m, 0, 1, 0) == 0.0);
    CHECK(pointwise_similarity(m, 0, 1, 1) == 0.5);
    CHECK(pointwise_similarity(m, 0, 1, 2) == doctest::Approx(0.3));
}

TEST_CASE("entropy_weights scale rows by their entropy ratio") {
    const auto m = direct_memberships({{0.5, 0.5}, {0.9, 0.1}});
    const std::vector<double> weights = entropy_weights(m);
    const double low = -(0.9 * std::log(0.9) + 0.1 * std::log(0.1));
    REQUIRE(weights.size() == 2);
    CHECK(weights[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(weights[1] == doctest::Approx(low / std::log(2.0)).epsilon(1e-12));

    const auto single = direct_memberships({{0.5, 0.5}});
    CHECK(entropy_weights(single) == std::vector<double>{1.0});
}

TEST_CASE("class_similarity matches hand-computed values") {
    SUBCASE("full overlap with unit weights scores 1") {
        const auto m = direct_memberships({{0.5, 0.5}, {0.5, 0.5}, {0.5, 0.5}});
        const std::vector<double> ones(3, 1.0);
        CHECK(class_similarity(m, ones, 0, 1) == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("one weighted overlapping sample among four scores 0.25") {
        const auto m = direct_memberships({{0.5, 0.5}, {1.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}});
        const std::vector<double> weights{1.0, 0.0, 0.0, 0.0};
        CHECK(class_similarity(m, weights, 0, 1) == doctest::Approx(0.25).epsilon(1e-12));
    }
    SUBCASE("all-zero weights score 0") {
        const auto m = direct_memberships({{0.5, 0.5}, {0.4, 0.6}});
        const std::vector<double> zeros(2, 0.0);
        CHECK(class_similarity(m, zeros, 0, 1) == 0.0);
    }
}

TEST_CASE("dis matches the mean pairwise class similarity") {
    SUBCASE("two indistinguishable classes separate not at all") {
        const auto m = direct_memberships({{0.5, 0.5}, {0.5, 0.5}, {0.5, 0.5}, {0.5, 0.5}});
        const DisResult result = dis(m);
        CHECK(result.value == doctest::Approx(0.0).epsilon(1e-12));
        CHECK_FALSE(result.degenerate_single_class);
    }
    SUBCASE("three classes agree with the public pairwise ops") {
        Rng rng(271);
        const std::size_t n = 12;
        ClassMembershipMatrix m;
        m.values = Matrix(n, 3);
        for (std::size_t i = 0; i < n; ++i) {
            double sum = 0.0;
            for (std::size_t j = 0; j < 3; ++j) {
                m.values(i, j) = 0.05 + uniform_unit(rng);
                sum += m.values(i, j);
            }
            for (std::size_t j = 0; j < 3; ++j) m.values(i, j) /= sum;
        }
        const std::vector<double> weights = entropy_weights(m);
        const double mean_similarity = (class_similarity(m, weights, 0, 1) +
                                        class_similarity(m, weights, 0, 2) +
                                        class_similarity(m, weights, 1, 2)) /
                                       3.0;
        const double expected = std::clamp(1.0 - mean_similarity, 0.0, 1.0);
        CHECK(dis(m).value == doctest::Approx(expected).epsilon(1e-12));
    }
}
