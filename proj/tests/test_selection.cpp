#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "fcssc/errors.hpp"
#include "fcssc/rng.hpp"
#include "fcssc/selection.hpp"
#include "fcssc/separability.hpp"
#include "support/generators.hpp"

using namespace fcssc;

namespace {

// Feature 0 encodes the binary label exactly; the rest is noise.
FuzzyDecisionSystem label_leak(Rng& rng, std::size_t samples, std::size_t features) {
    FuzzyDecisionSystem fds = testsupport::random_fds(rng, samples, features, 2);
    for (std::size_t i = 0; i < samples; ++i) {
        fds.samples(i, 0) = static_cast<double>(fds.labels[i]);
    }
    return fds;
}

}  // namespace

TEST_CASE("selector config defaults and validation") {
    SelectorConfig config;
    CHECK_NOTHROW(config.validate());
    CHECK(config.resolved_delta(13) == 13);
    CHECK(config.resolved_delta(100) == 100);
    CHECK(config.resolved_delta(101) == 50);
    config.delta = 4;
    CHECK(config.resolved_delta(13) == 4);

    CHECK_FALSE(config.clustering_enabled(100));
    CHECK(config.clustering_enabled(101));
    config.clustering = ClusteringMode::On;
    CHECK(config.clustering_enabled(3));
    config.clustering = ClusteringMode::Off;
    CHECK_FALSE(config.clustering_enabled(500));

    config.beta = 1.5;
    CHECK_THROWS_AS(config.validate(), Error);
    config.beta = 0.5;
    config.pi = -1.0;
    CHECK_THROWS_AS(config.validate(), Error);
}

TEST_CASE("gamma blends separability and consistency and is 0 on the empty set") {
    Rng rng(41);
    const FuzzyDecisionSystem fds = testsupport::random_fds(rng, 18, 5, 3);
    SimilarityCache cache(fds, 1.0);
    const std::vector<std::size_t> subset{1, 3};

    const GammaResult balanced = gamma(fds, cache, subset, 0.5);
    CHECK(balanced.gamma == 0.5 * balanced.gs + 0.5 * balanced.lc);
    CHECK(balanced.gamma >= 0.0);
    CHECK(balanced.gamma <= 1.0);

    const GammaResult all_gs = gamma(fds, cache, subset, 1.0);
    CHECK(all_gs.gamma == all_gs.gs);
    const GammaResult all_lc = gamma(fds, cache, subset, 0.0);
    CHECK(all_lc.gamma == all_lc.lc);
    CHECK(all_gs.gs == balanced.gs);
    CHECK(all_lc.lc == balanced.lc);

    CHECK(gamma(fds, cache, std::vector<std::size_t>{}, 0.7).gamma == 0.0);
}

TEST_CASE("gamma ignores subset order") {
    Rng rng(43);
    const FuzzyDecisionSystem fds = testsupport::random_fds(rng, 12, 6, 2);
    SimilarityCache cache(fds, 1.0);
    const GammaResult a = gamma(fds, cache, std::vector<std::size_t>{4, 0, 2}, 0.5);
    const GammaResult b = gamma(fds, cache, std::vector<std::size_t>{0, 2, 4}, 0.5);
    CHECK(a.gamma == b.gamma);
    CHECK(a.gs == b.gs);
    CHECK(a.lc == b.lc);
}

TEST_CASE("significance is the gamma gain of adding one feature") {
    Rng rng(47);
    const FuzzyDecisionSystem fds = testsupport::random_fds(rng, 15, 4, 2);
    SimilarityCache cache(fds, 1.0);
    const std::vector<std::size_t> reduct{1};

    const double sig = significance(fds, cache, 3, reduct, 0.5);
    const double direct = gamma(fds, cache, std::vector<std::size_t>{1, 3}, 0.5).gamma -
                          gamma(fds, cache, reduct, 0.5).gamma;
    CHECK(sig == direct);

    // first step: the base case makes SIG(a) = gamma({a})
    const double first = significance(fds, cache, 2, std::vector<std::size_t>{}, 0.5);
    CHECK(first == gamma(fds, cache, std::vector<std::size_t>{2}, 0.5).gamma);

    CHECK_THROWS_AS(significance(fds, cache, 1, reduct, 0.5), Error);
}

TEST_CASE("a duplicated column leaves the subset relation and LC unchanged") {
    Rng rng(53);
    FuzzyDecisionSystem fds = testsupport::random_fds(rng, 14, 3, 2);
    // append a copy of column 1 as feature 3
    FuzzyDecisionSystem wide = fds;
    wide.samples = Matrix(14, 4);
    for (std::size_t i = 0; i < 14; ++i) {
        for (std::size_t j = 0; j < 3; ++j) {
            wide.samples(i, j) = fds.samples(i, j);
        }
        wide.samples(i, 3) = fds.samples(i, 1);
    }
    wide.feature_names.push_back("f1_copy");

    SimilarityCache cache(wide, 1.0);
    const GammaResult base = gamma(wide, cache, std::vector<std::size_t>{1, 2}, 0.5);
    const GammaResult with_copy =
        gamma(wide, cache, std::vector<std::size_t>{1, 2, 3}, 0.5);
    CHECK(with_copy.lc == base.lc);  // min with an identical relation changes nothing
    const double sig = significance(wide, cache, 3, std::vector<std::size_t>{1, 2}, 0.5);
    CHECK(sig == doctest::Approx(0.5 * (with_copy.gs - base.gs)).epsilon(1e-12));
}

TEST_CASE("fcssc picks the label-encoding feature first") {
    Rng rng(59);
    const FuzzyDecisionSystem fds = label_leak(rng, 24, 5);
    SelectorConfig config;
    config.clustering = ClusteringMode::Off;
    config.delta = 2;
    const SelectionTrace trace = fcssc::fcssc(fds, config);
    REQUIRE(!trace.selected.empty());
    CHECK(trace.selected[0] == 0);

    // brute-force check of the first step
    SimilarityCache cache(fds, 1.0);
    double best = -1.0;
    std::size_t best_feature = 0;
    for (std::size_t a = 0; a < 5; ++a) {
        const double g = gamma(fds, cache, std::vector<std::size_t>{a}, config.beta).gamma;
        if (g > best) {
            best = g;
            best_feature = a;
        }
    }
    CHECK(best_feature == 0);
}

TEST_CASE("delta 1 gives a single-step trace") {
    Rng rng(61);
    const FuzzyDecisionSystem fds = testsupport::random_fds(rng, 16, 6, 2);
    SelectorConfig config;
    config.clustering = ClusteringMode::Off;
    config.delta = 1;
    const SelectionTrace trace = fcssc::fcssc(fds, config);
    CHECK(trace.selected.size() == 1);
    CHECK(trace.steps.size() == 1);
    CHECK(trace.total_evaluations == 6);
    CHECK(trace.steps[0].candidates_evaluated == 6);
}

TEST_CASE("every step is greedily optimal and the trace is consistent") {
    Rng rng(67);
    for (int trial = 0; trial < 5; ++trial) {
        const std::size_t m = 4 + uniform_below(rng, 4);
        const FuzzyDecisionSystem fds =
            testsupport::random_fds(rng, 10 + uniform_below(rng, 15), m, 2);
        SelectorConfig config;
        config.clustering = ClusteringMode::Off;
        config.beta = 0.3;
        const SelectionTrace trace = fcssc::fcssc(fds, config);
        CHECK(trace.selected.size() == m);  // exhausts all singleton groups

        SimilarityCache cache(fds, config.pi);
        std::vector<std::size_t> reduct;
        double prev_gamma = 0.0;
        for (const SelectionStep& step : trace.steps) {
            std::size_t best_feature = m;
            double best_gamma = 0.0;
            for (std::size_t a = 0; a < m; ++a) {
                if (std::find(reduct.begin(), reduct.end(), a) != reduct.end()) {
                    continue;
                }
                std::vector<std::size_t> candidate(reduct);
                candidate.push_back(a);
                const double g = gamma(fds, cache, candidate, config.beta).gamma;
                if (best_feature == m || g > best_gamma) {
                    best_feature = a;
                    best_gamma = g;
                }
            }
            CHECK(step.feature == best_feature);
            CHECK(step.gamma == best_gamma);  // selector matches fresh calls bitwise
            CHECK(step.sig == best_gamma - prev_gamma);
            CHECK(step.gamma == doctest::Approx(config.beta * step.gs +
                                                (1.0 - config.beta) * step.lc)
                                    .epsilon(1e-12));
            prev_gamma = best_gamma;
            reduct.push_back(step.feature);
        }
    }
}

TEST_CASE("clustering with singleton groups matches plain greedy selection") {
    Rng rng(71);
    const FuzzyDecisionSystem fds = testsupport::random_fds(rng, 20, 6, 2);

    SelectorConfig off;
    off.clustering = ClusteringMode::Off;
    const SelectionTrace plain = fcssc::fcssc(fds, off);

    SelectorConfig on;
    on.clustering = ClusteringMode::On;
    on.cluster_override = 6;  // one cluster per feature
    const SelectionTrace clustered = fcssc::fcssc(fds, on);

    REQUIRE(clustered.groups.groups.size() == 6);
    CHECK(clustered.selected == plain.selected);
    CHECK(clustered.total_evaluations == plain.total_evaluations);
}

TEST_CASE("with clustering on, selecting a feature consumes its whole group") {
    Rng rng(73);
    const FuzzyDecisionSystem fds = testsupport::random_fds(rng, 25, 10, 2);
    SelectorConfig config;
    config.clustering = ClusteringMode::On;
    config.cluster_override = 3;
    const SelectionTrace trace = fcssc::fcssc(fds, config);
    CHECK(trace.clustering_used);
    CHECK(trace.selected.size() == trace.groups_consumed.size());
    CHECK(trace.selected.size() <= 3);

    // no two selections share a group
    std::vector<std::size_t> consumed(trace.groups_consumed);
    std::sort(consumed.begin(), consumed.end());
    CHECK(std::adjacent_find(consumed.begin(), consumed.end()) == consumed.end());

    // and the budget bounds the evaluation count
    std::vector<std::size_t> sizes;
    for (const auto& group : trace.groups.groups) {
        sizes.push_back(group.size());
    }
    CHECK(trace.total_evaluations <=
          evaluation_budget(sizes, config.resolved_delta(10)));
}

TEST_CASE("fixed seeds reproduce the trace exactly") {
    Rng rng(79);
    const FuzzyDecisionSystem fds = testsupport::random_fds(rng, 30, 12, 3);
    SelectorConfig config;
    config.clustering = ClusteringMode::On;
    config.seed = 123;
    config.delta = 5;
    const SelectionTrace first = fcssc::fcssc(fds, config);
    const SelectionTrace second = fcssc::fcssc(fds, config);
    CHECK(first.selected == second.selected);
    CHECK(first.groups_consumed == second.groups_consumed);
    CHECK(first.total_evaluations == second.total_evaluations);
    REQUIRE(first.steps.size() == second.steps.size());
    for (std::size_t t = 0; t < first.steps.size(); ++t) {
        CHECK(first.steps[t].gamma == second.steps[t].gamma);
        CHECK(first.steps[t].sig == second.steps[t].sig);
    }
}

TEST_CASE("evaluation_budget worked examples") {
    CHECK(evaluation_budget({2, 2, 2}, 3) == 12);
    CHECK(evaluation_budget({1, 1, 1, 1}, 4) == 10);
    CHECK(evaluation_budget({3, 2, 1}, 1) == 6);  // delta 1 -> all features once
    CHECK(evaluation_budget({2, 5, 3}, 2) == 18); // unsorted input: 10 + 8
    CHECK(evaluation_budget({4}, 9) == 4);        // steps capped by group count
}
