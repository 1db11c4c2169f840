#include <benchmark/benchmark.h>

#include <cstddef>
#include <numeric>
#include <vector>

#include "fcssc/consistency.hpp"
#include "fcssc/dataset.hpp"
#include "fcssc/evaluation.hpp"
#include "fcssc/fcm.hpp"
#include "fcssc/matrix.hpp"
#include "fcssc/rng.hpp"
#include "fcssc/selection.hpp"
#include "fcssc/separability.hpp"

namespace {

fcssc::FuzzyDecisionSystem synthetic_system(std::size_t samples, std::size_t features,
                                            std::size_t classes) {
    fcssc::Rng rng(1234);
    fcssc::FuzzyDecisionSystem fds;
    fds.samples = fcssc::Matrix(samples, features);
    for (std::size_t i = 0; i < samples; ++i) {
        for (std::size_t j = 0; j < features; ++j) {
            fds.samples(i, j) = fcssc::uniform_unit(rng);
        }
    }
    fds.labels.resize(samples);
    for (std::size_t i = 0; i < samples; ++i) {
        fds.labels[i] = i < classes ? static_cast<int>(i)
                                    : static_cast<int>(fcssc::uniform_below(rng, classes));
    }
    for (std::size_t j = 0; j < features; ++j) {
        fds.feature_names.push_back("f" + std::to_string(j));
    }
    fds.classes = fcssc::class_partition(fds.labels);
    for (std::size_t c = 0; c < fds.classes.size(); ++c) {
        fds.class_names.push_back(std::to_string(c));
    }
    return fds;
}

void bm_subset_relation(benchmark::State& state) {
    const auto samples = static_cast<std::size_t>(state.range(0));
    const auto fds = synthetic_system(samples, 8, 3);
    fcssc::SimilarityCache cache(fds, 1.0);
    std::vector<std::size_t> subset(8);
    std::iota(subset.begin(), subset.end(), std::size_t{0});
    for (auto _ : state) {
        benchmark::DoNotOptimize(fcssc::subset_relation(cache, subset));
    }
}
BENCHMARK(bm_subset_relation)->Arg(64)->Arg(256)->Arg(512);

void bm_local_consistency(benchmark::State& state) {
    const auto samples = static_cast<std::size_t>(state.range(0));
    const auto fds = synthetic_system(samples, 8, 3);
    fcssc::SimilarityCache cache(fds, 1.0);
    std::vector<std::size_t> subset(8);
    std::iota(subset.begin(), subset.end(), std::size_t{0});
    const fcssc::Matrix relation = fcssc::subset_relation(cache, subset);
    for (auto _ : state) {
        benchmark::DoNotOptimize(fcssc::local_consistency(relation, fds.classes));
    }
}
BENCHMARK(bm_local_consistency)->Arg(64)->Arg(256)->Arg(512);

void bm_global_separability(benchmark::State& state) {
    const auto samples = static_cast<std::size_t>(state.range(0));
    const auto fds = synthetic_system(samples, 16, 3);
    std::vector<std::size_t> subset(16);
    std::iota(subset.begin(), subset.end(), std::size_t{0});
    for (auto _ : state) {
        benchmark::DoNotOptimize(fcssc::global_separability(fds, subset));
    }
}
BENCHMARK(bm_global_separability)->Arg(128)->Arg(512);

void bm_run_fcm(benchmark::State& state) {
    const auto features = static_cast<std::size_t>(state.range(0));
    const auto fds = synthetic_system(128, features, 3);
    const fcssc::Matrix objects = fcssc::feature_objects(fds);
    fcssc::FcmConfig config;
    config.k = fcssc::cluster_count(features);
    config.seed = 7;
    for (auto _ : state) {
        benchmark::DoNotOptimize(fcssc::run_fcm(objects, config));
    }
}
BENCHMARK(bm_run_fcm)->Arg(32)->Arg(128);

void bm_fcssc_select(benchmark::State& state) {
    const auto features = static_cast<std::size_t>(state.range(0));
    const auto fds = synthetic_system(96, features, 3);
    fcssc::SelectorConfig config;
    config.delta = 8;
    for (auto _ : state) {
        benchmark::DoNotOptimize(fcssc::fcssc(fds, config));
    }
}
BENCHMARK(bm_fcssc_select)->Arg(16)->Arg(64)->Arg(128);

void bm_knn_fold(benchmark::State& state) {
    const auto samples = static_cast<std::size_t>(state.range(0));
    const auto fds = synthetic_system(samples, 12, 3);
    std::vector<std::size_t> subset(12);
    std::iota(subset.begin(), subset.end(), std::size_t{0});
    const auto plan = fcssc::make_fold_plan(fds, 10, 0, true);
    for (auto _ : state) {
        benchmark::DoNotOptimize(fcssc::cross_validate(fds, subset, plan, 5));
    }
}
BENCHMARK(bm_knn_fold)->Arg(128)->Arg(512);

}  // namespace

BENCHMARK_MAIN();
