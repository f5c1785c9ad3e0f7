#include <benchmark/benchmark.h>

#include <random>

#include "nbhd/decision.hpp"
#include "nbhd/equivalence.hpp"
#include "nbhd/formula.hpp"
#include "nbhd/model.hpp"

using namespace nbhd;

namespace {

Model sized_model(std::mt19937& rng, int n, int atoms) {
    std::vector<std::string> names;
    for (int i = 0; i < n; ++i) names.push_back("s" + std::to_string(i));
    Carrier carrier(names);
    std::bernoulli_distribution keep(0.3);
    std::vector<std::vector<StateSet>> table(n);
    for (int s = 0; s < n; ++s)
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask)
            if (keep(rng)) table[s].push_back(StateSet::from_mask(n, mask));
    std::map<int, StateSet> vals;
    std::bernoulli_distribution in_val(0.5);
    for (int a = 0; a < atoms; ++a) {
        StateSet v(n);
        for (int s = 0; s < n; ++s)
            if (in_val(rng)) v.insert(s);
        vals.emplace(a, v);
    }
    return Model(carrier, std::move(table), std::move(vals));
}

Formula deep_formula(int depth) {
    Formula f = Formula::atom(0);
    for (int i = 0; i < depth; ++i)
        f = Formula::conjunction(Formula::box(f), Formula::negation(Formula::atom(i % 2)));
    return f;
}

void BM_truth_set(benchmark::State& state) {
    std::mt19937 rng(1);
    Model m = sized_model(rng, static_cast<int>(state.range(0)), 2);
    Formula f = deep_formula(8);
    for (auto _ : state) benchmark::DoNotOptimize(m.truth_set(f));
}
BENCHMARK(BM_truth_set)->Arg(4)->Arg(6)->Arg(8);

void BM_largest_precocongruence(benchmark::State& state) {
    std::mt19937 rng(2);
    Model m1 = sized_model(rng, static_cast<int>(state.range(0)), 1);
    Model m2 = sized_model(rng, static_cast<int>(state.range(0)), 1);
    for (auto _ : state) benchmark::DoNotOptimize(largest_precocongruence(m1, m2));
}
BENCHMARK(BM_largest_precocongruence)->Arg(2)->Arg(3)->Arg(4)->Arg(5);

void BM_behavioural_equivalence(benchmark::State& state) {
    std::mt19937 rng(3);
    Model m1 = sized_model(rng, static_cast<int>(state.range(0)), 1);
    Model m2 = sized_model(rng, static_cast<int>(state.range(0)), 1);
    for (auto _ : state) benchmark::DoNotOptimize(behavioural_equivalence(m1, m2));
}
BENCHMARK(BM_behavioural_equivalence)->Arg(2)->Arg(4)->Arg(6);

void BM_satisfiable(benchmark::State& state) {
    Formula goal = parse("[]p0 & [](p0 | p1) & ~[](p0 & p1)");
    for (auto _ : state) benchmark::DoNotOptimize(satisfiable(goal));
}
BENCHMARK(BM_satisfiable);

void BM_valid_non_theorem(benchmark::State& state) {
    Formula goal = parse("[]p0 & []p1 -> [](p0 & p1)");
    for (auto _ : state) benchmark::DoNotOptimize(valid(goal));
}
BENCHMARK(BM_valid_non_theorem);

} // namespace

BENCHMARK_MAIN();
