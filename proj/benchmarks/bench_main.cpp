#include <random>
#include <string>

#include <benchmark/benchmark.h>

#include "futs/bisim.hpp"
#include "futs/logic.hpp"
#include "futs/reduce.hpp"

namespace {

using futs::Futs;
using futs::MonoidDesc;
using futs::Weight;
using futs::WeightTerm;

std::string state(std::size_t k) { return "s" + std::to_string(k); }

// A WLTS over nat-plus with `n` states, two labels and a few edges per state,
// built from a small set of behaviours so that refinement has something to merge.
Futs random_wlts(std::size_t n, unsigned seed) {
    std::mt19937_64 rng(seed);
    futs::FutsSignature sig({futs::Component{{"a", "b"}, {MonoidDesc::nat_plus()}}});
    std::vector<std::string> states;
    for (std::size_t k = 0; k < n; ++k) states.push_back(state(k));
    Futs s(sig, states);
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    std::uniform_int_distribution<int> w(1, 3);
    for (std::size_t k = 0; k < n; ++k) {
        for (const char* a : {"a", "b"}) {
            std::vector<WeightTerm::Entry> entries;
            for (int e = 0; e < 2; ++e) {
                entries.emplace_back(WeightTerm::leaf(state(pick(rng) % (n / 4 + 1))), Weight::natural(w(rng)));
            }
            s.set_transition(0, state(k), a, WeightTerm::node(MonoidDesc::nat_plus(), 1, std::move(entries)));
        }
    }
    return s;
}

// A two-layer ULTraS over bool-or and rat-plus.
Futs random_ultras(std::size_t n, unsigned seed) {
    std::mt19937_64 rng(seed);
    const auto outer = MonoidDesc::bool_or();
    const auto inner = MonoidDesc::rat_plus();
    futs::FutsSignature sig({futs::Component{{"a", "b"}, {outer, inner}}});
    std::vector<std::string> states;
    for (std::size_t k = 0; k < n; ++k) states.push_back(state(k));
    Futs s(sig, states);
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    for (std::size_t k = 0; k < n; ++k) {
        std::vector<WeightTerm::Entry> dists;
        for (int d = 0; d < 2; ++d) {
            std::vector<WeightTerm::Entry> mass{
                {WeightTerm::leaf(state(pick(rng))), Weight::rational(mpq_class(1, 2))},
                {WeightTerm::leaf(state(pick(rng))), Weight::rational(mpq_class(1, 2))}};
            dists.emplace_back(WeightTerm::node(inner, 1, std::move(mass)), Weight::boolean(true));
        }
        s.set_transition(0, state(k), k % 2 ? "a" : "b", WeightTerm::node(outer, 2, std::move(dists)));
    }
    return s;
}

void BM_LargestBisimulation(benchmark::State& st) {
    const Futs s = random_wlts(static_cast<std::size_t>(st.range(0)), 7);
    for (auto _ : st) benchmark::DoNotOptimize(futs::largest_bisimulation(s));
    st.SetComplexityN(st.range(0));
}
BENCHMARK(BM_LargestBisimulation)->RangeMultiplier(2)->Range(8, 256)->Complexity();

void BM_ToWts(benchmark::State& st) {
    const Futs s = random_ultras(static_cast<std::size_t>(st.range(0)), 11);
    for (auto _ : st) benchmark::DoNotOptimize(futs::to_wts(s));
}
BENCHMARK(BM_ToWts)->RangeMultiplier(2)->Range(8, 128);

void BM_BoundedLogicalEquiv(benchmark::State& st) {
    const Futs s = random_wlts(static_cast<std::size_t>(st.range(0)), 13);
    for (auto _ : st) benchmark::DoNotOptimize(futs::bounded_logical_equiv(s));
}
BENCHMARK(BM_BoundedLogicalEquiv)->DenseRange(4, 12, 4);

}  // namespace

BENCHMARK_MAIN();
