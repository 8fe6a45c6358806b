#include <benchmark/benchmark.h>

#include <random>

#include "tetra/verify.hpp"
#include "tetra/wronskian.hpp"

using namespace tetra;

namespace {

RationalFunction random_rf(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> c(-9, 9), e(0, 3), pick(0, 3);
    const char* names[] = {"a", "b", "c", "d"};
    auto poly = [&]() {
        RationalFunction p(0);
        for (int t = 0; t < 5; ++t) {
            RationalFunction m(c(rng));
            for (int k = e(rng); k > 0; --k) m *= RationalFunction::variable(names[pick(rng)]);
            p += m;
        }
        return p;
    };
    auto den = poly();
    while (den.is_zero()) den = poly();
    return poly() / den;
}

void BM_RationalArithmetic(benchmark::State& state) {
    std::mt19937_64 rng(1);
    std::vector<RationalFunction> xs;
    for (int i = 0; i < 64; ++i) xs.push_back(random_rf(rng));
    std::size_t i = 0;
    for (auto _ : state) {
        const auto& f = xs[i % 64];
        const auto& g = xs[(i + 1) % 64];
        benchmark::DoNotOptimize(f * g + f / (g + RationalFunction(1)));
        ++i;
    }
}
BENCHMARK(BM_RationalArithmetic);

void BM_Sonnet(benchmark::State& state, const char* name) {
    const auto& t = builtin(name);
    for (auto _ : state) {
        auto run = run_sonnet(t);
        benchmark::DoNotOptimize(compare_traces(run.plus, run.minus).all_equal());
    }
}
BENCHMARK_CAPTURE(BM_Sonnet, lusztig, "lusztig")->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Sonnet, smaller2, "smaller2")->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Sonnet, full3, "full3")->Unit(benchmark::kMillisecond);

void BM_LongProduct(benchmark::State& state) {
    auto w = minimal_word(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(long_product_triangularity(w));
}
BENCHMARK(BM_LongProduct)->DenseRange(3, 5)->Unit(benchmark::kMillisecond);

void BM_WronskianCommutation(benchmark::State& state) {
    auto r1 = static_cast<std::size_t>(state.range(0));
    auto a = RationalFunction::variable("a");
    for (auto _ : state) benchmark::DoNotOptimize(check_commutation(standard_collection(r1), {{1, a}}).equal);
}
BENCHMARK(BM_WronskianCommutation)->DenseRange(3, 6)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
