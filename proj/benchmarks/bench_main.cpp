#include <benchmark/benchmark.h>

#include "opcat/bar.hpp"
#include "opcat/colored.hpp"

using namespace opcat;

namespace {

BlobModel richer_model(int n) {
    BlobModel m;
    m.name = "bench";
    m.N = n;
    m.vnames = {"v"};
    m.edges.push_back({0, 0, "a"});
    m.edges.push_back({0, 0, "b"});
    BlobModel::Relation r;
    r.len = 2;
    r.src = r.tgt = 0;
    r.terms.push_back({Rat(1), {0, 1}});
    r.terms.push_back({Rat(-1), {1, 0}});
    m.relations.push_back(r);
    m.bl = m.br = 0;
    return m;
}

void BM_rank_dense(benchmark::State& state) {
    int n = static_cast<int>(state.range(0));
    Matrix m(n, n);
    SplitMix64 rng(7);
    for (auto& x : m.a) x = Rat(static_cast<long>(rng.below(7)) - 3);
    for (auto _ : state) benchmark::DoNotOptimize(rank(m));
    state.SetComplexityN(n);
}
BENCHMARK(BM_rank_dense)->RangeMultiplier(2)->Range(16, 128)->Complexity();

void BM_skein_oracle(benchmark::State& state) {
    auto m = richer_model(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(skein_dim(m));
}
BENCHMARK(BM_skein_oracle)->DenseRange(3, 6);

void BM_blob_system(benchmark::State& state) {
    auto m = model_two_vertex(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        auto sys = build_blob_system(m);
        benchmark::DoNotOptimize(sys.Fbar.carrier.size());
    }
}
BENCHMARK(BM_blob_system)->DenseRange(2, 3);

void BM_bar_assembly(benchmark::State& state) {
    auto sys = build_blob_system(model_loop_x2(3));
    BarInput in{sys.BlobC.cat, sys.MmodC.mod, sys.F, sys.M_lin};
    int depth = static_cast<int>(state.range(0));
    for (auto _ : state) {
        auto bar = bar_complex(in, sys.upsilon, depth);
        benchmark::DoNotOptimize(bar.cx.dims.back());
    }
}
BENCHMARK(BM_bar_assembly)->DenseRange(1, 3);

void BM_forest_enumeration(benchmark::State& state) {
    auto sys = build_blob_system(richer_model(3), false);
    int depth = static_cast<int>(state.range(0));
    for (auto _ : state) {
        auto fb = differential_bar(sys, depth);
        benchmark::DoNotOptimize(fb.cx.dims.back());
    }
}
BENCHMARK(BM_forest_enumeration)->DenseRange(1, 3);

}  // namespace

BENCHMARK_MAIN();
