#include <benchmark/benchmark.h>

#include "halldec/bench.hpp"
#include "halldec/decomp.hpp"
#include "halldec/encoder.hpp"
#include "halldec/engine.hpp"
#include "halldec/generators.hpp"
#include "halldec/model.hpp"

using namespace halldec;

static void BM_PropagateAlldiffRc(benchmark::State& state) {
    for (auto _ : state) {
        Engine e;
        std::vector<VarId> xs = {e.new_int(3, 4, true), e.new_int(1, 4, true),
                                 e.new_int(3, 4, true), e.new_int(2, 5, true),
                                 e.new_int(1, 1, true)};
        post_alldiff_rc(e, xs);
        benchmark::DoNotOptimize(e.propagate_fixpoint());
    }
}
BENCHMARK(BM_PropagateAlldiffRc);

static void BM_PhpRootRefutation(benchmark::State& state) {
    int n = static_cast<int>(state.range(0));
    InstanceFile f = gen_php(n);
    for (auto _ : state) {
        Engine e;
        BuiltModel m = build_model(e, f, parse_method("hi"));
        benchmark::DoNotOptimize(e.propagate_fixpoint());
    }
}
BENCHMARK(BM_PhpRootRefutation)->Arg(6)->Arg(9)->Arg(12);

static void BM_PhpBiSearch(benchmark::State& state) {
    InstanceFile f = gen_php(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        SolveResult res = run_solve(f, parse_method("bi"));
        benchmark::DoNotOptimize(res.stats.backtracks);
    }
}
BENCHMARK(BM_PhpBiSearch)->Arg(5)->Arg(7);

static void BM_EncodeDw3Hi(benchmark::State& state) {
    InstanceFile f = gen_double_wheel(3);
    for (auto _ : state) {
        PbFormula pb = encode(f, EncodeMode::Hi);
        benchmark::DoNotOptimize(pb.to_opb().size());
    }
}
BENCHMARK(BM_EncodeDw3Hi);

BENCHMARK_MAIN();
