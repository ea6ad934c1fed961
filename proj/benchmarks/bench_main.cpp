#include "s3e/exactnum/radical.hpp"
#include "s3e/groebner/groebner.hpp"
#include "s3e/liegeom/curvature.hpp"
#include "s3e/varsys/chart.hpp"

#include <benchmark/benchmark.h>

using namespace s3e;

static void BM_RadicalMultiply(benchmark::State& state) {
    RadicalScalar x = RadicalScalar::parse("3^(1/4)/sqrt2 + 2/7*sqrt2"), y = RadicalScalar::parse("1/(sqrt2*3^(1/4)) - 5");
    for (auto _ : state) benchmark::DoNotOptimize(x * y);
}
BENCHMARK(BM_RadicalMultiply);

static void BM_RadicalInverse(benchmark::State& state) {
    RadicalScalar x = RadicalScalar::parse("3^(1/4)/sqrt2 + 2/7*sqrt2 - 1");
    for (auto _ : state) benchmark::DoNotOptimize(x.inverse());
}
BENCHMARK(BM_RadicalInverse);

static void BM_CurvatureOracle(benchmark::State& state) {
    std::array<double, 15> p{1.1, 0.9, 1.3, 0.7, 1.2, 1.05, 0.1, -0.2, 0.3, 0.05, 0.4, -0.1, 0.2, 0.15, -0.3};
    BasisChange a = BasisChange::from_array(p);
    for (auto _ : state) benchmark::DoNotOptimize(curvature(a).scalar);
}
BENCHMARK(BM_CurvatureOracle);

static void BM_BuildScalarCurvature(benchmark::State& state) {
    MetricChart chart = MetricChart::z2();
    for (auto _ : state) benchmark::DoNotOptimize(build_scalar_curvature(chart));
}
BENCHMARK(BM_BuildScalarCurvature)->Unit(benchmark::kMillisecond);

static void BM_DeriveSystem(benchmark::State& state) {
    MetricChart chart = MetricChart::z2();
    for (auto _ : state) benchmark::DoNotOptimize(build_variational_system(chart));
}
BENCHMARK(BM_DeriveSystem)->Unit(benchmark::kMillisecond);

static void BM_Trace2Basis(benchmark::State& state) {
    PolySystem sys = build_variational_system(MetricChart::trace2());
    GroebnerOptions opt;
    opt.order = state.range(0) ? MonomialOrder::grevlex : MonomialOrder::lex;
    for (auto _ : state) benchmark::DoNotOptimize(buchberger(sys, opt));
}
BENCHMARK(BM_Trace2Basis)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
