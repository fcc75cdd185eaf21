#include <benchmark/benchmark.h>

#include <cmath>

#include "dsbd/boundary.hpp"
#include "dsbd/modes.hpp"
#include "dsbd/propagators.hpp"

using namespace dsbd;

namespace {

Vec circle(double phi) {
  Vec w(2);
  w << std::cos(phi), std::sin(phi);
  return w;
}

const TwoPointTable& table() {
  static TwoPointTable T(ModelParams(2, 1.0));
  return T;
}

}  // namespace

static void BM_KernelDirect(benchmark::State& st) {
  ModelParams p(static_cast<int>(st.range(0)), 1.0);
  Vec w0 = Vec::Unit(p.d, 0), w1 = Vec::Unit(p.d, 1);
  Point x = ds_chart(0.3, w0), y = ds_chart(-0.2, w1);
  for (auto _ : st) benchmark::DoNotOptimize(lambda_ds(x, y, Sign::PLUS, p));
}
BENCHMARK(BM_KernelDirect)->Arg(2)->Unit(benchmark::kMillisecond);

static void BM_KernelDirectD3(benchmark::State& st) {
  ModelParams p(3, 1.0);
  Point x = ds_chart(0.3, Vec::Unit(3, 0)), y = ds_chart(-0.2, Vec::Unit(3, 1));
  for (auto _ : st) benchmark::DoNotOptimize(lambda_ds(x, y, Sign::PLUS, p));
}
BENCHMARK(BM_KernelDirectD3)->Iterations(2)->Unit(benchmark::kMillisecond);

static void BM_TableBuild(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(TwoPointTable(ModelParams(2, 1.0)));
}
BENCHMARK(BM_TableBuild)->Iterations(2)->Unit(benchmark::kMillisecond);

static void BM_TableLookup(benchmark::State& st) {
  const TwoPointTable& T = table();
  Point x = ds_chart(0.3, circle(0.0)), y = ds_chart(-0.2, circle(1.0));
  for (auto _ : st) benchmark::DoNotOptimize(T.lambda(x, y, Sign::PLUS));
}
BENCHMARK(BM_TableLookup);

static void BM_PacketSlice(benchmark::State& st) {
  ModelParams p(static_cast<int>(st.range(0)), 1.0);
  RulePtr r = sphere_rule(p, static_cast<int>(st.range(1)));
  BoundaryFunction v = zonal_basis(2, make_direction(Vec::Unit(p.d, 0)), r);
  WavePacket u(v, Sign::PLUS, p.lam_plus(), p);
  for (auto _ : st) benchmark::DoNotOptimize(u.on_ds_slice(5.0, r->xi));
  st.SetItemsProcessed(st.iterations() * static_cast<int64_t>(r->size()));
}
BENCHMARK(BM_PacketSlice)->Args({2, 64})->Args({3, 16})->Unit(benchmark::kMillisecond);

static void BM_ExtractRho(benchmark::State& st) {
  ModelParams p(2, 1.0);
  RulePtr r = sphere_rule(p, 64);
  BoundaryFunction v = zonal_basis(1, make_direction(circle(0.0)), r);
  Reconstruction u(AsymptoticData(v, v * 0.5), p);
  SliceFn s = slice_of(u);
  for (auto _ : st) benchmark::DoNotOptimize(extract_rho(s, r, p));
}
BENCHMARK(BM_ExtractRho)->Unit(benchmark::kMillisecond);

static void BM_SmearBump(benchmark::State& st) {
  const TwoPointTable& T = table();
  PairKernel k = [&T](const Point& x, const Point& y) { return T.lambda(x, y, Sign::PLUS); };
  Bump g;
  g.t0 = 0.2;
  g.w0 = circle(0.4);
  Point x = ds_chart(0.5, circle(0.1));
  int n = static_cast<int>(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(smear_bump(x, g, k, n, n));
}
BENCHMARK(BM_SmearBump)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

static void BM_SmatrixEigenvaluesEps(benchmark::State& st) {
  ModelParams p(3, 1.0);
  for (auto _ : st) benchmark::DoNotOptimize(smatrix_eigenvalues_eps(p, SDirection::FORWARD, 4));
}
BENCHMARK(BM_SmatrixEigenvaluesEps)->Unit(benchmark::kMillisecond);

static void BM_ModeSolve(benchmark::State& st) {
  ModelParams p(2, 1.0);
  for (auto _ : st) benchmark::DoNotOptimize(mode_solve(2, p, -2.0, 1.0, 0.0, {-1.0, 0.0, 1.0, 2.0}));
}
BENCHMARK(BM_ModeSolve)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
