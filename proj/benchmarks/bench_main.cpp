#include <benchmark/benchmark.h>

#include <random>

#include "wrtwist/families.hpp"
#include "wrtwist/ideals.hpp"
#include "wrtwist/twist.hpp"

using namespace wrtwist;

static void BM_EnumerateShort(benchmark::State& state) {
  GramMatrix3 g{7, 9, 11, 2, -3, 4};
  Rational bound = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_short_vectors(g, bound));
}
BENCHMARK(BM_EnumerateShort)->Arg(20)->Arg(80)->Arg(320);

static void BM_IsWrLattice(benchmark::State& state) {
  GramMatrix3 g = GramMatrix3::equal_diagonal(28899, -12141, 7011, 342);
  for (auto _ : state) benchmark::DoNotOptimize(is_wr_lattice(g));
}
BENCHMARK(BM_IsWrLattice);

static void BM_Algorithm1(benchmark::State& state) {
  auto inst = make_family_field(Family::Shanks, Integer(state.range(0)));
  auto gb = family_good_basis(inst, "1");
  for (auto _ : state) benchmark::DoNotOptimize(test_good_basis(gb.basis));
}
BENCHMARK(BM_Algorithm1)->Arg(21)->Arg(48)->Arg(1029);

static void BM_AlgorithmRandomImages(benchmark::State& state) {
  auto inst = make_family_field(Family::Washington, Integer(4));
  std::mt19937_64 rng(1);
  for (auto _ : state) {
    Basis3 b = transform_basis(*inst.integral_basis, random_unimodular(rng, 3));
    benchmark::DoNotOptimize(test_good_basis(b));
  }
}
BENCHMARK(BM_AlgorithmRandomImages);

static void BM_GaloisFromPolynomial(benchmark::State& state) {
  long n = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(CubicField::from_polynomial(-1, -(n + 3), -n));
}
BENCHMARK(BM_GaloisFromPolynomial)->Arg(1)->Arg(100)->Arg(10000);

static void BM_FieldFromConductor(benchmark::State& state) {
  ConductorData cd = conductor_params(Integer(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(CubicField::from_conductor(cd));
}
BENCHMARK(BM_FieldFromConductor)->Arg(7)->Arg(1387)->Arg(1000003);

static void BM_IdealScanConductor(benchmark::State& state) {
  auto f = CubicField::from_conductor(conductor_params(Integer(state.range(0))));
  for (auto _ : state)
    for (const auto& spec : all_ramified_specs(f))
      benchmark::DoNotOptimize(is_wr_lattice(ideal_gram(ideal_basis(spec))));
}
BENCHMARK(BM_IdealScanConductor)->Arg(91)->Arg(247);

static void BM_Search(benchmark::State& state) {
  auto inst = make_family_field(Family::Shanks, Integer(-1));
  SearchOptions o;
  o.iterations = 200;
  o.threads = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(good_basis_search(*inst.integral_basis, o));
}
BENCHMARK(BM_Search)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
