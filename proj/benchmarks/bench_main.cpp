#include <benchmark/benchmark.h>

#include <random>

#include "aqs/classifier.hpp"
#include "aqs/constructors.hpp"
#include "aqs/exterior.hpp"
#include "aqs/invariant_forms.hpp"

namespace {

using namespace aqs;

std::vector<Scalar> weights(std::size_t n) {
  std::vector<Scalar> w;
  for (std::size_t r = 1; r <= n; ++r) w.push_back(Scalar(static_cast<long>(r)));
  return w;
}

Matrix conjugator(std::size_t dim, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> d(-2, 2);
  for (;;) {
    Matrix q(dim, dim);
    for (std::size_t i = 0; i < dim; ++i) {
      for (std::size_t j = 0; j < dim; ++j) q(i, j) = d(rng);
    }
    if (!determinant(q).is_zero()) return q;
  }
}

void BM_Betti(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const LieAlgebra l = weighted_heisenberg_4n1(n, weights(n)).algebra;
  for (auto _ : state) benchmark::DoNotOptimize(ce_betti_all(l));
  state.SetLabel("dim " + std::to_string(l.dim()));
}
BENCHMARK(BM_Betti)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

void BM_ClassifyStructure(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const AcmStructure s = weighted_heisenberg_4n1(n, weights(n)).structures[0];
  for (auto _ : state) benchmark::DoNotOptimize(classify_structure(s));
}
BENCHMARK(BM_ClassifyStructure)->DenseRange(1, 3)->Unit(benchmark::kMillisecond);

void BM_ClassifyConjugated(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const AcmStructure base = weighted_heisenberg_4n1(n, weights(n)).structures[0];
  const AcmStructure s = change_basis(base, conjugator(base.dim(), 7));
  for (auto _ : state) benchmark::DoNotOptimize(classify_nilpotent_aqs(s));
}
BENCHMARK(BM_ClassifyConjugated)->DenseRange(1, 3)->Unit(benchmark::kMillisecond);

void BM_CurvatureScalar(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const AcmStructure s = weighted_heisenberg_4n1(n, weights(n)).structures[0];
  for (auto _ : state) {
    const Curvature c(s, levi_civita(s));
    benchmark::DoNotOptimize(c.scalar());
  }
}
BENCHMARK(BM_CurvatureScalar)->DenseRange(1, 3)->Unit(benchmark::kMillisecond);

void BM_InvariantFormsSu3(benchmark::State& state) {
  const LieAlgebra g = su3();
  const Subspace k = centralizer_of_torus(g, Subspace::span({unit_vector(8, 6), unit_vector(8, 7)}, 8));
  for (auto _ : state) {
    const ReductiveSplit r = reductive_split(g, k);
    benchmark::DoNotOptimize(invariant_closed_2forms(r));
  }
}
BENCHMARK(BM_InvariantFormsSu3)->Unit(benchmark::kMillisecond);

void BM_RankFloatVsExact(benchmark::State& state) {
  const bool flt = state.range(0) != 0;
  Matrix m = conjugator(12, 3) * conjugator(12, 4);
  if (flt) m = m.to_float();
  for (auto _ : state) benchmark::DoNotOptimize(rank(m));
  state.SetLabel(flt ? "float" : "exact");
}
BENCHMARK(BM_RankFloatVsExact)->Arg(0)->Arg(1);

}  // namespace

BENCHMARK_MAIN();
