#include <benchmark/benchmark.h>

#include <random>

#include "griffiths/griffiths.hpp"

namespace {

using namespace griffiths;

// Commuting symmetric family ᵀc·D_ℓ·c with c = exp(skew) and a spread-out
// first member, so the diagonalizer has a clear pivot.
DistinguishedBasis family(std::size_t p, std::size_t q, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-0.5, 0.5);
  Matrix s(q, q);
  for (std::size_t i = 0; i < q; ++i)
    for (std::size_t j = i + 1; j < q; ++j) {
      const Complex z{u(rng), u(rng)};
      s.set(i, j, z);
      s.set(j, i, -z);
    }
  const Matrix c = matrix_exp_skew(s);
  DistinguishedBasis d{p, q, {}};
  for (std::size_t l = 0; l + 1 < p; ++l) {
    Vector diag(q);
    for (std::size_t i = 0; i < q; ++i)
      diag[i] = l == 0 ? Complex(static_cast<double>(i), u(rng)) : Complex(u(rng), u(rng));
    d.a.push_back(symmetric_part(c.transpose() * Matrix::diagonal(diag) * c));
  }
  return d;
}

std::vector<std::vector<UnivariatePoly>> enrichment(std::size_t p, std::size_t q) {
  std::vector<std::vector<UnivariatePoly>> grid(p - 1);
  for (auto& row : grid)
    for (std::size_t j = 0; j < q; ++j) row.emplace_back(std::vector<Complex>{0.0, 0.0, 0.0, 0.05, -0.03, 0.02});
  return grid;
}

void BM_Diagonalization(benchmark::State& state) {
  const auto q = static_cast<std::size_t>(state.range(0));
  const auto d = family(4, q, 1);
  for (auto _ : state) benchmark::DoNotOptimize(simultaneous_orthogonal_diagonalization(d.a));
}
BENCHMARK(BM_Diagonalization)->DenseRange(2, 8, 2);

void BM_ChartZ(benchmark::State& state) {
  const auto q = static_cast<std::size_t>(state.range(0));
  const auto method = state.range(1) == 0 ? IntegrationMethod::closed_form : IntegrationMethod::quadrature;
  const auto d = family(4, q, 2);
  const Chart chart(system_matching_hessians(d, enrichment(4, q)), {}, method);
  Vector u(q, Complex(0.3, 0.2));
  for (auto _ : state) benchmark::DoNotOptimize(chart_z(chart, u));
  state.SetLabel(state.range(1) == 0 ? "closed form" : "quadrature");
}
BENCHMARK(BM_ChartZ)->ArgsProduct({{2, 4, 6}, {0, 1}});

void BM_VerifyChart(benchmark::State& state) {
  const auto q = static_cast<std::size_t>(state.range(0));
  const auto d = family(3, q, 3);
  const Chart chart(system_matching_hessians(d, enrichment(3, q)));
  for (auto _ : state) benchmark::DoNotOptimize(verify_chart(chart, 20, 0));
}
BENCHMARK(BM_VerifyChart)->DenseRange(2, 5, 1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
