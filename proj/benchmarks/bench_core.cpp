#include <benchmark/benchmark.h>

#include <random>

#include "rbloch/fp_group.hpp"
#include "rbloch/polynomial.hpp"
#include "rbloch/smith.hpp"

using namespace rbloch;

namespace {

IntMatrix random_matrix(std::size_t rows, std::size_t cols, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> dist(-20, 20);
  IntMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m.set(i, j, dist(rng));
  return m;
}

// Five nonzeros per row, like a five-term relation matrix.
IntMatrix sparse_relations(std::size_t rows, std::size_t cols, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  IntMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (int k = 0; k < 5; ++k) m.set(i, rng() % cols, (k % 2) ? -1 : 1);
  m.compact();
  return m;
}

void BM_SmithDense(benchmark::State& state) {
  auto n = static_cast<std::size_t>(state.range(0));
  auto m = random_matrix(n, n, 1);
  for (auto _ : state) benchmark::DoNotOptimize(smith_normal_form(m));
}
BENCHMARK(BM_SmithDense)->Arg(8)->Arg(16)->Arg(32);

void BM_SmithColumnSparse(benchmark::State& state) {
  auto n = static_cast<std::size_t>(state.range(0));
  auto m = sparse_relations(n * n, n, 2);
  for (auto _ : state) benchmark::DoNotOptimize(smith_column_transform(m));
}
BENCHMARK(BM_SmithColumnSparse)->Arg(24)->Arg(48)->Arg(80);

void BM_HermiteBasis(benchmark::State& state) {
  auto n = static_cast<std::size_t>(state.range(0));
  auto m = random_matrix(2 * n, n, 3);
  for (auto _ : state) benchmark::DoNotOptimize(hermite_basis(m));
}
BENCHMARK(BM_HermiteBasis)->Arg(16)->Arg(32);

void BM_NormalForm(benchmark::State& state) {
  FPGroup g({"a", "b", "c"}, IntMatrix::from_rows({{4, 2, 0}, {0, 6, 3}, {2, 0, 9}}));
  IntVector x{17, -5, 23};
  for (auto _ : state) benchmark::DoNotOptimize(g.normal_form(x));
}
BENCHMARK(BM_NormalForm);

void BM_Factor(benchmark::State& state) {
  auto k = FiniteField::with_order(static_cast<std::uint64_t>(state.range(0)));
  PolynomialRing r(k);
  std::mt19937_64 rng(4);
  Polynomial p;
  for (int i = 0; i < 12; ++i) p.coeffs.push_back(k.element(static_cast<std::uint32_t>(rng() % k.order())));
  p.coeffs.push_back(k.one());
  for (auto _ : state) benchmark::DoNotOptimize(r.factor(p));
}
BENCHMARK(BM_Factor)->Arg(5)->Arg(25)->Arg(81);

}  // namespace
