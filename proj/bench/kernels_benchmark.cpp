#include <benchmark/benchmark.h>

#include <random>

#include "savskit/kernels.hpp"

namespace {

using namespace savskit::kernels;

Eigen::MatrixXd random_matrix(Eigen::Index rows, Eigen::Index cols, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> z;
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = z(rng);
  return m;
}

Eigen::VectorXd random_weights(Eigen::Index p, unsigned seed) {
  return random_matrix(p, 1, seed).col(0).array().abs() + 0.1;
}

void BM_GramSerial(benchmark::State& state) {
  const auto n = state.range(0), p = state.range(1);
  const auto X = random_matrix(n, p, 1);
  const auto w = random_weights(p, 2);
  Eigen::MatrixXd out(n, n);
  for (auto _ : state) {
    serial::shifted_weighted_gram(X, w, out);
    benchmark::DoNotOptimize(out.data());
  }
}

void BM_GramParallel(benchmark::State& state) {
  const auto n = state.range(0), p = state.range(1);
  const auto X = random_matrix(n, p, 1);
  const auto w = random_weights(p, 2);
  Eigen::MatrixXd out(n, n), scratch;
  for (auto _ : state) {
    parallel::shifted_weighted_gram(X, w, out, scratch);
    benchmark::DoNotOptimize(out.data());
  }
}

void BM_CorrelateSerial(benchmark::State& state) {
  const auto X = random_matrix(state.range(0), state.range(1), 3);
  const Eigen::VectorXd r = random_matrix(state.range(0), 1, 4).col(0);
  Eigen::VectorXd out;
  for (auto _ : state) {
    serial::correlate(X, r, out);
    benchmark::DoNotOptimize(out.data());
  }
}

void BM_CorrelateParallel(benchmark::State& state) {
  const auto X = random_matrix(state.range(0), state.range(1), 3);
  const Eigen::VectorXd r = random_matrix(state.range(0), 1, 4).col(0);
  Eigen::VectorXd out;
  for (auto _ : state) {
    parallel::correlate(X, r, out);
    benchmark::DoNotOptimize(out.data());
  }
}

void BM_InclusionSerial(benchmark::State& state) {
  const auto draws = random_matrix(state.range(0), state.range(1), 5);
  const Eigen::VectorXd norms = Eigen::VectorXd::Constant(state.range(1), 200.0);
  std::vector<std::size_t> counts;
  for (auto _ : state) {
    serial::savs_inclusion_counts(draws, norms, 2.0, counts);
    benchmark::DoNotOptimize(counts.data());
  }
}

void BM_InclusionParallel(benchmark::State& state) {
  const auto draws = random_matrix(state.range(0), state.range(1), 5);
  const Eigen::VectorXd norms = Eigen::VectorXd::Constant(state.range(1), 200.0);
  std::vector<std::size_t> counts;
  for (auto _ : state) {
    parallel::savs_inclusion_counts(draws, norms, 2.0, counts);
    benchmark::DoNotOptimize(counts.data());
  }
}

}  // namespace

BENCHMARK(BM_GramSerial)->Args({100, 500})->Args({200, 500})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GramParallel)->Args({100, 500})->Args({200, 500})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CorrelateSerial)->Args({200, 500});
BENCHMARK(BM_CorrelateParallel)->Args({200, 500});
BENCHMARK(BM_InclusionSerial)->Args({5000, 500})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_InclusionParallel)->Args({5000, 500})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
