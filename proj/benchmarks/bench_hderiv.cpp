#include <benchmark/benchmark.h>

#include <cmath>
#include <random>
#include <vector>

#include "hderiv/autodiff.hpp"
#include "hderiv/expr.hpp"
#include "hderiv/logarithm.hpp"
#include "hderiv/sandwich.hpp"
#include "hderiv/series.hpp"

using namespace hderiv;

namespace {

std::vector<Quaternion> sample_points(int count, double max_norm) {
  std::mt19937 rng(12345);
  std::uniform_real_distribution<double> comp(-max_norm / 2, max_norm / 2);
  std::vector<Quaternion> pts;
  pts.reserve(count);
  for (int k = 0; k < count; ++k) {
    pts.push_back({comp(rng), comp(rng), comp(rng), comp(rng)});
  }
  return pts;
}

}  // namespace

static void QuaternionMultiply(benchmark::State& state) {
  auto pts = sample_points(64, 2.0);
  size_t i = 0;
  for (auto _ : state) {
    Quaternion r = pts[i % 64] * pts[(i + 1) % 64];
    benchmark::DoNotOptimize(r);
    ++i;
  }
}
BENCHMARK(QuaternionMultiply);

static void Canonicalize(benchmark::State& state) {
  auto pts = sample_points(64, 1.5);
  SandwichForm f;
  for (int k = 0; k < 6; ++k) f.terms.push_back({pts[k], pts[k + 6]});
  for (auto _ : state) {
    CanonicalSandwich c = canonicalize(f);
    benchmark::DoNotOptimize(c);
  }
}
BENCHMARK(Canonicalize);

static void SeriesExp(benchmark::State& state) {
  auto pts = sample_points(64, 2.5);
  size_t i = 0;
  for (auto _ : state) {
    Quaternion r = eval_exp(pts[i % 64]);
    benchmark::DoNotOptimize(r);
    ++i;
  }
}
BENCHMARK(SeriesExp);

static void ExpDifferential(benchmark::State& state) {
  auto pts = sample_points(64, 2.5);
  size_t i = 0;
  for (auto _ : state) {
    SandwichForm d = elementary_differential(Elementary::exp, pts[i % 64]);
    benchmark::DoNotOptimize(d);
    ++i;
  }
}
BENCHMARK(ExpDifferential);

static void LogDerivativeSolve(benchmark::State& state) {
  auto pts = sample_points(64, 2.0);
  for (auto& p : pts) p.x0 = 1.5 + std::fabs(p.x0);  // keep off the branch cut
  size_t i = 0;
  for (auto _ : state) {
    LogDerivativeResult r = log_derivative(pts[i % 64]);
    benchmark::DoNotOptimize(r);
    ++i;
  }
}
BENCHMARK(LogDerivativeSolve);

static void ParsePolynomial(benchmark::State& state) {
  for (auto _ : state) {
    ExprPtr e = parse("z^3 - 2*z^2 + (1+2i)*z - 0.5");
    benchmark::DoNotOptimize(e);
  }
}
BENCHMARK(ParsePolynomial);

static void DifferentiatePolynomial(benchmark::State& state) {
  ExprPtr e = parse("z^3 - 2*z^2 + (1+2i)*z - 0.5");
  auto pts = sample_points(64, 1.2);
  size_t i = 0;
  for (auto _ : state) {
    Quaternion d = differentiate(*e, pts[i % 64]);
    benchmark::DoNotOptimize(d);
    ++i;
  }
}
BENCHMARK(DifferentiatePolynomial);

static void DifferentiateComposite(benchmark::State& state) {
  ExprPtr e = parse("exp(z^2)*sin(z) + ln(z+3)");
  auto pts = sample_points(64, 1.2);
  size_t i = 0;
  for (auto _ : state) {
    Quaternion d = differentiate(*e, pts[i % 64]);
    benchmark::DoNotOptimize(d);
    ++i;
  }
}
BENCHMARK(DifferentiateComposite);

BENCHMARK_MAIN();
