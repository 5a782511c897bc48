#include <benchmark/benchmark.h>

#include <complex>

#include "specdmd/bopdmd.hpp"
#include "specdmd/exactdmd.hpp"
#include "specdmd/optdmd.hpp"
#include "specdmd/preprocess.hpp"
#include "specdmd/synth.hpp"
#include "specdmd/varpro.hpp"

using namespace specdmd;

namespace {

MixtureData make_data(int n, Eigen::Index m, int pairs) {
  MixtureSpec spec;
  spec.n = n;
  Eigen::VectorXcd eigs(2 * pairs);
  for (int j = 0; j < pairs; ++j) {
    const std::complex<double> w{-0.1 * (j + 1), 2.0 + 3.0 * j};
    eigs(2 * j) = w;
    eigs(2 * j + 1) = std::conj(w);
  }
  spec.eigs = eigs;
  spec.noise_sigma = 0.01;
  spec.times = TimeGrid::uniform(0.0, 0.02, static_cast<std::size_t>(m));
  return gen_exponential_mixture(spec);
}

}  // namespace

static void BM_EvalBasis(benchmark::State& state) {
  const auto r = static_cast<int>(state.range(0));
  Eigen::VectorXcd alpha(r);
  for (int j = 0; j < r; ++j) alpha(j) = {-0.1 * j, 1.0 + j};
  const TimeGrid t = TimeGrid::uniform(0.0, 0.01, 512);
  for (auto _ : state) {
    benchmark::DoNotOptimize(eval_basis(alpha, t));
  }
}
BENCHMARK(BM_EvalBasis)->Arg(4)->Arg(16);

static void BM_FitExact(benchmark::State& state) {
  const auto r = static_cast<int>(state.range(0));
  const MixtureData mix = make_data(32, 256, r / 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(fit_exact(mix.data, r));
  }
}
BENCHMARK(BM_FitExact)->Arg(4)->Arg(8);

static void BM_FitOptdmd(benchmark::State& state) {
  const auto r = static_cast<int>(state.range(0));
  const MixtureData mix = make_data(16, 128, r / 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        fit_optdmd(mix.data, r, EigConstraint::Unconstrained));
  }
}
BENCHMARK(BM_FitOptdmd)->Arg(2)->Arg(4);

static void BM_VarproJacobian(benchmark::State& state) {
  const MixtureData mix = make_data(16, 128, 2);
  Eigen::VectorXcd alpha = mix.truth.eigs;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        varpro_jacobian_dense(mix.data, mix.data.time, alpha));
  }
}
BENCHMARK(BM_VarproJacobian);

static void BM_ShiftLocalTime(benchmark::State& state) {
  DayNightSpec spec;
  for (int i = 0; i < 72; ++i) spec.lons.push_back(-180.0 + 5.0 * i);
  spec.samples_per_day = 72;
  spec.n_days = 5;
  const SnapshotSet set = gen_traveling_daynight(spec);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        shift_local_time(set.data, spec.lons, spec.samples_per_day));
  }
}
BENCHMARK(BM_ShiftLocalTime);

BENCHMARK_MAIN();
