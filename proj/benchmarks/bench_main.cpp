#include <benchmark/benchmark.h>

#include "drisim/channels.hpp"
#include "drisim/geometry.hpp"
#include "drisim/phaseopt.hpp"
#include "drisim/schemes.hpp"

using namespace drisim;

namespace {

ChannelRealization bench_drop(int m) {
  ChannelParams params;
  params.rician_k = 10.0;
  return realize_drop_multi(paper_layout(), false, true, m, params, DropSeed{17, 0});
}

void BM_RealizeDrop(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  ChannelParams params;
  params.rician_k = 10.0;
  std::uint64_t drop = 0;
  for (auto _ : state) {
    auto r = realize_drop_multi(paper_layout(), true, true, m, params, DropSeed{17, drop++});
    benchmark::DoNotOptimize(r.g.data());
  }
}
BENCHMARK(BM_RealizeDrop)->Arg(64)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

void BM_AoDoubleRis(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const auto drop = bench_drop(m);
  const Eigen::MatrixXcd f = cascade_f(drop.h_i2d, drop.g, drop.h_i1s);
  for (auto _ : state) {
    auto res = ao_double_ris(f, 1e5, AoSettings{});
    benchmark::DoNotOptimize(res.snr);
  }
}
BENCHMARK(BM_AoDoubleRis)->Arg(64)->Arg(128)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);

void BM_AoSecondHop(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const auto drop = bench_drop(m);
  const Eigen::MatrixXcd q = cascade_f(*drop.h_i2r2, drop.g, *drop.h_i1r1);
  const Eigen::VectorXcd u1 = drop.h_i1r2->cwiseProduct(*drop.h_i1r1);
  const Eigen::VectorXcd u2 = drop.h_i2r2->cwiseProduct(*drop.h_i2r1);
  for (auto _ : state) {
    auto res = ao_second_hop_two_ris(q, u1, u2, *drop.h_r1r2, 1e5, AoSettings{});
    benchmark::DoNotOptimize(res.snr);
  }
}
BENCHMARK(BM_AoSecondHop)->Arg(64)->Arg(128)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);

void BM_MmFractionalPhase(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const auto drop = bench_drop(m);
  const PhaseVector theta =
      align_to_reference(*drop.h_sr1, drop.h_i1r1->cwiseProduct(drop.h_i1s));
  const Eigen::VectorXcd q = drop.g * theta.v.cwiseProduct(drop.h_i1s);
  const Eigen::VectorXcd b = drop.h_i2d.cwiseProduct(q);
  const Eigen::VectorXcd a = drop.h_i2d.cwiseProduct(*drop.h_i2r2);
  for (auto _ : state) {
    auto res = mm_fractional_phase(a, b, *drop.h_r2d, 5e4, 5e4, 1.0, AoSettings{});
    benchmark::DoNotOptimize(res.sinr);
  }
}
BENCHMARK(BM_MmFractionalPhase)->Arg(64)->Arg(256)->Arg(1024)->Unit(benchmark::kMicrosecond);

void BM_EvalEnhanced(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const auto drop = bench_drop(m);
  for (auto _ : state) {
    auto res = eval_enhanced(drop, PowerSplit::half(1e5), 1.0, InterferenceParams{1.0},
                             AoSettings{});
    benchmark::DoNotOptimize(res.rate_bps_hz);
  }
}
BENCHMARK(BM_EvalEnhanced)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
