#include <benchmark/benchmark.h>

#include <random>

#include "stbc/constellation.hpp"
#include "stbc/constructions.hpp"
#include "stbc/optimality.hpp"
#include "stbc/simulator.hpp"

using namespace stbc;

namespace {

CMatrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols) {
  std::normal_distribution<double> d;
  CMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = {d(rng), d(rng)};
  return m;
}

void BM_Matmul(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(1);
  const CMatrix a = random_matrix(rng, n, n), b = random_matrix(rng, n, n);
  for (auto _ : state) benchmark::DoNotOptimize(matmul(a, b));
}
BENCHMARK(BM_Matmul)->Arg(2)->Arg(4)->Arg(8)->Arg(16);

void BM_MmseDecodeFrame(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const LinearSTBC code = build_stbc(cyclic_spec(default_transcendentals(n)));
  const Constellation qpsk = Constellation::qpsk();
  SplitMix64 gen(7);
  const ChannelRealization chan = draw_channel(gen, 2 * n, n);
  const SymbolFrame frame = map_bits(std::vector<std::uint8_t>(2 * code.k(), 1), qpsk, 10.0);
  const CMatrix y = transmit(code, frame, chan);
  for (auto _ : state) {
    const CMatrix j = mmse_filter(chan.h, 10.0);
    benchmark::DoNotOptimize(decode(code, j, y, qpsk, 10.0));
  }
}
BENCHMARK(BM_MmseDecodeFrame)->Arg(2)->Arg(3)->Arg(4);

void BM_MinDetQpsk(benchmark::State& state) {
  const LinearSTBC code = build_stbc(cyclic_spec(default_transcendentals(2)));
  const Constellation qpsk = Constellation::qpsk();
  for (auto _ : state) benchmark::DoNotOptimize(min_det_diversity(code, qpsk.points(), 1));
}
BENCHMARK(BM_MinDetQpsk)->Unit(benchmark::kMillisecond);

void BM_RunBer(benchmark::State& state) {
  SimConfig cfg;
  cfg.snr_grid_db = {10.0};
  cfg.trials_per_point = 1000;
  cfg.threads = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(run_ber(cfg));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(cfg.trials_per_point));
}
BENCHMARK(BM_RunBer)->Arg(1)->Arg(2)->UseRealTime()->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
