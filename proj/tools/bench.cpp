// Compares the serial reference trial loop against the OpenMP kernel on two
// representative workloads and checks that both produce identical results.

#include <chrono>
#include <cstdio>

#include "femtosim/presets.hpp"
#include "femtosim/simulator.hpp"

namespace {

using Clock = std::chrono::steady_clock;

template <typename F>
double time_ms(F&& fn) {
  const auto t0 = Clock::now();
  fn();
  const auto t1 = Clock::now();
  return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

void bench_case(const char* name, const femtosim::SimConfig& config) {
  const auto world = femtosim::World::build(config);
  std::vector<femtosim::TrialResult> serial, parallel;
  (void)femtosim::run_trials_parallel(world);  // warm-up
  const double serial_ms = time_ms([&] { serial = femtosim::run_trials_serial(world); });
  const double parallel_ms = time_ms([&] { parallel = femtosim::run_trials_parallel(world); });
  const bool identical = serial == parallel;
  std::printf("%-28s serial %8.1f ms   parallel %8.1f ms   speedup %.2fx   %s\n", name,
              serial_ms, parallel_ms, serial_ms / parallel_ms,
              identical ? "identical" : "MISMATCH");
}

}  // namespace

int main() {
  auto chain = femtosim::preset("fig3").config;
  chain.beta = 0.5;
  chain.policy = femtosim::CachePolicy::Coded;
  chain.trials = 2000;
  bench_case("chain coded (h=523, M=50)", chain);

  chain.policy = femtosim::CachePolicy::Uncoded;
  bench_case("chain uncoded (cover-all)", chain);

  auto geo = femtosim::preset("fig3").config;
  geo.chain_mode = false;
  geo.beta = 0.5;
  geo.policy = femtosim::CachePolicy::Coded;
  geo.trials = 2000;
  bench_case("geometric coded (n=2500)", geo);

  geo.policy = femtosim::CachePolicy::Uncoded;
  geo.trials = 20000;
  bench_case("geometric uncoded (n=2500)", geo);
  return 0;
}
