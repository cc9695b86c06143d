#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "femtosim/caching.hpp"
#include "femtosim/geometry.hpp"
#include "femtosim/zipf.hpp"

namespace femtosim {

enum class RelayMode { SingleRelay, AllInCell };
enum class PopularSizing { Asymptotic, Exact };

/// What a chain-mode trial waits for. The cover-all / full-rank pair mirrors
/// the closed-form hop predictions (all contents reachable / whole space
/// spanned); first-hit / decode-target resolve the single requested content.
enum class ChainUncodedObjective { CoverAll, FirstHit };
enum class ChainCodedObjective { FullRank, DecodeTarget };

enum class ServedBy : std::uint8_t { Self, Relay, Helper };

struct SimConfig {
  std::uint64_t n = 2500;
  double alpha = 1.5;
  double beta = 0.5;
  double s = 2.5;
  double c1 = 1.0;
  double c3 = 8.0;
  double c4 = 1.0;
  double delta = 1.0;
  double bandwidth = 1.0;
  std::optional<double> epsilon;  // default 1/sqrt(n)
  CachePolicy policy = CachePolicy::Uncoded;
  RelayMode relay_mode = RelayMode::SingleRelay;
  PopularSizing popular_sizing = PopularSizing::Asymptotic;
  std::uint64_t trials = 2000;
  std::uint64_t master_seed = 42;
  bool chain_mode = false;
  ChainUncodedObjective chain_uncoded = ChainUncodedObjective::CoverAll;
  ChainCodedObjective chain_coded = ChainCodedObjective::FullRank;
  int threads = 0;  // 0 = all available; 1 = serial reference path

  std::uint64_t content_count() const;  // m = floor(C3 * n^alpha)
  std::uint64_t cache_size() const;     // M = max(1, floor(C4 * n^beta))
  double effective_epsilon() const;
  double tdma_c2() const;  // ceil((2 + delta) / c1)

  void validate() const;
};

struct TrialResult {
  std::uint64_t requested = 0;  // 1-based content index, 0 in chain mode
  std::uint32_t hops = 0;
  ServedBy served_by = ServedBy::Self;
  bool popular = true;
  bool decodable_on_path = true;  // resolved before reaching the helper

  bool operator==(const TrialResult&) const = default;
};

struct SimSummary {
  SimConfig config;
  std::uint64_t h = 0;         // popular-set size in use
  std::uint64_t h_exact = 0;   // exact tail-mass scan, reported alongside
  double h_asymptotic = 0.0;   // n^{(alpha+1/2)/s}
  std::uint64_t m = 0;
  std::uint64_t cache_rows = 0;
  double mean_hops = 0.0;
  double ci95 = 0.0;
  double lambda = 0.0;
  bool trivial_regime = false;
  std::uint64_t served_self = 0;
  std::uint64_t served_relay = 0;
  std::uint64_t served_helper = 0;
  double theory_ex = 0.0;
  double theory_lambda = 0.0;
  Grid::Occupancy occupancy{};  // zeros in chain mode
};

/// Everything immutable that trials share: geometry, popularity, caches.
/// Chain mode skips placement, grid and per-UT caches.
struct World {
  SimConfig config;
  std::uint64_t h = 0;
  std::uint64_t h_exact = 0;
  double h_asymptotic = 0.0;
  ZipfPopularity zipf;
  Placement placement;
  std::optional<Grid> grid;
  std::vector<UncodedCache> uncoded_caches;
  std::vector<CodedCache> coded_caches;

  static World build(const SimConfig& config);
};

/// One geometric trial: draw a requester and a content, walk the staircase
/// route toward the helper consulting caches cell by cell.
TrialResult run_trial(const World& world, std::uint64_t trial_index);

/// One uncapped synthetic-chain trial: hop 0 is the requester's own cache,
/// every further hop contributes one fresh cache. Returns the resolving hop.
std::uint32_t run_chain_trial(std::uint64_t h, std::uint64_t cache_size, CachePolicy policy,
                              ChainUncodedObjective uncoded_objective,
                              ChainCodedObjective coded_objective, Rng& rng);

/// Serial reference trial loop, kept as the ground truth for the parallel
/// kernel and for the benchmark.
std::vector<TrialResult> run_trials_serial(const World& world);

/// OpenMP trial loop. Per-trial seeds derive from (master_seed, index), and
/// results land in index order, so the output is identical to the serial
/// path for every thread count and schedule.
std::vector<TrialResult> run_trials_parallel(const World& world);

SimSummary summarize(const World& world, std::span<const TrialResult> results);

SimSummary run_experiment(const SimConfig& config);

/// One summary per (beta, policy), both policies sharing the master seed so
/// placement and request streams are paired across the comparison.
std::vector<SimSummary> sweep_beta(const SimConfig& config, std::span<const double> betas);

}  // namespace femtosim
