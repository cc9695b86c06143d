#include "femtosim/simulator.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "femtosim/analysis.hpp"

namespace femtosim {

std::uint64_t SimConfig::content_count() const {
  const double m = std::floor(c3 * std::pow(static_cast<double>(n), alpha));
  return m < 1.0 ? 1 : static_cast<std::uint64_t>(m);
}

std::uint64_t SimConfig::cache_size() const {
  const double m = std::floor(c4 * std::pow(static_cast<double>(n), beta));
  return m < 1.0 ? 1 : static_cast<std::uint64_t>(m);
}

double SimConfig::effective_epsilon() const {
  return epsilon.value_or(1.0 / std::sqrt(static_cast<double>(n)));
}

double SimConfig::tdma_c2() const { return std::ceil((2.0 + delta) / c1); }

void SimConfig::validate() const {
  if (n < 2) throw std::invalid_argument("SimConfig: n must be at least 2");
  if (trials < 1) throw std::invalid_argument("SimConfig: trials must be at least 1");
  if (!(s > 0.0)) throw std::invalid_argument("SimConfig: s must be positive");
  if (!(c1 > 0.0) || !(c3 > 0.0) || !(c4 > 0.0))
    throw std::invalid_argument("SimConfig: C1, C3, C4 must be positive");
  if (delta < 0.0) throw std::invalid_argument("SimConfig: delta must be non-negative");
  if (!(bandwidth > 0.0)) throw std::invalid_argument("SimConfig: bandwidth must be positive");
  const double eps = effective_epsilon();
  if (!(eps > 0.0 && eps < 1.0))
    throw std::invalid_argument("SimConfig: epsilon must be in (0,1)");
  if (threads < 0) throw std::invalid_argument("SimConfig: threads must be non-negative");
}

World World::build(const SimConfig& config) {
  config.validate();
  const std::uint64_t m = config.content_count();
  ZipfPopularity zipf(m, config.s);

  const double eps = config.effective_epsilon();
  const std::uint64_t h_exact = popular_set_size_exact(zipf, eps).h;
  const double h_asym =
      popular_set_size_asymptotic(static_cast<double>(config.n), config.alpha, config.s).value;
  std::uint64_t h = config.popular_sizing == PopularSizing::Exact
                        ? h_exact
                        : static_cast<std::uint64_t>(std::llround(h_asym));
  h = std::clamp<std::uint64_t>(h, 1, m);

  World world{config, h, h_exact, h_asym, std::move(zipf), {}, std::nullopt, {}, {}};
  if (config.chain_mode) return world;

  Rng placement_rng(derive_seed(config.master_seed, stream::placement));
  world.placement = place_uniform(config.n, placement_rng);
  world.grid.emplace(world.placement, config.c1);

  const auto cache_rows = static_cast<std::uint32_t>(config.cache_size());
  const auto dim = static_cast<std::uint32_t>(h);
  if (config.policy == CachePolicy::Uncoded) {
    world.uncoded_caches.resize(config.n);
#pragma omp parallel for schedule(static)
    for (std::int64_t ut = 0; ut < static_cast<std::int64_t>(config.n); ++ut) {
      Rng rng(derive_seed(config.master_seed, stream::cache + static_cast<std::uint64_t>(ut)));
      world.uncoded_caches[ut] = place_uncoded(dim, cache_rows, rng);
    }
  } else {
    world.coded_caches.reserve(config.n);
    for (std::uint64_t ut = 0; ut < config.n; ++ut) {
      Rng rng(derive_seed(config.master_seed, stream::cache + ut));
      world.coded_caches.emplace_back(dim, cache_rows, rng);
    }
  }
  return world;
}

namespace {

std::uint32_t helper_hops(const RoutePath& path) {
  // Helper service is a transmission even from inside its own cell.
  return static_cast<std::uint32_t>(std::max<std::size_t>(path.hop_count(), 1));
}

TrialResult run_geometric_trial(const World& world, Rng& rng) {
  const Grid& grid = *world.grid;
  const SimConfig& cfg = world.config;
  const std::uint64_t requester = rng.next_below(cfg.n);
  const std::uint64_t content = world.zipf.sample(rng);

  TrialResult result;
  result.requested = content;

  const Cell origin = grid.cell_of(world.placement.positions[requester]);
  const RoutePath path = route(grid, origin, grid.helper_cell());

  if (content > world.h) {
    // Tail contents are never cached; the helper serves over the full route.
    result.popular = false;
    result.decodable_on_path = false;
    result.served_by = ServedBy::Helper;
    result.hops = helper_hops(path);
    return result;
  }

  const auto r32 = static_cast<std::uint32_t>(content);
  const bool coded = cfg.policy == CachePolicy::Coded;

  std::optional<gf2::SpanTracker> tracker;
  std::optional<gf2::BitVector> target;
  if (coded) {
    tracker.emplace(world.h);
    target.emplace(gf2::BitVector::unit(world.h, content - 1));
  }

  const auto consult = [&](std::uint64_t ut) {
    if (coded) {
      coded_contribute(world.coded_caches[ut], *tracker);
      return tracker->contains(*target);
    }
    return world.uncoded_caches[ut].contains(r32);
  };

  if (consult(requester)) {
    result.hops = 0;
    result.served_by = ServedBy::Self;
    return result;
  }

  const std::size_t total_hops = path.hop_count();
  for (std::size_t p = 1; p < total_hops; ++p) {
    const auto members = grid.members(path.cells[p]);
    if (members.empty()) continue;  // nothing to consult, walk on
    bool resolved = false;
    if (cfg.relay_mode == RelayMode::SingleRelay) {
      resolved = consult(members[rng.next_below(members.size())]);
    } else {
      for (const auto ut : members) {
        if (consult(ut)) {
          resolved = true;
          break;
        }
      }
    }
    if (resolved) {
      result.hops = static_cast<std::uint32_t>(p);
      result.served_by = ServedBy::Relay;
      return result;
    }
  }

  // Final stop is the helper's cell; the helper always resolves there.
  result.served_by = ServedBy::Helper;
  result.decodable_on_path = false;
  result.hops = helper_hops(path);
  return result;
}

constexpr std::uint32_t kChainGuard = 1'000'000;

[[noreturn]] void chain_guard_overflow() {
  throw std::runtime_error("run_chain_trial: no resolution within 1e6 hops");
}

std::uint32_t chain_uncoded(std::uint64_t h, std::uint64_t cache_size,
                            ChainUncodedObjective objective, Rng& rng) {
  const auto dim = static_cast<std::uint32_t>(h);
  const auto rows = static_cast<std::uint32_t>(cache_size);
  if (objective == ChainUncodedObjective::FirstHit) {
    const auto target = static_cast<std::uint32_t>(rng.next_below(h)) + 1;
    for (std::uint32_t hop = 0; hop <= kChainGuard; ++hop)
      if (place_uncoded(dim, rows, rng).contains(target)) return hop;
    chain_guard_overflow();
  }
  std::vector<std::uint8_t> seen(h + 1, 0);
  std::uint64_t covered = 0;
  for (std::uint32_t hop = 0; hop <= kChainGuard; ++hop) {
    for (const auto idx : place_uncoded(dim, rows, rng).contents)
      if (!seen[idx]) {
        seen[idx] = 1;
        ++covered;
      }
    if (covered == h) return hop;
  }
  chain_guard_overflow();
}

std::uint32_t chain_coded(std::uint64_t h, std::uint64_t cache_size,
                          ChainCodedObjective objective, Rng& rng) {
  const auto dim = static_cast<std::uint32_t>(h);
  const auto rows = static_cast<std::uint32_t>(cache_size);
  gf2::SpanTracker tracker(h);
  const bool want_full = objective == ChainCodedObjective::FullRank;
  std::optional<gf2::BitVector> target;
  if (!want_full) target = gf2::BitVector::unit(h, rng.next_below(h));
  for (std::uint32_t hop = 0; hop <= kChainGuard; ++hop) {
    const CodedCache cache(dim, rows, rng);
    coded_contribute(cache, tracker);
    if (want_full ? tracker.full_rank() : tracker.contains(*target)) return hop;
  }
  chain_guard_overflow();
}

TrialResult run_chain_trial_result(const World& world, Rng& rng) {
  const SimConfig& cfg = world.config;
  const std::uint32_t hops = run_chain_trial(world.h, cfg.cache_size(), cfg.policy,
                                             cfg.chain_uncoded, cfg.chain_coded, rng);
  TrialResult result;
  result.hops = hops;
  result.served_by = hops == 0 ? ServedBy::Self : ServedBy::Relay;
  return result;
}

}  // namespace

TrialResult run_trial(const World& world, std::uint64_t trial_index) {
  Rng rng(derive_seed(world.config.master_seed, stream::trial + trial_index));
  return world.config.chain_mode ? run_chain_trial_result(world, rng)
                                 : run_geometric_trial(world, rng);
}

std::uint32_t run_chain_trial(std::uint64_t h, std::uint64_t cache_size, CachePolicy policy,
                              ChainUncodedObjective uncoded_objective,
                              ChainCodedObjective coded_objective, Rng& rng) {
  if (h == 0 || cache_size == 0)
    throw std::invalid_argument("run_chain_trial: h and cache size must be positive");
  return policy == CachePolicy::Uncoded
             ? chain_uncoded(h, cache_size, uncoded_objective, rng)
             : chain_coded(h, cache_size, coded_objective, rng);
}

std::vector<TrialResult> run_trials_serial(const World& world) {
  std::vector<TrialResult> results(world.config.trials);
  for (std::uint64_t t = 0; t < world.config.trials; ++t) results[t] = run_trial(world, t);
  return results;
}

std::vector<TrialResult> run_trials_parallel(const World& world) {
  std::vector<TrialResult> results(world.config.trials);
  const auto count = static_cast<std::int64_t>(world.config.trials);
  const int threads = world.config.threads > 0 ? world.config.threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 16) num_threads(threads)
  for (std::int64_t t = 0; t < count; ++t)
    results[t] = run_trial(world, static_cast<std::uint64_t>(t));
  return results;
}

SimSummary summarize(const World& world, std::span<const TrialResult> results) {
  const SimConfig& cfg = world.config;
  SimSummary s;
  s.config = cfg;
  s.h = world.h;
  s.h_exact = world.h_exact;
  s.h_asymptotic = world.h_asymptotic;
  s.m = world.zipf.m();
  s.cache_rows = cfg.cache_size();

  // Hop counts are integers, so the moments accumulate exactly; the mean is
  // bit-identical no matter how the trials were scheduled.
  std::uint64_t sum = 0;
  unsigned __int128 sumsq = 0;
  for (const auto& r : results) {
    sum += r.hops;
    sumsq += static_cast<unsigned __int128>(r.hops) * r.hops;
    switch (r.served_by) {
      case ServedBy::Self: ++s.served_self; break;
      case ServedBy::Relay: ++s.served_relay; break;
      case ServedBy::Helper: ++s.served_helper; break;
    }
  }
  const auto count = static_cast<double>(results.size());
  s.mean_hops = static_cast<double>(sum) / count;
  if (results.size() > 1) {
    const double sq = static_cast<double>(sumsq);
    const double variance =
        std::max(0.0, (sq - count * s.mean_hops * s.mean_hops) / (count - 1.0));
    s.ci95 = 1.96 * std::sqrt(variance / count);
  }

  const auto cap = capacity(s.mean_hops, static_cast<double>(cfg.n), cfg.bandwidth, cfg.c1,
                            cfg.tdma_c2());
  s.lambda = cap.lambda;
  s.trivial_regime = cap.trivial_regime;

  const double rows = static_cast<double>(s.cache_rows);
  s.theory_ex = cfg.policy == CachePolicy::Coded ? ex_coded_theory(world.h, rows)
                                                 : ex_uncoded_theory(world.h, rows);
  s.theory_lambda =
      capacity(s.theory_ex, static_cast<double>(cfg.n), cfg.bandwidth, cfg.c1, cfg.tdma_c2())
          .lambda;
  if (world.grid) s.occupancy = world.grid->occupancy();
  return s;
}

SimSummary run_experiment(const SimConfig& config) {
  const World world = World::build(config);
  const auto results =
      config.threads == 1 ? run_trials_serial(world) : run_trials_parallel(world);
  return summarize(world, results);
}

std::vector<SimSummary> sweep_beta(const SimConfig& config, std::span<const double> betas) {
  if (betas.empty()) throw std::invalid_argument("sweep_beta: empty beta list");
  std::vector<SimSummary> rows;
  rows.reserve(betas.size() * 2);
  for (const double beta : betas) {
    for (const auto policy : {CachePolicy::Uncoded, CachePolicy::Coded}) {
      SimConfig c = config;
      c.beta = beta;
      c.policy = policy;
      rows.push_back(run_experiment(c));
    }
  }
  return rows;
}

}  // namespace femtosim
