// femtosim: Monte-Carlo simulator and analytical toolkit for
// femtocache-assisted multihop networks with decentralized uncoded and
// GF(2)-coded cache placement.

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <omp.h>

#include <CLI11.hpp>
#include <json.hpp>

#include "femtosim/analysis.hpp"
#include "femtosim/output.hpp"
#include "femtosim/presets.hpp"
#include "femtosim/simulator.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitValidation = 2;
constexpr int kExitIo = 3;

struct CommonOptions {
  std::string config_path;
  std::string preset_name;
  std::vector<std::string> overrides;
  std::string out_path;
  std::string format = "csv";
  std::optional<std::uint64_t> seed;
};

void add_common(CLI::App* cmd, CommonOptions& opt) {
  cmd->add_option("--config", opt.config_path, "JSON config file (flat object of config keys)");
  cmd->add_option("--preset", opt.preset_name, "named preset: fig3 | smoke");
  cmd->add_option("--set", opt.overrides, "key=value override, wins over config file")
      ->take_all();
  cmd->add_option("--out", opt.out_path, "output file (default: stdout)");
  cmd->add_option("--format", opt.format, "csv | json")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--seed", opt.seed, "master seed override");
}

femtosim::Preset resolve_preset(const CommonOptions& opt) {
  femtosim::Preset p;
  p.sweep_betas = {0.3, 0.4, 0.5, 0.6, 0.7, 0.8};
  if (!opt.preset_name.empty()) p = femtosim::preset(opt.preset_name);
  if (!opt.config_path.empty()) {
    std::ifstream in(opt.config_path);
    if (!in) throw std::ios_base::failure("cannot read config file: " + opt.config_path);
    nlohmann::json j;
    in >> j;
    p.config = femtosim::config_from_json(j);
  }
  for (const auto& kv : opt.overrides) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("override must be key=value: " + kv);
    femtosim::apply_override(p.config, std::string_view(kv).substr(0, eq),
                             std::string_view(kv).substr(eq + 1));
  }
  if (opt.seed) p.config.master_seed = *opt.seed;
  return p;
}

// Output is assembled fully in memory first; a failed run never leaves a
// partial file behind.
void emit(const CommonOptions& opt, const std::string& content) {
  if (opt.out_path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream out(opt.out_path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::ios_base::failure("cannot open output file: " + opt.out_path);
  out << content;
  if (!out) throw std::ios_base::failure("failed writing output file: " + opt.out_path);
}

int run_simulate(const CommonOptions& opt) {
  const auto preset = resolve_preset(opt);
  const auto summary = femtosim::run_experiment(preset.config);
  const std::vector<femtosim::SimSummary> rows{summary};
  emit(opt, opt.format == "json" ? femtosim::summaries_to_json(rows)
                                 : femtosim::summaries_to_csv(rows));
  return kExitOk;
}

int run_sweep(const CommonOptions& opt, std::vector<double> betas) {
  auto preset = resolve_preset(opt);
  if (betas.empty()) betas = preset.sweep_betas;
  const auto rows = femtosim::sweep_beta(preset.config, betas);
  emit(opt, opt.format == "json" ? femtosim::summaries_to_json(rows)
                                 : femtosim::summaries_to_csv(rows));
  return kExitOk;
}

int run_theory(const CommonOptions& opt, std::optional<std::uint64_t> h_opt,
               std::optional<double> m_opt, std::vector<double> betas) {
  const auto preset = resolve_preset(opt);
  const auto& cfg = preset.config;
  std::vector<femtosim::TheoryPoint> rows;
  if (h_opt) {
    const double cache = m_opt.value_or(static_cast<double>(cfg.cache_size()));
    rows.push_back(femtosim::theory_point(*h_opt, cache, cfg.beta,
                                          static_cast<double>(cfg.n), cfg.bandwidth, cfg.c1,
                                          cfg.tdma_c2()));
  } else {
    if (betas.empty()) betas = preset.sweep_betas;
    const auto world_h = femtosim::World::build(cfg).h;
    for (const double beta : betas) {
      femtosim::SimConfig c = cfg;
      c.beta = beta;
      rows.push_back(femtosim::theory_point(world_h, static_cast<double>(c.cache_size()), beta,
                                            static_cast<double>(c.n), c.bandwidth, c.c1,
                                            c.tdma_c2()));
    }
  }
  emit(opt, opt.format == "json" ? femtosim::theory_to_json(rows)
                                 : femtosim::theory_to_csv(rows));
  return kExitOk;
}

struct ValidationCheck {
  std::string name;
  double measured;
  double expected;
  double tolerance;  // absolute
  bool pass;
};

// Oracle cross-checks: the matrix and closed-form absorption means against
// each other, and the Monte-Carlo chains against both closed forms.
int run_validate(const CommonOptions& opt, std::uint64_t trials) {
  using namespace femtosim;
  auto preset = resolve_preset(opt);
  const std::uint64_t seed = preset.config.master_seed;
  std::vector<ValidationCheck> checks;

  double worst = 0.0;
  for (std::size_t h = 1; h <= 20; ++h)
    worst = std::max(worst, std::abs(absorption_mean_matrix(h) - absorption_mean_closed(h)));
  checks.push_back({"absorption matrix vs closed form, h=1..20", worst, 0.0, 1e-9, worst <= 1e-9});

  const auto count = static_cast<std::int64_t>(trials);
  {
    std::uint64_t total = 0;
#pragma omp parallel for schedule(dynamic, 8) reduction(+ : total)
    for (std::int64_t t = 0; t < count; ++t) {
      Rng rng(derive_seed(seed, 100 + (static_cast<std::uint64_t>(t) << 8)));
      gf2::SpanTracker tracker(523);
      while (!tracker.full_rank()) tracker.insert(gf2::BitVector::random(523, rng));
      total += tracker.inserted_count();
    }
    const double mean = static_cast<double>(total) / static_cast<double>(trials);
    const double expected = absorption_mean_closed(523);
    checks.push_back({"mean vectors to span F_2^523", mean, expected, 0.2,
                      std::abs(mean - expected) <= 0.2});
  }

  {
    const std::int64_t collect_count = count * 4;  // draws are cheap
    std::uint64_t total = 0;
#pragma omp parallel for schedule(static) reduction(+ : total)
    for (std::int64_t t = 0; t < collect_count; ++t) {
      Rng rng(derive_seed(seed, 101 + (static_cast<std::uint64_t>(t) << 8)));
      std::vector<std::uint8_t> seen(524, 0);
      std::uint64_t covered = 0;
      while (covered < 523) {
        const auto idx = rng.next_below(523) + 1;
        ++total;
        if (!seen[idx]) {
          seen[idx] = 1;
          ++covered;
        }
      }
    }
    const double mean = static_cast<double>(total) / static_cast<double>(collect_count);
    const double expected = coupon_collector_mean(523);
    checks.push_back({"mean draws to collect 523 contents", mean, expected, 0.01 * expected,
                      std::abs(mean - expected) <= 0.01 * expected});
  }

  {
    std::uint64_t total = 0;
#pragma omp parallel for schedule(dynamic, 8) reduction(+ : total)
    for (std::int64_t t = 0; t < count; ++t) {
      Rng rng(derive_seed(seed, 102 + (static_cast<std::uint64_t>(t) << 8)));
      total += run_chain_trial(523, 32, CachePolicy::Coded, ChainUncodedObjective::CoverAll,
                               ChainCodedObjective::DecodeTarget, rng);
    }
    const double mean = static_cast<double>(total) / static_cast<double>(trials);
    const double expected = ex_coded_theory(523, 32.0);
    checks.push_back({"chain decode hop, h=523 M=32 vs (h+gamma)/M", mean, expected,
                      0.05 * expected, std::abs(mean - expected) <= 0.05 * expected});
  }

  std::ostringstream os;
  bool all_pass = true;
  for (const auto& c : checks) {
    all_pass = all_pass && c.pass;
    os << (c.pass ? "PASS" : "FAIL") << "  " << c.name << ": measured "
       << format_g17(c.measured) << ", expected " << format_g17(c.expected) << " +- "
       << format_g17(c.tolerance) << "\n";
  }
  emit(opt, os.str());
  return all_pass ? kExitOk : kExitValidation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"femtocache multihop caching simulator"};
  app.require_subcommand(1);

  CommonOptions sim_opt, sweep_opt, theory_opt, val_opt;
  std::vector<double> sweep_betas, theory_betas;
  std::optional<std::uint64_t> theory_h;
  std::optional<double> theory_m;
  std::uint64_t validate_trials = 2000;

  auto* sim = app.add_subcommand("simulate", "run one experiment");
  add_common(sim, sim_opt);

  auto* sweep = app.add_subcommand("sweep", "run the cache-size sweep over beta");
  add_common(sweep, sweep_opt);
  sweep->add_option("--betas", sweep_betas, "beta grid (default from preset)")->take_all();

  auto* theory = app.add_subcommand("theory", "emit closed-form hop/capacity tables");
  theory->set_help_flag("--help", "print help");  // frees -h for the option below
  add_common(theory, theory_opt);
  theory->add_option("--h", theory_h, "popular-set size for a single row");
  theory->add_option("--M", theory_m, "cache size for a single row");
  theory->add_option("--betas", theory_betas, "beta grid (default from preset)")->take_all();

  auto* validate = app.add_subcommand("validate", "run the oracle cross-check suite");
  add_common(validate, val_opt);
  validate->add_option("--trials", validate_trials, "Monte-Carlo trials per check");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (sim->parsed()) return run_simulate(sim_opt);
    if (sweep->parsed()) return run_sweep(sweep_opt, sweep_betas);
    if (theory->parsed()) return run_theory(theory_opt, theory_h, theory_m, theory_betas);
    if (validate->parsed()) return run_validate(val_opt, validate_trials);
  } catch (const std::ios_base::failure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
