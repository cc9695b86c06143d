#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <sstream>
#include <stdexcept>
#include <string>

#include "femtosim/output.hpp"
#include "femtosim/presets.hpp"

using namespace femtosim;

TEST_CASE("format_g17 round-trips doubles bit-exactly") {
  Rng rng(606);
  for (int i = 0; i < 2000; ++i) {
    double v;
    if (i % 3 == 0) {
      v = rng.next_double();
    } else if (i % 3 == 1) {
      v = (rng.next_double() - 0.5) * 1e12;
    } else {
      v = std::ldexp(rng.next_double(), static_cast<int>(rng.next_below(80)) - 40);
    }
    const std::string s = format_g17(v);
    CHECK(std::strtod(s.c_str(), nullptr) == v);
    CHECK(s.find(',') == std::string::npos);
  }
}

TEST_CASE("config hash is stable and key-sensitive") {
  const SimConfig base = preset("fig3").config;
  CHECK(config_hash(base) == config_hash(base));
  SimConfig other = base;
  other.beta = 0.31;
  CHECK(config_hash(base) != config_hash(other));
  other = base;
  other.master_seed += 1;
  CHECK(config_hash(base) != config_hash(other));
  other = base;
  other.policy = CachePolicy::Coded;
  CHECK(config_hash(base) != config_hash(other));
}

TEST_CASE("config JSON round trip") {
  SimConfig c = preset("fig3").config;
  c.epsilon = 0.015;
  c.relay_mode = RelayMode::AllInCell;
  c.popular_sizing = PopularSizing::Exact;
  c.chain_uncoded = ChainUncodedObjective::FirstHit;
  c.chain_coded = ChainCodedObjective::DecodeTarget;
  const auto j = config_to_json(c);
  const SimConfig back = config_from_json(j);
  CHECK(config_canonical(back) == config_canonical(c));

  nlohmann::json bad = j;
  bad["no_such_key"] = 1;
  CHECK_THROWS_AS(config_from_json(bad), std::invalid_argument);
}

TEST_CASE("overrides") {
  SimConfig c;
  apply_override(c, "n", "625");
  apply_override(c, "beta", "0.7");
  apply_override(c, "policy", "coded");
  apply_override(c, "chain_mode", "true");
  apply_override(c, "epsilon", "0.03");
  CHECK(c.n == 625);
  CHECK(c.beta == 0.7);
  CHECK(c.policy == CachePolicy::Coded);
  CHECK(c.chain_mode);
  CHECK(c.epsilon.has_value());
  CHECK_THROWS_AS(apply_override(c, "bogus", "1"), std::invalid_argument);
  CHECK_THROWS_AS(apply_override(c, "n", "abc"), std::invalid_argument);
  CHECK_THROWS_AS(apply_override(c, "policy", "mds"), std::invalid_argument);
}

TEST_CASE("summary CSV schema is identical across subcommand payloads") {
  SimConfig cfg;
  cfg.n = 60;
  cfg.trials = 20;
  const auto one = run_experiment(cfg);
  const std::vector<SimSummary> single{one};

  auto sweep_cfg = preset("smoke").config;
  sweep_cfg.trials = 20;
  const std::vector<double> betas{0.4, 0.6};
  const auto many = sweep_beta(sweep_cfg, betas);

  const auto header = [](const std::string& csv) {
    return csv.substr(0, csv.find('\n'));
  };
  const std::string a = summaries_to_csv(single);
  const std::string b = summaries_to_csv(many);
  CHECK(header(a) == header(b));
  CHECK(header(a).find("config_hash,policy,beta,mean_hops,ci95,lambda,served_by_self") == 0);

  // One header plus one line per row.
  const auto lines = [](const std::string& csv) {
    return std::count(csv.begin(), csv.end(), '\n');
  };
  CHECK(lines(a) == 2);
  CHECK(lines(b) == 5);
}

TEST_CASE("summary JSON carries the same fields") {
  SimConfig cfg;
  cfg.n = 60;
  cfg.trials = 20;
  const std::vector<SimSummary> rows{run_experiment(cfg)};
  const auto parsed = nlohmann::json::parse(summaries_to_json(rows));
  REQUIRE(parsed.is_array());
  REQUIRE(parsed.size() == 1);
  for (const char* key :
       {"config_hash", "policy", "beta", "mean_hops", "ci95", "lambda", "served_by_self",
        "served_by_relay", "served_by_helper", "trials", "seed"})
    CHECK(parsed[0].contains(key));
  CHECK(parsed[0]["trials"] == 20);
}

TEST_CASE("theory table emission") {
  const std::vector<TheoryPoint> rows{theory_point(523, 32.0, 0.5, 2500.0, 1.0, 1.0, 3.0)};
  const std::string csv = theory_to_csv(rows);
  CHECK(csv.find("h,M,beta,ex_uncoded,ex_coded,lambda_uncoded,lambda_coded\n") == 0);
  CHECK(csv.find("523,32,") != std::string::npos);

  const auto parsed = nlohmann::json::parse(theory_to_json(rows));
  CHECK(parsed[0]["ex_coded"].get<double>() == doctest::Approx(16.394).epsilon(1e-3));
}
