#include "femtosim/output.hpp"

#include <charconv>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace femtosim {

std::string format_g17(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

const char* policy_name(CachePolicy policy) {
  return policy == CachePolicy::Coded ? "coded" : "uncoded";
}

const char* relay_mode_name(RelayMode mode) {
  return mode == RelayMode::AllInCell ? "all-in-cell" : "single-relay";
}

namespace {

const char* sizing_name(PopularSizing sizing) {
  return sizing == PopularSizing::Exact ? "exact" : "asymptotic";
}

const char* chain_uncoded_name(ChainUncodedObjective o) {
  return o == ChainUncodedObjective::FirstHit ? "first-hit" : "cover-all";
}

const char* chain_coded_name(ChainCodedObjective o) {
  return o == ChainCodedObjective::DecodeTarget ? "decode-target" : "full-rank";
}

CachePolicy policy_from(std::string_view v) {
  if (v == "uncoded") return CachePolicy::Uncoded;
  if (v == "coded") return CachePolicy::Coded;
  throw std::invalid_argument("unknown policy: " + std::string(v));
}

RelayMode relay_mode_from(std::string_view v) {
  if (v == "single-relay") return RelayMode::SingleRelay;
  if (v == "all-in-cell") return RelayMode::AllInCell;
  throw std::invalid_argument("unknown relay_mode: " + std::string(v));
}

PopularSizing sizing_from(std::string_view v) {
  if (v == "asymptotic") return PopularSizing::Asymptotic;
  if (v == "exact") return PopularSizing::Exact;
  throw std::invalid_argument("unknown popular_sizing: " + std::string(v));
}

ChainUncodedObjective chain_uncoded_from(std::string_view v) {
  if (v == "cover-all") return ChainUncodedObjective::CoverAll;
  if (v == "first-hit") return ChainUncodedObjective::FirstHit;
  throw std::invalid_argument("unknown chain_uncoded_objective: " + std::string(v));
}

ChainCodedObjective chain_coded_from(std::string_view v) {
  if (v == "full-rank") return ChainCodedObjective::FullRank;
  if (v == "decode-target") return ChainCodedObjective::DecodeTarget;
  throw std::invalid_argument("unknown chain_coded_objective: " + std::string(v));
}

double parse_double(std::string_view v) {
  double out = 0.0;
  const auto* end = v.data() + v.size();
  const auto res = std::from_chars(v.data(), end, out);
  if (res.ec != std::errc{} || res.ptr != end)
    throw std::invalid_argument("malformed number: " + std::string(v));
  return out;
}

std::uint64_t parse_u64(std::string_view v) {
  std::uint64_t out = 0;
  const auto* end = v.data() + v.size();
  const auto res = std::from_chars(v.data(), end, out);
  if (res.ec != std::errc{} || res.ptr != end)
    throw std::invalid_argument("malformed integer: " + std::string(v));
  return out;
}

bool parse_bool(std::string_view v) {
  if (v == "true" || v == "1") return true;
  if (v == "false" || v == "0") return false;
  throw std::invalid_argument("malformed boolean: " + std::string(v));
}

}  // namespace

std::string config_canonical(const SimConfig& c) {
  std::ostringstream os;
  os << "n=" << c.n << ";alpha=" << format_g17(c.alpha) << ";beta=" << format_g17(c.beta)
     << ";s=" << format_g17(c.s) << ";c1=" << format_g17(c.c1) << ";c3=" << format_g17(c.c3)
     << ";c4=" << format_g17(c.c4) << ";delta=" << format_g17(c.delta)
     << ";bandwidth=" << format_g17(c.bandwidth)
     << ";epsilon=" << (c.epsilon ? format_g17(*c.epsilon) : "default")
     << ";policy=" << policy_name(c.policy) << ";relay_mode=" << relay_mode_name(c.relay_mode)
     << ";popular_sizing=" << sizing_name(c.popular_sizing) << ";trials=" << c.trials
     << ";master_seed=" << c.master_seed << ";chain_mode=" << (c.chain_mode ? "true" : "false")
     << ";chain_uncoded_objective=" << chain_uncoded_name(c.chain_uncoded)
     << ";chain_coded_objective=" << chain_coded_name(c.chain_coded);
  return os.str();
}

std::uint64_t config_hash(const SimConfig& config) {
  const std::string s = config_canonical(config);
  std::uint64_t hash = 0xCBF29CE484222325ULL;
  for (const unsigned char ch : s) {
    hash ^= ch;
    hash *= 0x100000001B3ULL;
  }
  return hash;
}

nlohmann::json config_to_json(const SimConfig& c) {
  nlohmann::json j{{"n", c.n},
                   {"alpha", c.alpha},
                   {"beta", c.beta},
                   {"s", c.s},
                   {"c1", c.c1},
                   {"c3", c.c3},
                   {"c4", c.c4},
                   {"delta", c.delta},
                   {"bandwidth", c.bandwidth},
                   {"policy", policy_name(c.policy)},
                   {"relay_mode", relay_mode_name(c.relay_mode)},
                   {"popular_sizing", sizing_name(c.popular_sizing)},
                   {"trials", c.trials},
                   {"master_seed", c.master_seed},
                   {"chain_mode", c.chain_mode},
                   {"chain_uncoded_objective", chain_uncoded_name(c.chain_uncoded)},
                   {"chain_coded_objective", chain_coded_name(c.chain_coded)},
                   {"threads", c.threads}};
  if (c.epsilon) j["epsilon"] = *c.epsilon;
  return j;
}

SimConfig config_from_json(const nlohmann::json& j) {
  SimConfig c;
  for (const auto& [key, value] : j.items()) {
    if (key == "n") c.n = value.get<std::uint64_t>();
    else if (key == "alpha") c.alpha = value.get<double>();
    else if (key == "beta") c.beta = value.get<double>();
    else if (key == "s") c.s = value.get<double>();
    else if (key == "c1") c.c1 = value.get<double>();
    else if (key == "c3") c.c3 = value.get<double>();
    else if (key == "c4") c.c4 = value.get<double>();
    else if (key == "delta") c.delta = value.get<double>();
    else if (key == "bandwidth") c.bandwidth = value.get<double>();
    else if (key == "epsilon") {
      if (!value.is_null()) c.epsilon = value.get<double>();
    } else if (key == "policy") c.policy = policy_from(value.get<std::string>());
    else if (key == "relay_mode") c.relay_mode = relay_mode_from(value.get<std::string>());
    else if (key == "popular_sizing") c.popular_sizing = sizing_from(value.get<std::string>());
    else if (key == "trials") c.trials = value.get<std::uint64_t>();
    else if (key == "master_seed") c.master_seed = value.get<std::uint64_t>();
    else if (key == "chain_mode") c.chain_mode = value.get<bool>();
    else if (key == "chain_uncoded_objective")
      c.chain_uncoded = chain_uncoded_from(value.get<std::string>());
    else if (key == "chain_coded_objective")
      c.chain_coded = chain_coded_from(value.get<std::string>());
    else if (key == "threads") c.threads = value.get<int>();
    else throw std::invalid_argument("unknown config key: " + key);
  }
  return c;
}

void apply_override(SimConfig& c, std::string_view key, std::string_view value) {
  if (key == "n") c.n = parse_u64(value);
  else if (key == "alpha") c.alpha = parse_double(value);
  else if (key == "beta") c.beta = parse_double(value);
  else if (key == "s") c.s = parse_double(value);
  else if (key == "c1") c.c1 = parse_double(value);
  else if (key == "c3") c.c3 = parse_double(value);
  else if (key == "c4") c.c4 = parse_double(value);
  else if (key == "delta") c.delta = parse_double(value);
  else if (key == "bandwidth") c.bandwidth = parse_double(value);
  else if (key == "epsilon") c.epsilon = parse_double(value);
  else if (key == "policy") c.policy = policy_from(value);
  else if (key == "relay_mode") c.relay_mode = relay_mode_from(value);
  else if (key == "popular_sizing") c.popular_sizing = sizing_from(value);
  else if (key == "trials") c.trials = parse_u64(value);
  else if (key == "master_seed") c.master_seed = parse_u64(value);
  else if (key == "chain_mode") c.chain_mode = parse_bool(value);
  else if (key == "chain_uncoded_objective") c.chain_uncoded = chain_uncoded_from(value);
  else if (key == "chain_coded_objective") c.chain_coded = chain_coded_from(value);
  else if (key == "threads") c.threads = static_cast<int>(parse_u64(value));
  else throw std::invalid_argument("unknown config key: " + std::string(key));
}

namespace {

constexpr const char* kSummaryHeader =
    "config_hash,policy,beta,mean_hops,ci95,lambda,served_by_self,served_by_relay,"
    "served_by_helper,trials,seed,n,h,h_exact,h_asymptotic,m,cache_rows,theory_ex,"
    "theory_lambda,chain_mode,occupancy_min,occupancy_mean,occupancy_max,empty_cells";

void append_summary_row(std::ostringstream& os, const SimSummary& r) {
  os << config_hash(r.config) << ',' << policy_name(r.config.policy) << ','
     << format_g17(r.config.beta) << ',' << format_g17(r.mean_hops) << ','
     << format_g17(r.ci95) << ',' << format_g17(r.lambda) << ',' << r.served_self << ','
     << r.served_relay << ',' << r.served_helper << ',' << r.config.trials << ','
     << r.config.master_seed << ',' << r.config.n << ',' << r.h << ',' << r.h_exact << ','
     << format_g17(r.h_asymptotic) << ',' << r.m << ',' << r.cache_rows << ','
     << format_g17(r.theory_ex) << ',' << format_g17(r.theory_lambda) << ','
     << (r.config.chain_mode ? "true" : "false") << ',' << r.occupancy.min << ','
     << format_g17(r.occupancy.mean) << ',' << r.occupancy.max << ','
     << r.occupancy.empty_cells << '\n';
}

nlohmann::json summary_to_json(const SimSummary& r) {
  return nlohmann::json{{"config_hash", config_hash(r.config)},
                        {"policy", policy_name(r.config.policy)},
                        {"beta", r.config.beta},
                        {"mean_hops", r.mean_hops},
                        {"ci95", r.ci95},
                        {"lambda", r.lambda},
                        {"served_by_self", r.served_self},
                        {"served_by_relay", r.served_relay},
                        {"served_by_helper", r.served_helper},
                        {"trials", r.config.trials},
                        {"seed", r.config.master_seed},
                        {"n", r.config.n},
                        {"h", r.h},
                        {"h_exact", r.h_exact},
                        {"h_asymptotic", r.h_asymptotic},
                        {"m", r.m},
                        {"cache_rows", r.cache_rows},
                        {"theory_ex", r.theory_ex},
                        {"theory_lambda", r.theory_lambda},
                        {"chain_mode", r.config.chain_mode},
                        {"occupancy_min", r.occupancy.min},
                        {"occupancy_mean", r.occupancy.mean},
                        {"occupancy_max", r.occupancy.max},
                        {"empty_cells", r.occupancy.empty_cells},
                        {"config", config_to_json(r.config)}};
}

}  // namespace

std::string summaries_to_csv(std::span<const SimSummary> rows) {
  std::ostringstream os;
  os << kSummaryHeader << '\n';
  for (const auto& r : rows) append_summary_row(os, r);
  return os.str();
}

std::string summaries_to_json(std::span<const SimSummary> rows) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : rows) arr.push_back(summary_to_json(r));
  return arr.dump(2) + "\n";
}

std::string theory_to_csv(std::span<const TheoryPoint> rows) {
  std::ostringstream os;
  os << "h,M,beta,ex_uncoded,ex_coded,lambda_uncoded,lambda_coded\n";
  for (const auto& r : rows) {
    os << r.h << ',' << format_g17(r.cache_size) << ',' << format_g17(r.beta) << ','
       << format_g17(r.ex_uncoded) << ',' << format_g17(r.ex_coded) << ','
       << format_g17(r.lambda_uncoded) << ',' << format_g17(r.lambda_coded) << '\n';
  }
  return os.str();
}

std::string theory_to_json(std::span<const TheoryPoint> rows) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : rows) {
    arr.push_back(nlohmann::json{{"h", r.h},
                                 {"M", r.cache_size},
                                 {"beta", r.beta},
                                 {"ex_uncoded", r.ex_uncoded},
                                 {"ex_coded", r.ex_coded},
                                 {"lambda_uncoded", r.lambda_uncoded},
                                 {"lambda_coded", r.lambda_coded}});
  }
  return arr.dump(2) + "\n";
}

}  // namespace femtosim
