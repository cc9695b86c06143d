#include "femtosim/analysis.hpp"

#include <cmath>
#include <stdexcept>

#include "femtosim/kahan.hpp"

namespace femtosim {

double harmonic_number(std::uint64_t h) {
  KahanSum acc;
  // Smallest terms first keeps the compensated sum near machine precision.
  for (std::uint64_t i = h; i >= 1; --i) acc.add(1.0 / static_cast<double>(i));
  return acc.value();
}

double coupon_collector_mean(std::uint64_t h) {
  if (h == 0) throw std::invalid_argument("coupon_collector_mean: h must be positive");
  return static_cast<double>(h) * harmonic_number(h);
}

double erdos_borwein(double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("erdos_borwein: tol must be positive");
  KahanSum acc;
  for (int i = 1;; ++i) {
    const double term = 1.0 / (std::exp2(static_cast<double>(i)) - 1.0);
    if (!(term >= tol)) break;
    acc.add(term);
  }
  return acc.value();
}

double erdos_borwein_truncated(std::uint64_t h) {
  KahanSum acc;
  for (std::uint64_t i = 1; i <= h; ++i) {
    const double term = 1.0 / (std::exp2(static_cast<double>(i)) - 1.0);
    if (term == 0.0) break;
    acc.add(term);
  }
  return acc.value();
}

double absorption_mean_closed(std::uint64_t h) {
  if (h == 0) throw std::invalid_argument("absorption_mean_closed: h must be positive");
  return static_cast<double>(h) + erdos_borwein_truncated(h);
}

AbsorptionModel AbsorptionModel::build(std::size_t h) {
  if (h == 0) throw std::invalid_argument("AbsorptionModel: h must be positive");
  if (h > 30)
    throw std::invalid_argument(
        "AbsorptionModel: h > 30 would lose exact powers of two; use "
        "absorption_mean_closed instead");
  AbsorptionModel model;
  model.h = h;
  model.T.assign(h * h, 0.0);
  model.T0.assign(h, 0.0);
  model.U.assign(h * h, 0.0);

  for (std::size_t i = 0; i < h; ++i) {
    const double stay = std::exp2(static_cast<double>(i) - static_cast<double>(h));
    model.T[i * h + i] = stay;
    if (i + 1 < h) model.T[i * h + i + 1] = 1.0 - stay;
  }
  for (std::size_t i = 0; i < h; ++i) {
    KahanSum row;
    for (std::size_t j = 0; j < h; ++j) row.add(model.T[i * h + j]);
    model.T0[i] = 1.0 - row.value();
  }

  // Back-substitution on the upper-bidiagonal I - T, whose row i is
  // [d_i, -d_i] with d_i = 1 - 2^{i-h}: U[i][j] = U[i+1][j] + delta_ij / d_i.
  for (std::size_t i = h; i-- > 0;) {
    const double d = 1.0 - std::exp2(static_cast<double>(i) - static_cast<double>(h));
    for (std::size_t j = 0; j < h; ++j) {
      double v = (i + 1 < h) ? model.U[(i + 1) * h + j] : 0.0;
      if (i == j) v += 1.0 / d;
      model.U[i * h + j] = v;
    }
  }
  return model;
}

double AbsorptionModel::mean_absorption() const {
  KahanSum acc;
  for (std::size_t j = 0; j < h; ++j) acc.add(U[j]);
  return acc.value();
}

double absorption_mean_matrix(std::size_t h) {
  return AbsorptionModel::build(h).mean_absorption();
}

double ex_uncoded_theory(std::uint64_t h, double cache_size) {
  if (h == 0 || !(cache_size >= 1.0))
    throw std::invalid_argument("ex_uncoded_theory: need h >= 1 and M >= 1");
  return coupon_collector_mean(h) / cache_size;
}

double ex_coded_theory(std::uint64_t h, double cache_size) {
  if (h == 0 || !(cache_size >= 1.0))
    throw std::invalid_argument("ex_coded_theory: need h >= 1 and M >= 1");
  return absorption_mean_closed(h) / cache_size;
}

CapacityResult capacity(double ex, double n, double bandwidth, double c1, double c2) {
  if (!(n >= 2.0)) throw std::invalid_argument("capacity: n must be at least 2");
  if (ex < 0.0) throw std::invalid_argument("capacity: ex must be non-negative");
  CapacityResult out;
  if (ex == 0.0) {
    // Every request is served from the requester's own cache; the per-node
    // rate is capped by the bandwidth alone.
    out.lambda = bandwidth;
    out.trivial_regime = true;
    return out;
  }
  out.lambda = bandwidth / (ex * c2 * c2 * c1 * c1 * std::log(n));
  return out;
}

double ex_total(double eps, double n, double ex_popular) {
  if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("ex_total: eps must be in (0,1)");
  return eps * std::sqrt(n / std::log(n)) + (1.0 - eps) * ex_popular;
}

namespace {

ZipfCapacity zipf_capacity(double n, double alpha, double beta, double s, bool coded) {
  ZipfCapacity out;
  out.validity_warning = !(s > 1.0) || !(alpha > 1.0 / (2.0 * (s - 1.0)));
  const double lnn = std::log(n);
  const double coded_value = std::pow(n, beta - (alpha + 0.5) / s) / lnn;
  out.lambda = coded ? coded_value : coded_value / lnn;
  return out;
}

}  // namespace

ZipfCapacity zipf_capacity_uncoded(double n, double alpha, double beta, double s) {
  return zipf_capacity(n, alpha, beta, s, false);
}

ZipfCapacity zipf_capacity_coded(double n, double alpha, double beta, double s) {
  return zipf_capacity(n, alpha, beta, s, true);
}

TheoryPoint theory_point(std::uint64_t h, double cache_size, double beta, double n,
                         double bandwidth, double c1, double c2) {
  TheoryPoint p;
  p.h = h;
  p.cache_size = cache_size;
  p.beta = beta;
  p.ex_uncoded = ex_uncoded_theory(h, cache_size);
  p.ex_coded = ex_coded_theory(h, cache_size);
  p.lambda_uncoded = capacity(p.ex_uncoded, n, bandwidth, c1, c2).lambda;
  p.lambda_coded = capacity(p.ex_coded, n, bandwidth, c1, c2).lambda;
  return p;
}

}  // namespace femtosim
