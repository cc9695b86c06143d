#include "femtosim/zipf.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "femtosim/kahan.hpp"

namespace femtosim {

ZipfPopularity::ZipfPopularity(std::uint64_t m, double s) : m_(m), s_(s) {
  if (m == 0) throw std::invalid_argument("ZipfPopularity: m must be positive");
  if (!std::isfinite(s)) throw std::invalid_argument("ZipfPopularity: s must be finite");
  cum_.resize(m);
  KahanSum acc;
  for (std::uint64_t i = 1; i <= m; ++i) {
    acc.add(std::pow(static_cast<double>(i), -s));
    cum_[i - 1] = acc.value();
  }
  harmonic_ = acc.value();
}

double ZipfPopularity::pmf(std::uint64_t i) const {
  if (i < 1 || i > m_) throw std::out_of_range("ZipfPopularity::pmf: index out of range");
  return std::pow(static_cast<double>(i), -s_) / harmonic_;
}

double ZipfPopularity::head_mass(std::uint64_t h) const {
  if (h == 0) return 0.0;
  if (h > m_) throw std::out_of_range("ZipfPopularity::head_mass: h out of range");
  return cum_[h - 1] / harmonic_;
}

double ZipfPopularity::tail_mass(std::uint64_t h) const {
  if (h == 0) return 1.0;
  if (h > m_) throw std::out_of_range("ZipfPopularity::tail_mass: h out of range");
  return (harmonic_ - cum_[h - 1]) / harmonic_;
}

std::uint64_t ZipfPopularity::sample(Rng& rng) const {
  const double u = rng.next_double() * harmonic_;
  const auto it = std::upper_bound(cum_.begin(), cum_.end(), u);
  if (it == cum_.end()) return m_;
  return static_cast<std::uint64_t>(it - cum_.begin()) + 1;
}

PopularSet popular_set_size_exact(const ZipfPopularity& pop, double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0))
    throw std::invalid_argument("popular_set_size_exact: epsilon must be in (0,1)");
  // tail_mass is non-increasing in h, so the predicate is monotone; h = m
  // always satisfies it.
  std::uint64_t lo = 1, hi = pop.m();
  while (lo < hi) {
    const std::uint64_t mid = lo + (hi - lo) / 2;
    if (pop.tail_mass(mid) <= epsilon)
      hi = mid;
    else
      lo = mid + 1;
  }
  return PopularSet{lo, epsilon};
}

Asymptotic popular_set_size_asymptotic(double n, double alpha, double s) {
  Asymptotic out;
  out.value = std::pow(n, (alpha + 0.5) / s);
  out.validity_warning = !(s > 1.0) || !(alpha > 1.0 / (2.0 * (s - 1.0)));
  return out;
}

TailBound tail_bound(const ZipfPopularity& pop, std::uint64_t h) {
  if (!(pop.s() > 1.0)) throw std::invalid_argument("tail_bound: requires s > 1");
  if (h < 1 || h > pop.m()) throw std::out_of_range("tail_bound: h out of range");
  TailBound out;
  const double m = static_cast<double>(pop.m());
  const double zeta = riemann_zeta(pop.s());
  out.bound = 2.0 * m * std::pow(static_cast<double>(h), -pop.s()) / zeta;
  out.exact_tail = pop.tail_mass(h);
  // The bound replaces (m - h) / H_{m,s} by 2m / zeta(s), which is only an
  // upper bound when m is large enough for H_{m,s} to be near zeta(s).
  out.premise_holds = zeta * (m - static_cast<double>(h)) <= 2.0 * m * pop.harmonic();
  return out;
}

double riemann_zeta(double s) {
  if (!(s > 1.0)) throw std::invalid_argument("riemann_zeta: requires s > 1");
  constexpr int kCutoff = 64;
  KahanSum acc;
  for (int j = 1; j < kCutoff; ++j) acc.add(std::pow(static_cast<double>(j), -s));
  const double n = static_cast<double>(kCutoff);
  // Euler-Maclaurin tail from kCutoff with Bernoulli terms through B6.
  double tail = std::pow(n, 1.0 - s) / (s - 1.0) + 0.5 * std::pow(n, -s);
  tail += s / 12.0 * std::pow(n, -s - 1.0);
  tail -= s * (s + 1.0) * (s + 2.0) / 720.0 * std::pow(n, -s - 3.0);
  tail += s * (s + 1.0) * (s + 2.0) * (s + 3.0) * (s + 4.0) / 30240.0 * std::pow(n, -s - 5.0);
  return acc.value() + tail;
}

}  // namespace femtosim
