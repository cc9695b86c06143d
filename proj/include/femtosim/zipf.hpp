#pragma once

#include <cstdint>
#include <vector>

#include "femtosim/rng.hpp"

namespace femtosim {

/// Zipf(s) popularity over 1-based content indices {1, ..., m}:
/// P[r = i] = i^{-s} / H_{m,s}. The full partial-sum table is precomputed,
/// so sampling is an exact inverse-CDF lookup.
class ZipfPopularity {
public:
  ZipfPopularity(std::uint64_t m, double s);

  std::uint64_t m() const { return m_; }
  double s() const { return s_; }
  /// Generalized harmonic number H_{m,s}.
  double harmonic() const { return harmonic_; }

  double pmf(std::uint64_t i) const;
  /// P[r <= h].
  double head_mass(std::uint64_t h) const;
  /// P[r > h].
  double tail_mass(std::uint64_t h) const;

  std::uint64_t sample(Rng& rng) const;

private:
  std::uint64_t m_;
  double s_;
  double harmonic_;
  std::vector<double> cum_;  // unnormalized prefix sums of i^{-s}
};

struct PopularSet {
  std::uint64_t h = 0;
  double epsilon = 0.0;
};

/// Smallest h with tail mass P[r > h] <= epsilon (exact tail-mass scan).
PopularSet popular_set_size_exact(const ZipfPopularity& pop, double epsilon);

struct Asymptotic {
  double value = 0.0;
  bool validity_warning = false;
};

/// Unit-constant asymptotic size n^{(alpha + 1/2)/s}. Flags the result when
/// s <= 1 or alpha <= 1/(2(s-1)), the regime where the formula is not valid.
Asymptotic popular_set_size_asymptotic(double n, double alpha, double s);

struct TailBound {
  double bound = 0.0;       // 2 m h^{-s} / zeta(s)
  double exact_tail = 0.0;  // true partial-sum tail
  bool premise_holds = false;
};

TailBound tail_bound(const ZipfPopularity& pop, std::uint64_t h);

/// Riemann zeta for s > 1, Euler-Maclaurin tail correction, |err| < 1e-10.
double riemann_zeta(double s);

}  // namespace femtosim
