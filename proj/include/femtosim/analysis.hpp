#pragma once

#include <cstdint>
#include <vector>

namespace femtosim {

/// Harmonic number H_h by compensated summation.
double harmonic_number(std::uint64_t h);

/// Mean uniform draws from {1..h} until every value has appeared: h * H_h.
double coupon_collector_mean(std::uint64_t h);

/// Erdos-Borwein series sum 1/(2^i - 1), truncated when a term drops
/// below tol.
double erdos_borwein(double tol);

/// The same series truncated after h terms.
double erdos_borwein_truncated(std::uint64_t h);

/// Mean number of density-1/2 GF(2) vectors needed to span F_2^h:
/// h + sum_{i=1..h} 1/(2^i - 1).
double absorption_mean_closed(std::uint64_t h);

/// Phase-type representation of the rank Markov chain: transient states
/// i = 0..h-1 are the span dimension, T[i][i] = 2^i/2^h, T[i][i+1] its
/// complement, T0 = (I-T)e, U = (I-T)^{-1}.
struct AbsorptionModel {
  std::size_t h = 0;
  std::vector<double> T;   // h x h, row-major
  std::vector<double> T0;  // absorption column
  std::vector<double> U;   // fundamental matrix, h x h, row-major

  /// h must be in [1, 30] so every 2^i stays exactly representable.
  static AbsorptionModel build(std::size_t h);

  double t(std::size_t i, std::size_t j) const { return T[i * h + j]; }
  double u(std::size_t i, std::size_t j) const { return U[i * h + j]; }

  /// [1 0 ... 0] U e.
  double mean_absorption() const;
};

/// Mean absorption time through the matrix route; back-substitution on the
/// bidiagonal I - T, no general inversion. Rejects h > 30 (use the closed
/// form there; the two are analytically identical).
double absorption_mean_matrix(std::size_t h);

/// Unit-constant hop-count predictions: h * H_h / M for uncoded caching and
/// (h + gamma_h) / M for coded caching.
double ex_uncoded_theory(std::uint64_t h, double cache_size);
double ex_coded_theory(std::uint64_t h, double cache_size);

struct CapacityResult {
  double lambda = 0.0;
  bool trivial_regime = false;  // ex == 0: per-node capacity capped at W
};

/// Per-node capacity W / (n * ex * (C2 C1 s(n))^2) = W / (ex C2^2 C1^2 ln n).
CapacityResult capacity(double ex, double n, double bandwidth, double c1, double c2);

/// Total mean hops from the popular/tail split:
/// eps * sqrt(n / ln n) + (1 - eps) * ex_popular.
double ex_total(double eps, double n, double ex_popular);

struct ZipfCapacity {
  double lambda = 0.0;
  bool validity_warning = false;
};

/// Unit-constant Zipf capacity laws n^{beta - (alpha + 1/2)/s} / (ln n)^2
/// (uncoded) and the same over a single ln n factor (coded); their ratio is
/// exactly ln n.
ZipfCapacity zipf_capacity_uncoded(double n, double alpha, double beta, double s);
ZipfCapacity zipf_capacity_coded(double n, double alpha, double beta, double s);

/// One row of the emitted theory table.
struct TheoryPoint {
  std::uint64_t h = 0;
  double cache_size = 0.0;
  double beta = 0.0;
  double ex_uncoded = 0.0;
  double ex_coded = 0.0;
  double lambda_uncoded = 0.0;
  double lambda_coded = 0.0;
};

TheoryPoint theory_point(std::uint64_t h, double cache_size, double beta, double n,
                         double bandwidth, double c1, double c2);

}  // namespace femtosim
