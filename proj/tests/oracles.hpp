// Test-side oracles, deliberately independent of the library's bit-packed
// elimination and closed forms: plain boolean Gaussian elimination, exhaustive
// subset XOR, and direct Markov-chain evaluations of the chain-mode means.
#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "femtosim/gf2.hpp"

namespace oracle {

using BoolVec = std::vector<std::uint8_t>;

inline BoolVec to_bool_vec(const femtosim::gf2::BitVector& v) {
  BoolVec out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v.test(i) ? 1 : 0;
  return out;
}

/// Rank by from-scratch row reduction over plain byte vectors.
inline std::size_t plain_rank(std::vector<BoolVec> rows) {
  if (rows.empty()) return 0;
  const std::size_t dim = rows.front().size();
  std::size_t rank = 0;
  for (std::size_t col = 0; col < dim && rank < rows.size(); ++col) {
    std::size_t pivot = rank;
    while (pivot < rows.size() && rows[pivot][col] == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[rank], rows[pivot]);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r != rank && rows[r][col]) {
        for (std::size_t c = 0; c < dim; ++c) rows[r][c] ^= rows[rank][c];
      }
    }
    ++rank;
  }
  return rank;
}

/// Membership by brute force over all 2^k subset XORs (k <= 20 or so).
inline bool exhaustive_span_contains(const std::vector<BoolVec>& vectors,
                                     const BoolVec& target) {
  const std::size_t k = vectors.size();
  const std::size_t dim = target.size();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
    BoolVec acc(dim, 0);
    for (std::size_t i = 0; i < k; ++i) {
      if ((mask >> i) & 1) {
        for (std::size_t c = 0; c < dim; ++c) acc[c] ^= vectors[i][c];
      }
    }
    if (acc == target) return true;
  }
  return false;
}

/// Expected caches (each = M distinct uniform picks from {1..h}) until every
/// content has appeared: absorption of the hypergeometric coverage chain.
inline double cover_all_mean_caches(std::uint64_t h, std::uint64_t M) {
  const auto lchoose = [](double n, double k) {
    return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
  };
  const double hd = static_cast<double>(h);
  const double md = static_cast<double>(M);
  const double denom = lchoose(hd, md);
  std::vector<double> expect(h + 1, 0.0);
  for (std::uint64_t c = h; c-- > 0;) {
    const double cd = static_cast<double>(c);
    double p_stay = 0.0;
    double acc = 1.0;
    const std::uint64_t t_max = std::min(M, h - c);
    for (std::uint64_t t = 0; t <= t_max; ++t) {
      const double td = static_cast<double>(t);
      if (md - td > cd) continue;  // cannot pick M - t already-covered items
      const double p = std::exp(lchoose(hd - cd, td) + lchoose(cd, md - td) - denom);
      if (t == 0)
        p_stay = p;
      else
        acc += p * expect[c + t];
    }
    expect[c] = acc / (1.0 - p_stay);
  }
  return expect[0];
}

/// P(fixed nonzero target in the span of k uniform vectors over F_2^h),
/// by walking the span-dimension chain.
inline double p_target_in_span(std::uint64_t h, std::uint64_t k) {
  const auto hd = static_cast<double>(h);
  std::vector<double> dist(h + 1, 0.0);
  dist[0] = 1.0;
  for (std::uint64_t step = 0; step < k; ++step) {
    std::vector<double> next(h + 1, 0.0);
    for (std::uint64_t d = 0; d <= h; ++d) {
      const double p = dist[d];
      if (p == 0.0) continue;
      const double stay = std::exp2(static_cast<double>(d) - hd);
      next[d] += p * stay;
      if (d < h) next[d + 1] += p * (1.0 - stay);
    }
    dist = std::move(next);
  }
  double p_in = 0.0;
  for (std::uint64_t d = 0; d <= h; ++d) {
    if (dist[d] == 0.0) continue;
    p_in += dist[d] * std::expm1(static_cast<double>(d) * std::log(2.0)) /
            std::expm1(hd * std::log(2.0));
  }
  return p_in;
}

/// Distribution walk of the span-dimension chain (stay probability 2^{d-h})
/// giving the expected resolving hop of the coded chain, for both stopping
/// rules. Each hop adds M fresh vectors.
struct CodedChainMeans {
  double decode_target = 0.0;
  double full_rank = 0.0;
};

inline CodedChainMeans coded_chain_means(std::uint64_t h, std::uint64_t M) {
  const auto hd = static_cast<double>(h);
  std::vector<double> dist(h + 1, 0.0);
  dist[0] = 1.0;
  CodedChainMeans out;
  for (std::uint64_t k = 1; k < 100 * (h + M); ++k) {
    std::vector<double> next(h + 1, 0.0);
    for (std::uint64_t d = 0; d <= h; ++d) {
      const double p = dist[d];
      if (p == 0.0) continue;
      const double stay = std::exp2(static_cast<double>(d) - hd);
      next[d] += p * stay;
      if (d < h) next[d + 1] += p * (1.0 - stay);
    }
    dist = std::move(next);
    if (k % M == 0) {
      // P(target still outside span) = sum_d P(dim=d) (2^h - 2^d)/(2^h - 1)
      double p_not = 0.0;
      for (std::uint64_t d = 0; d <= h; ++d) {
        if (dist[d] == 0.0) continue;
        p_not += dist[d] * -std::expm1((static_cast<double>(d) - hd) * std::log(2.0));
      }
      p_not /= -std::expm1(-hd * std::log(2.0));
      out.decode_target += p_not;
      out.full_rank += 1.0 - dist[h];
      if (1.0 - dist[h] < 1e-13) break;
    }
  }
  return out;
}

}  // namespace oracle
