#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "femtosim/gf2.hpp"
#include "femtosim/rng.hpp"

namespace femtosim {

enum class CachePolicy { Uncoded, Coded };

/// min(M, h) distinct content indices drawn uniformly from {1, ..., h}.
struct UncodedCache {
  std::vector<std::uint32_t> contents;  // sorted ascending

  bool contains(std::uint32_t r) const;
};

UncodedCache place_uncoded(std::uint32_t h, std::uint32_t M, Rng& rng);

/// M random GF(2) combinations of the h popular contents, each content
/// included in each row independently with probability 1/2. Rows are stored
/// flat; duplicates and all-zero rows are kept.
class CodedCache {
public:
  CodedCache(std::uint32_t h, std::uint32_t M, Rng& rng);

  std::uint32_t dimension() const { return h_; }
  std::uint32_t rows() const { return rows_; }
  std::span<const std::uint64_t> row(std::uint32_t i) const;

private:
  std::uint32_t h_;
  std::uint32_t rows_;
  std::size_t words_;
  std::vector<std::uint64_t> bits_;
};

/// Offers every row of the cache to the tracker in order; returns how many
/// of them increased the rank.
std::size_t coded_contribute(const CodedCache& cache, gf2::SpanTracker& tracker);

}  // namespace femtosim
