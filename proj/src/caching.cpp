#include "femtosim/caching.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <unordered_set>

namespace femtosim {

bool UncodedCache::contains(std::uint32_t r) const {
  return std::binary_search(contents.begin(), contents.end(), r);
}

UncodedCache place_uncoded(std::uint32_t h, std::uint32_t M, Rng& rng) {
  if (h == 0 || M == 0) throw std::invalid_argument("place_uncoded: h and M must be positive");
  UncodedCache cache;
  if (M >= h) {
    cache.contents.resize(h);
    std::iota(cache.contents.begin(), cache.contents.end(), 1u);
    return cache;
  }
  // Floyd's sampling: uniform M-subset of {1..h} in M draws.
  std::unordered_set<std::uint32_t> chosen;
  chosen.reserve(M);
  for (std::uint32_t j = h - M + 1; j <= h; ++j) {
    const auto t = static_cast<std::uint32_t>(rng.next_below(j)) + 1;
    chosen.insert(chosen.contains(t) ? j : t);
  }
  cache.contents.assign(chosen.begin(), chosen.end());
  std::sort(cache.contents.begin(), cache.contents.end());
  return cache;
}

CodedCache::CodedCache(std::uint32_t h, std::uint32_t M, Rng& rng)
    : h_(h), rows_(M), words_(gf2::BitVector::words_for(h)) {
  if (h == 0 || M == 0) throw std::invalid_argument("CodedCache: h and M must be positive");
  bits_.resize(static_cast<std::size_t>(rows_) * words_);
  const std::size_t tail = h_ & 63;
  const std::uint64_t mask = tail ? (~std::uint64_t{0}) >> (64 - tail) : ~std::uint64_t{0};
  for (std::uint32_t r = 0; r < rows_; ++r) {
    std::uint64_t* w = bits_.data() + static_cast<std::size_t>(r) * words_;
    for (std::size_t k = 0; k < words_; ++k) w[k] = rng.next_u64();
    w[words_ - 1] &= mask;
  }
}

std::span<const std::uint64_t> CodedCache::row(std::uint32_t i) const {
  if (i >= rows_) throw std::out_of_range("CodedCache::row: index out of range");
  return {bits_.data() + static_cast<std::size_t>(i) * words_, words_};
}

std::size_t coded_contribute(const CodedCache& cache, gf2::SpanTracker& tracker) {
  if (cache.dimension() != tracker.dimension())
    throw std::invalid_argument("coded_contribute: dimension mismatch");
  std::size_t accepted = 0;
  for (std::uint32_t r = 0; r < cache.rows(); ++r)
    if (tracker.insert(cache.row(r))) ++accepted;
  return accepted;
}

}  // namespace femtosim
