#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "femtosim/rng.hpp"

namespace femtosim::gf2 {

/// Dense bit-packed vector over GF(2). Bits beyond size() in the last word
/// are kept zero so word-level operations never need masking.
class BitVector {
public:
  explicit BitVector(std::size_t length);
  BitVector(std::span<const std::uint64_t> words, std::size_t length);

  /// Every bit independently 1 with probability 1/2. The all-zero draw is
  /// possible and kept.
  static BitVector random(std::size_t length, Rng& rng);
  static BitVector unit(std::size_t length, std::size_t index);

  std::size_t size() const { return len_; }
  bool test(std::size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1; }
  void set(std::size_t i) { w_[i >> 6] |= std::uint64_t{1} << (i & 63); }

  BitVector& operator^=(const BitVector& other);
  bool is_zero() const;
  std::size_t popcount() const;
  /// Lowest set bit index, or size() when the vector is zero.
  std::size_t lowest_set_bit() const;
  /// Replaces the contents; length is unchanged, excess bits are masked off.
  void assign_words(std::span<const std::uint64_t> words);

  std::span<const std::uint64_t> words() const { return w_; }
  bool operator==(const BitVector&) const = default;

  static std::size_t words_for(std::size_t length) { return (length + 63) / 64; }

private:
  std::size_t len_;
  std::vector<std::uint64_t> w_;
};

/// Incremental Gaussian elimination over GF(2). The basis is kept in fully
/// reduced form: each row has a 1 at its own pivot column (the lowest-index
/// set column at insertion time) and a 0 at every other row's pivot, so a
/// single pass over the rows reduces any vector completely.
class SpanTracker {
public:
  explicit SpanTracker(std::size_t dimension);

  std::size_t dimension() const { return dim_; }
  std::size_t rank() const { return basis_.size(); }
  std::size_t inserted_count() const { return inserted_; }
  bool full_rank() const { return rank() == dim_; }

  /// Offers a vector to the span. Returns true iff the rank increased.
  bool insert(const BitVector& v);
  bool insert(std::span<const std::uint64_t> words);

  /// True iff v lies in the current span. The tracker is unchanged.
  bool contains(const BitVector& v) const;

  std::span<const BitVector> basis() const { return basis_; }
  std::span<const std::uint32_t> pivots() const { return pivot_of_row_; }

private:
  bool insert_scratch();

  std::size_t dim_;
  std::size_t inserted_ = 0;
  BitVector scratch_;  // reused across offers so rejections never allocate
  std::vector<BitVector> basis_;
  std::vector<std::uint32_t> pivot_of_row_;
  std::vector<std::int32_t> row_of_pivot_;  // -1 when the column is free
};

/// Finds coefficients c with XOR_{i: c_i=1} vectors[i] == target, or nullopt
/// when the target is outside the span. Companion coefficient rows are
/// carried through the elimination, the same bookkeeping used to tell
/// relaying caches which rows to combine.
std::optional<BitVector> solve_coefficients(std::span<const BitVector> vectors,
                                            const BitVector& target);

}  // namespace femtosim::gf2
