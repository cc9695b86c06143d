#include "femtosim/gf2.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace femtosim::gf2 {

BitVector::BitVector(std::size_t length) : len_(length), w_(words_for(length), 0) {
  if (length == 0) throw std::invalid_argument("BitVector: length must be positive");
}

BitVector::BitVector(std::span<const std::uint64_t> words, std::size_t length)
    : len_(length), w_(words.begin(), words.end()) {
  if (length == 0) throw std::invalid_argument("BitVector: length must be positive");
  if (words.size() != words_for(length))
    throw std::invalid_argument("BitVector: word count does not match length");
  const std::size_t tail = len_ & 63;
  if (tail != 0) w_.back() &= (~std::uint64_t{0}) >> (64 - tail);
}

BitVector BitVector::random(std::size_t length, Rng& rng) {
  BitVector v(length);
  for (auto& w : v.w_) w = rng.next_u64();
  const std::size_t tail = length & 63;
  if (tail != 0) v.w_.back() &= (~std::uint64_t{0}) >> (64 - tail);
  return v;
}

BitVector BitVector::unit(std::size_t length, std::size_t index) {
  BitVector v(length);
  if (index >= length) throw std::invalid_argument("BitVector::unit: index out of range");
  v.set(index);
  return v;
}

BitVector& BitVector::operator^=(const BitVector& other) {
  if (other.len_ != len_) throw std::invalid_argument("BitVector: dimension mismatch");
  for (std::size_t i = 0; i < w_.size(); ++i) w_[i] ^= other.w_[i];
  return *this;
}

bool BitVector::is_zero() const {
  for (const auto w : w_)
    if (w != 0) return false;
  return true;
}

std::size_t BitVector::popcount() const {
  std::size_t c = 0;
  for (const auto w : w_) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

std::size_t BitVector::lowest_set_bit() const {
  for (std::size_t i = 0; i < w_.size(); ++i)
    if (w_[i] != 0) return i * 64 + static_cast<std::size_t>(std::countr_zero(w_[i]));
  return len_;
}

void BitVector::assign_words(std::span<const std::uint64_t> words) {
  if (words.size() != w_.size())
    throw std::invalid_argument("BitVector::assign_words: word count mismatch");
  std::copy(words.begin(), words.end(), w_.begin());
  const std::size_t tail = len_ & 63;
  if (tail != 0) w_.back() &= (~std::uint64_t{0}) >> (64 - tail);
}

namespace {
std::size_t checked_dimension(std::size_t d) {
  if (d == 0) throw std::invalid_argument("SpanTracker: dimension must be positive");
  return d;
}
}  // namespace

SpanTracker::SpanTracker(std::size_t dimension)
    : dim_(checked_dimension(dimension)), scratch_(dimension), row_of_pivot_(dimension, -1) {}

bool SpanTracker::insert(const BitVector& v) {
  if (v.size() != dim_) throw std::invalid_argument("SpanTracker: dimension mismatch");
  scratch_ = v;
  return insert_scratch();
}

bool SpanTracker::insert(std::span<const std::uint64_t> words) {
  scratch_.assign_words(words);
  return insert_scratch();
}

bool SpanTracker::insert_scratch() {
  ++inserted_;
  if (full_rank()) return false;
  for (std::size_t i = 0; i < basis_.size(); ++i)
    if (scratch_.test(pivot_of_row_[i])) scratch_ ^= basis_[i];
  const std::size_t pivot = scratch_.lowest_set_bit();
  if (pivot == dim_) return false;  // already in the span
  for (std::size_t i = 0; i < basis_.size(); ++i)
    if (basis_[i].test(pivot)) basis_[i] ^= scratch_;
  row_of_pivot_[pivot] = static_cast<std::int32_t>(basis_.size());
  pivot_of_row_.push_back(static_cast<std::uint32_t>(pivot));
  basis_.push_back(scratch_);
  return true;
}

bool SpanTracker::contains(const BitVector& v) const {
  if (v.size() != dim_) throw std::invalid_argument("SpanTracker: dimension mismatch");
  if (full_rank()) return true;
  BitVector r = v;
  for (std::size_t i = 0; i < basis_.size(); ++i)
    if (r.test(pivot_of_row_[i])) r ^= basis_[i];
  return r.is_zero();
}

std::optional<BitVector> solve_coefficients(std::span<const BitVector> vectors,
                                            const BitVector& target) {
  if (vectors.empty()) throw std::invalid_argument("solve_coefficients: no vectors given");
  const std::size_t dim = target.size();
  for (const auto& v : vectors)
    if (v.size() != dim) throw std::invalid_argument("solve_coefficients: dimension mismatch");

  struct Row {
    BitVector value;
    BitVector coef;
    std::size_t pivot;
  };
  std::vector<Row> basis;
  basis.reserve(std::min(vectors.size(), dim));

  for (std::size_t k = 0; k < vectors.size(); ++k) {
    BitVector value = vectors[k];
    BitVector coef = BitVector::unit(vectors.size(), k);
    for (const auto& row : basis) {
      if (value.test(row.pivot)) {
        value ^= row.value;
        coef ^= row.coef;
      }
    }
    const std::size_t pivot = value.lowest_set_bit();
    if (pivot == dim) continue;  // redundant input vector
    for (auto& row : basis) {
      if (row.value.test(pivot)) {
        row.value ^= value;
        row.coef ^= coef;
      }
    }
    basis.push_back(Row{std::move(value), std::move(coef), pivot});
  }

  BitVector residue = target;
  BitVector acc(vectors.size());
  for (const auto& row : basis) {
    if (residue.test(row.pivot)) {
      residue ^= row.value;
      acc ^= row.coef;
    }
  }
  if (!residue.is_zero()) return std::nullopt;
  return acc;
}

}  // namespace femtosim::gf2
