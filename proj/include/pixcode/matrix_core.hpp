#pragma once

#include <cstdint>
#include <iterator>
#include <ranges>
#include <vector>

#include "pixcode/pixel_matrix.hpp"

namespace pixcode {

/// Largest Sylvester exponent accepted by sylvester() unless overridden.
inline constexpr int kDefaultMaxSylvesterExponent = 10;
/// enumerate_binary() refuses orders with more than this many cells.
inline constexpr int kMaxEnumerationCells = 25;

PixelMatrix elementwise_product(const PixelMatrix& a, const PixelMatrix& b);

/// Exact sum of the elementwise product.
long raw_score(const PixelMatrix& a, const PixelMatrix& b);

/// raw_score divided by N^2. -1 is maximal attraction, +1 maximal repulsion.
/// Always normalized by the full cell count, also for zero-padded inputs.
double normalized_score(const PixelMatrix& a, const PixelMatrix& b);

/// Element-wise negation (the maximally attractive partner).
PixelMatrix mate(const PixelMatrix& a);

/// A*A^T == N*I. Throws InvalidInputError when `a` contains zeros.
bool is_hadamard(const PixelMatrix& a);

/// H_{2^k} by the block recursion [[H, H], [H, -H]] starting from H_1 = [1].
PixelMatrix sylvester(int k, int max_exponent = kDefaultMaxSylvesterExponent);

/// Binary matrix number `index` in enumeration order: row-major bit counter,
/// bit b of `index` is cell (b / order, b % order); bit 0 maps to -1, 1 to +1.
PixelMatrix binary_matrix_from_index(int order, std::uint64_t index);

[[noreturn]] void throw_enumeration_capacity(int order);

/// Lazily yields all 2^(order^2) binary matrices in bit-counter order.
/// Throws CapacityError eagerly when order^2 > kMaxEnumerationCells.
inline auto enumerate_binary(int order) {
  if (order < 1 || order * order > kMaxEnumerationCells) {
    throw_enumeration_capacity(order);
  }
  const std::uint64_t count = std::uint64_t{1} << (order * order);
  return std::views::iota(std::uint64_t{0}, count) |
         std::views::transform([order](std::uint64_t i) {
           return binary_matrix_from_index(order, i);
         });
}

/// Input range over every row permutation of a binary matrix, in
/// lexicographic permutation order starting with the identity.
class RowPermutations {
 public:
  explicit RowPermutations(PixelMatrix base);

  class iterator {
   public:
    using value_type = PixelMatrix;
    using difference_type = std::ptrdiff_t;
    using iterator_concept = std::input_iterator_tag;

    iterator() = default;
    PixelMatrix operator*() const;
    iterator& operator++();
    void operator++(int) { ++*this; }
    bool operator==(std::default_sentinel_t) const { return done_; }

   private:
    friend class RowPermutations;
    const PixelMatrix* base_ = nullptr;
    std::vector<int> perm_;
    bool done_ = true;
  };

  iterator begin() const;
  std::default_sentinel_t end() const { return {}; }

  /// N!, saturating at UINT64_MAX.
  std::uint64_t size() const;

 private:
  PixelMatrix base_;
};

inline RowPermutations row_permutations(const PixelMatrix& h) {
  return RowPermutations(h);
}

/// Applies a row order: result row i is h row perm[i].
PixelMatrix permute_rows(const PixelMatrix& h, const std::vector<int>& perm);

}  // namespace pixcode
