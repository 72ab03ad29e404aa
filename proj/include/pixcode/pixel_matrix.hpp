#pragma once

#include <cstdint>
#include <initializer_list>
#include <string>

#include <Eigen/Dense>

namespace pixcode {

/// One magnetic pixel: +1 North, -1 South, 0 unprogrammed / no overlap.
using Trit = std::int8_t;

using TritGrid =
    Eigen::Matrix<Trit, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Square grid of trits. Immutable once constructed; every constructor
/// validates squareness and the trit alphabet.
class PixelMatrix {
 public:
  PixelMatrix() = default;
  explicit PixelMatrix(TritGrid cells);

  static PixelMatrix zeros(int order);
  static PixelMatrix constant(int order, Trit value);
  /// Builds from nested integer rows; throws InvalidInputError on any value
  /// outside {-1, 0, +1} and DimensionError on ragged or non-square input.
  static PixelMatrix from_rows(
      std::initializer_list<std::initializer_list<int>> rows);

  int order() const noexcept { return static_cast<int>(cells_.rows()); }
  Trit operator()(int row, int col) const { return cells_(row, col); }
  const TritGrid& cells() const noexcept { return cells_; }

  /// True when no cell is 0.
  bool is_binary() const;
  int nonzero_count() const;

  friend bool operator==(const PixelMatrix& a, const PixelMatrix& b) {
    return a.cells_.rows() == b.cells_.rows() && a.cells_ == b.cells_;
  }
  /// Order first, then row-major lexicographic on cells.
  friend bool operator<(const PixelMatrix& a, const PixelMatrix& b);

  std::string debug_string() const;

 private:
  TritGrid cells_;
};

/// Throws InvalidInputError naming `what` unless `m` is binary.
void require_binary(const PixelMatrix& m, const char* what);
/// Throws DimensionError unless both orders agree.
void require_same_order(const PixelMatrix& a, const PixelMatrix& b);

}  // namespace pixcode
