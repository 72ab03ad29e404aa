#include "pixcode/pixel_matrix.hpp"

#include <algorithm>
#include <sstream>

#include "pixcode/errors.hpp"

namespace pixcode {

PixelMatrix::PixelMatrix(TritGrid cells) : cells_(std::move(cells)) {
  if (cells_.rows() != cells_.cols()) {
    throw DimensionError("pixel matrix must be square, got " +
                         std::to_string(cells_.rows()) + "x" +
                         std::to_string(cells_.cols()));
  }
  for (Eigen::Index i = 0; i < cells_.size(); ++i) {
    const Trit v = cells_.data()[i];
    if (v < -1 || v > 1) {
      throw InvalidInputError("pixel value out of {-1,0,1}: " +
                              std::to_string(int{v}));
    }
  }
}

PixelMatrix PixelMatrix::zeros(int order) { return constant(order, 0); }

PixelMatrix PixelMatrix::constant(int order, Trit value) {
  if (order < 0) throw DimensionError("negative order");
  return PixelMatrix(TritGrid::Constant(order, order, value));
}

PixelMatrix PixelMatrix::from_rows(
    std::initializer_list<std::initializer_list<int>> rows) {
  const auto n = static_cast<Eigen::Index>(rows.size());
  TritGrid cells(n, n);
  Eigen::Index r = 0;
  for (const auto& row : rows) {
    if (static_cast<Eigen::Index>(row.size()) != n) {
      throw DimensionError("ragged or non-square rows");
    }
    Eigen::Index c = 0;
    for (int v : row) {
      if (v < -1 || v > 1) {
        throw InvalidInputError("pixel value out of {-1,0,1}: " +
                                std::to_string(v));
      }
      cells(r, c++) = static_cast<Trit>(v);
    }
    ++r;
  }
  return PixelMatrix(std::move(cells));
}

bool PixelMatrix::is_binary() const { return (cells_.array() != 0).all(); }

int PixelMatrix::nonzero_count() const {
  return static_cast<int>((cells_.array() != 0).count());
}

bool operator<(const PixelMatrix& a, const PixelMatrix& b) {
  if (a.order() != b.order()) return a.order() < b.order();
  const Trit* pa = a.cells_.data();
  const Trit* pb = b.cells_.data();
  return std::lexicographical_compare(pa, pa + a.cells_.size(), pb,
                                      pb + b.cells_.size());
}

std::string PixelMatrix::debug_string() const {
  std::ostringstream os;
  os << cells_.cast<int>();
  return os.str();
}

void require_binary(const PixelMatrix& m, const char* what) {
  if (!m.is_binary()) {
    throw InvalidInputError(std::string(what) +
                            ": matrix must be binary (no 0 cells)");
  }
}

void require_same_order(const PixelMatrix& a, const PixelMatrix& b) {
  if (a.order() != b.order()) {
    throw DimensionError("order mismatch: " + std::to_string(a.order()) +
                         " vs " + std::to_string(b.order()));
  }
}

}  // namespace pixcode
