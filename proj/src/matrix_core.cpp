#include "pixcode/matrix_core.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "pixcode/errors.hpp"

namespace pixcode {

PixelMatrix elementwise_product(const PixelMatrix& a, const PixelMatrix& b) {
  require_same_order(a, b);
  return PixelMatrix(a.cells().cwiseProduct(b.cells()));
}

long raw_score(const PixelMatrix& a, const PixelMatrix& b) {
  require_same_order(a, b);
  return a.cells()
      .cast<long>()
      .cwiseProduct(b.cells().cast<long>())
      .sum();
}

double normalized_score(const PixelMatrix& a, const PixelMatrix& b) {
  const long sum = raw_score(a, b);
  const long cells = static_cast<long>(a.order()) * a.order();
  if (cells == 0) return 0.0;
  return static_cast<double>(sum) / static_cast<double>(cells);
}

PixelMatrix mate(const PixelMatrix& a) { return PixelMatrix(-a.cells()); }

bool is_hadamard(const PixelMatrix& a) {
  require_binary(a, "is_hadamard");
  const Eigen::MatrixXi m = a.cells().cast<int>();
  const Eigen::MatrixXi gram = m * m.transpose();
  return gram == a.order() * Eigen::MatrixXi::Identity(a.order(), a.order());
}

PixelMatrix sylvester(int k, int max_exponent) {
  if (k < 0) throw InvalidInputError("sylvester exponent must be >= 0");
  if (k > max_exponent) {
    throw CapacityError("sylvester exponent " + std::to_string(k) +
                        " exceeds limit " + std::to_string(max_exponent));
  }
  TritGrid h = TritGrid::Ones(1, 1);
  for (int step = 0; step < k; ++step) {
    const Eigen::Index n = h.rows();
    TritGrid next(2 * n, 2 * n);
    next.topLeftCorner(n, n) = h;
    next.topRightCorner(n, n) = h;
    next.bottomLeftCorner(n, n) = h;
    next.bottomRightCorner(n, n) = -h;
    h = std::move(next);
  }
  return PixelMatrix(std::move(h));
}

void throw_enumeration_capacity(int order) {
  throw CapacityError("binary enumeration limited to order^2 <= " +
                      std::to_string(kMaxEnumerationCells) + ", got order " +
                      std::to_string(order));
}

PixelMatrix binary_matrix_from_index(int order, std::uint64_t index) {
  if (order < 1 || order * order > 63) throw_enumeration_capacity(order);
  TritGrid cells(order, order);
  for (int b = 0; b < order * order; ++b) {
    cells(b / order, b % order) = ((index >> b) & 1U) ? Trit{1} : Trit{-1};
  }
  return PixelMatrix(std::move(cells));
}

PixelMatrix permute_rows(const PixelMatrix& h, const std::vector<int>& perm) {
  if (static_cast<int>(perm.size()) != h.order()) {
    throw DimensionError("permutation length does not match order");
  }
  TritGrid cells(h.order(), h.order());
  for (int i = 0; i < h.order(); ++i) cells.row(i) = h.cells().row(perm[i]);
  return PixelMatrix(std::move(cells));
}

RowPermutations::RowPermutations(PixelMatrix base) : base_(std::move(base)) {
  require_binary(base_, "row_permutations");
}

RowPermutations::iterator RowPermutations::begin() const {
  iterator it;
  it.base_ = &base_;
  it.perm_.resize(base_.order());
  std::iota(it.perm_.begin(), it.perm_.end(), 0);
  it.done_ = false;
  return it;
}

std::uint64_t RowPermutations::size() const {
  std::uint64_t n = 1;
  for (int i = 2; i <= base_.order(); ++i) {
    if (n > std::numeric_limits<std::uint64_t>::max() / i) {
      return std::numeric_limits<std::uint64_t>::max();
    }
    n *= static_cast<std::uint64_t>(i);
  }
  return n;
}

PixelMatrix RowPermutations::iterator::operator*() const {
  return permute_rows(*base_, perm_);
}

RowPermutations::iterator& RowPermutations::iterator::operator++() {
  done_ = !std::next_permutation(perm_.begin(), perm_.end());
  return *this;
}

}  // namespace pixcode
