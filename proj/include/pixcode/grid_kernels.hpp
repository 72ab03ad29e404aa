#pragma once

// Dense-grid building blocks shared by the scoring code. All of them are
// templated on the Eigen expression so integer trit grids and real-valued
// fine grids go through the same code.

#include <cmath>
#include <cstdlib>

#include <Eigen/Dense>

namespace pixcode::kernels {

/// Sum over the overlap of a[i][j] * b[i+dy][j+dx]; zero when the shifted
/// grids do not overlap. Accumulates in `Acc`.
template <typename Acc = long, typename DerivedA, typename DerivedB>
Acc overlap_sum(const Eigen::MatrixBase<DerivedA>& a,
                const Eigen::MatrixBase<DerivedB>& b, int dx, int dy) {
  const auto n = static_cast<int>(a.rows());
  const int rows = n - std::abs(dy);
  const int cols = n - std::abs(dx);
  if (rows <= 0 || cols <= 0) return Acc{0};
  const int ai = dy < 0 ? -dy : 0;
  const int aj = dx < 0 ? -dx : 0;
  const int bi = dy > 0 ? dy : 0;
  const int bj = dx > 0 ? dx : 0;
  return a.block(ai, aj, rows, cols)
      .template cast<Acc>()
      .cwiseProduct(b.block(bi, bj, rows, cols).template cast<Acc>())
      .sum();
}

/// Counter-clockwise quarter turns (as displayed with row 0 on top):
/// one turn maps cell (r, c) to (N-1-c, r).
template <typename Derived>
typename Derived::PlainObject rotate_quarter(
    const Eigen::MatrixBase<Derived>& m, int quarter_turns) {
  typename Derived::PlainObject out = m;
  const int turns = ((quarter_turns % 4) + 4) % 4;
  for (int t = 0; t < turns; ++t) {
    typename Derived::PlainObject next = out.transpose().colwise().reverse();
    out = std::move(next);
  }
  return out;
}

/// Replaces every cell by a factor x factor block of the same value.
template <typename Scalar, typename Derived>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> upsample_blocks(
    const Eigen::MatrixBase<Derived>& m, int factor) {
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> out(
      m.rows() * factor, m.cols() * factor);
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      out.block(i * factor, j * factor, factor, factor)
          .setConstant(static_cast<Scalar>(m(i, j)));
    }
  }
  return out;
}

/// 3x3 box average with zero padding: every output cell is the sum of its
/// in-range 3x3 neighbourhood divided by 9.
template <typename Derived>
typename Derived::PlainObject box_smooth3(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  const Eigen::Index rows = m.rows();
  const Eigen::Index cols = m.cols();
  typename Derived::PlainObject padded =
      Derived::PlainObject::Zero(rows + 2, cols + 2);
  padded.block(1, 1, rows, cols) = m;
  typename Derived::PlainObject out(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) {
      out(i, j) = padded.block(i, j, 3, 3).sum() / Scalar(9);
    }
  }
  return out;
}

/// Rotates a square real grid by `theta_deg` about its centre by forward
/// mapping: each cell centre is moved with the rotation matrix (y axis
/// pointing up, positive angles counter-clockwise) and deposited in the
/// nearest destination cell. Several sources landing on one cell are
/// averaged; cells that receive nothing are 0.
template <typename Derived>
typename Derived::PlainObject rotate_nearest(
    const Eigen::MatrixBase<Derived>& m, double theta_deg) {
  using Plain = typename Derived::PlainObject;
  using Scalar = typename Derived::Scalar;
  const Eigen::Index n = m.rows();
  const double half = static_cast<double>(n) / 2.0;
  const double rad = theta_deg * M_PI / 180.0;
  const double c = std::cos(rad);
  const double s = std::sin(rad);
  Plain sum = Plain::Zero(n, n);
  Eigen::MatrixXi hits = Eigen::MatrixXi::Zero(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index col = 0; col < n; ++col) {
      // Image coordinates (x right, y down) relative to the centre.
      const double x = static_cast<double>(col) + 0.5 - half;
      const double y = static_cast<double>(r) + 0.5 - half;
      // Same rotation as [cos -sin; sin cos] applied in a y-up frame.
      const double xr = x * c + y * s;
      const double yr = -x * s + y * c;
      const auto dc = static_cast<Eigen::Index>(std::floor(xr + half));
      const auto dr = static_cast<Eigen::Index>(std::floor(yr + half));
      if (dr < 0 || dr >= n || dc < 0 || dc >= n) continue;
      sum(dr, dc) += m(r, col);
      hits(dr, dc) += 1;
    }
  }
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index col = 0; col < n; ++col) {
      if (hits(r, col) > 1) sum(r, col) /= static_cast<Scalar>(hits(r, col));
    }
  }
  return sum;
}

}  // namespace pixcode::kernels
