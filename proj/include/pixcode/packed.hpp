#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <vector>

#include "pixcode/pixel_matrix.hpp"

namespace pixcode {

/// Largest order handled by the 64-bit packed fast path.
inline constexpr int kMaxPackedOrder = 8;

/// Binary matrix of order <= 8 as a bitboard: bit (8*row + col) is set for
/// +1 cells. Cells outside the order x order corner are always clear.
struct PackedMatrix {
  std::uint64_t bits = 0;
  int order = 0;

  static PackedMatrix from(const PixelMatrix& m);
};

/// One relative translation (dx, dy) of the packed grids: the shift aligns
/// b[i+dy][j+dx] with a[i][j] and `mask` selects the overlap.
struct PackedOffset {
  int dx = 0;
  int dy = 0;
  int shift = 0;
  std::uint64_t mask = 0;
  int overlap = 0;
};

/// All (2N-1)^2 offsets for one order, sorted by decreasing overlap so a
/// scan can stop once the overlap drops to the best magnitude found.
const std::vector<PackedOffset>& packed_offsets(int order);

inline int packed_sum(std::uint64_t a, std::uint64_t b,
                      const PackedOffset& off) {
  const std::uint64_t shifted = off.shift >= 0 ? b >> off.shift
                                                : b << -off.shift;
  return off.overlap - 2 * std::popcount((a ^ shifted) & off.mask);
}

/// The four counter-clockwise quarter turns of a packed matrix.
using PackedRotations = std::array<std::uint64_t, 4>;
PackedRotations packed_rotations(const PixelMatrix& m);

enum class LocalMode;

/// Packed equivalents of local_score_sum and pair_max_abs_sum.
int packed_local_sum(const PackedRotations& a, int order, LocalMode mode);
int packed_pair_max_abs(const PackedRotations& a, const PackedRotations& b,
                        int order);

}  // namespace pixcode
