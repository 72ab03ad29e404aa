#include "pixcode/packed.hpp"

#include <algorithm>
#include <cstdlib>
#include <mutex>

#include "pixcode/errors.hpp"
#include "pixcode/scoring.hpp"

namespace pixcode {
namespace {

std::vector<PackedOffset> build_offsets(int order) {
  std::vector<PackedOffset> out;
  for (int dy = -(order - 1); dy <= order - 1; ++dy) {
    for (int dx = -(order - 1); dx <= order - 1; ++dx) {
      PackedOffset off;
      off.dx = dx;
      off.dy = dy;
      off.shift = dy * kMaxPackedOrder + dx;
      for (int i = 0; i < order; ++i) {
        for (int j = 0; j < order; ++j) {
          const int bi = i + dy;
          const int bj = j + dx;
          if (bi < 0 || bi >= order || bj < 0 || bj >= order) continue;
          off.mask |= std::uint64_t{1} << (i * kMaxPackedOrder + j);
          ++off.overlap;
        }
      }
      out.push_back(off);
    }
  }
  // Stable so equal overlaps keep (dy, dx) order; the centre comes first.
  std::stable_sort(out.begin(), out.end(),
                   [](const PackedOffset& l, const PackedOffset& r) {
                     return l.overlap > r.overlap;
                   });
  return out;
}

}  // namespace

PackedMatrix PackedMatrix::from(const PixelMatrix& m) {
  if (m.order() < 1 || m.order() > kMaxPackedOrder) {
    throw CapacityError("packed form supports orders 1.." +
                        std::to_string(kMaxPackedOrder));
  }
  require_binary(m, "PackedMatrix");
  PackedMatrix p;
  p.order = m.order();
  for (int i = 0; i < m.order(); ++i) {
    for (int j = 0; j < m.order(); ++j) {
      if (m(i, j) > 0) p.bits |= std::uint64_t{1} << (i * kMaxPackedOrder + j);
    }
  }
  return p;
}

const std::vector<PackedOffset>& packed_offsets(int order) {
  static std::array<std::vector<PackedOffset>, kMaxPackedOrder + 1> tables;
  static std::once_flag once;
  std::call_once(once, [] {
    for (int n = 1; n <= kMaxPackedOrder; ++n) tables[n] = build_offsets(n);
  });
  if (order < 1 || order > kMaxPackedOrder) {
    throw CapacityError("packed offsets support orders 1.." +
                        std::to_string(kMaxPackedOrder));
  }
  return tables[order];
}

PackedRotations packed_rotations(const PixelMatrix& m) {
  PackedRotations r{};
  for (int k = 0; k < 4; ++k) r[k] = PackedMatrix::from(rotate90(m, k)).bits;
  return r;
}

int packed_local_sum(const PackedRotations& a, int order, LocalMode mode) {
  // a against turn k of its mate contributes -sum(a, turn k of a).
  const auto& offsets = packed_offsets(order);
  int best = 0;  // no wrong configuration at all leaves the optimum, 0
  bool any = false;
  for (int k = 0; k < 4; ++k) {
    for (const auto& off : offsets) {
      const bool centred = off.dx == 0 && off.dy == 0;
      if (k == 0 && centred) continue;
      if (mode == LocalMode::kCenter && k != 0 && !centred) continue;
      const int v = -packed_sum(a[0], a[k], off);
      if (!any || v < best) best = v;
      any = true;
    }
  }
  return best;
}

int packed_pair_max_abs(const PackedRotations& a, const PackedRotations& b,
                        int order) {
  const auto& offsets = packed_offsets(order);
  int best = 0;
  for (int k = 0; k < 4; ++k) {
    for (const auto& off : offsets) {
      if (off.overlap <= best) break;
      best = std::max(best, std::abs(packed_sum(a[0], b[k], off)));
    }
  }
  return best;
}

}  // namespace pixcode
