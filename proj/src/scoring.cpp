#include "pixcode/scoring.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "pixcode/errors.hpp"
#include "pixcode/grid_kernels.hpp"
#include "pixcode/matrix_core.hpp"
#include "pixcode/packed.hpp"

namespace pixcode {
namespace {

double cell_count(int order) {
  return static_cast<double>(order) * static_cast<double>(order);
}

// Angle folded into [0, 360).
double fold_degrees(double theta) {
  double t = std::fmod(theta, 360.0);
  if (t < 0) t += 360.0;
  return t;
}

// Quarter-turn count when theta is a multiple of 90 degrees, else -1.
int quarter_turns_of(double theta) {
  const double folded = fold_degrees(theta);
  const double q = folded / 90.0;
  const double r = std::round(q);
  if (std::abs(q - r) > 1e-12) return -1;
  return static_cast<int>(r) % 4;
}

}  // namespace

InteractionMap::InteractionMap(int order, Eigen::MatrixXi sums)
    : order_(order), sums_(std::move(sums)) {
  if (sums_.rows() != 2 * order - 1 || sums_.cols() != 2 * order - 1) {
    throw DimensionError("interaction map must be (2N-1)x(2N-1)");
  }
}

int InteractionMap::sum_at(int dx, int dy) const {
  if (std::abs(dx) > max_offset() || std::abs(dy) > max_offset()) return 0;
  return sums_(dy + max_offset(), dx + max_offset());
}

double InteractionMap::at(int dx, int dy) const {
  return sum_at(dx, dy) / cell_count(order_);
}

Eigen::MatrixXd InteractionMap::scores() const {
  return sums_.cast<double>() / cell_count(order_);
}

const char* to_string(LocalMode mode) {
  return mode == LocalMode::kCenter ? "center" : "full";
}

LocalMode parse_local_mode(const std::string& text) {
  if (text == "center") return LocalMode::kCenter;
  if (text == "full") return LocalMode::kFull;
  throw InvalidInputError("local mode must be 'center' or 'full', got '" +
                          text + "'");
}

PixelMatrix rotate90(const PixelMatrix& m, int quarter_turns) {
  return PixelMatrix(kernels::rotate_quarter(m.cells(), quarter_turns));
}

InteractionMap cross_correlate(const PixelMatrix& a, const PixelMatrix& b) {
  require_same_order(a, b);
  const int n = a.order();
  Eigen::MatrixXi sums(2 * n - 1, 2 * n - 1);
  for (int dy = -(n - 1); dy <= n - 1; ++dy) {
    for (int dx = -(n - 1); dx <= n - 1; ++dx) {
      sums(dy + n - 1, dx + n - 1) =
          kernels::overlap_sum<int>(a.cells(), b.cells(), dx, dy);
    }
  }
  return InteractionMap(n, std::move(sums));
}

std::array<double, 4> rotation_scores_cardinal(const PixelMatrix& a,
                                               const PixelMatrix& b) {
  require_same_order(a, b);
  std::array<double, 4> out{};
  for (int k = 0; k < 4; ++k) out[k] = normalized_score(a, rotate90(b, k));
  return out;
}

double rotation_score_fine(const PixelMatrix& a, const PixelMatrix& b,
                           double theta_deg,
                           const FineRotationOptions& options) {
  require_same_order(a, b);
  if (options.upsample < 1) throw InvalidInputError("upsample must be >= 1");
  const Eigen::MatrixXd fine_a =
      kernels::upsample_blocks<double>(a.cells(), options.upsample);
  const Eigen::MatrixXd fine_b =
      kernels::upsample_blocks<double>(b.cells(), options.upsample);

  Eigen::MatrixXd moved;
  const int turns = quarter_turns_of(theta_deg);
  if (options.exact_quarter_turns && turns >= 0) {
    moved = kernels::rotate_quarter(fine_b, turns);
  } else {
    moved = kernels::rotate_nearest(fine_b, fold_degrees(theta_deg));
    if (options.smooth) moved = kernels::box_smooth3(moved);
  }
  const double total = static_cast<double>(fine_a.size());
  const double score = fine_a.cwiseProduct(moved).sum() / total;
  return std::clamp(score, -1.0, 1.0);
}

RotationProfile rotation_profile(const PixelMatrix& a, const PixelMatrix& b,
                                 double start_deg, double stop_deg,
                                 double step_deg,
                                 const FineRotationOptions& options) {
  if (!(step_deg > 0)) throw InvalidInputError("step must be positive");
  if (stop_deg < start_deg) throw InvalidInputError("stop before start");
  RotationProfile profile;
  const auto steps =
      static_cast<int>(std::floor((stop_deg - start_deg) / step_deg + 1e-9));
  for (int i = 0; i <= steps; ++i) {
    const double theta = start_deg + i * step_deg;
    profile.angles_deg.push_back(theta);
    profile.scores.push_back(rotation_score_fine(a, b, theta, options));
  }
  return profile;
}

int local_score_sum(const PixelMatrix& a, LocalMode mode) {
  require_binary(a, "local_score");
  const int n = a.order();
  if (n <= kMaxPackedOrder) {
    return packed_local_sum(packed_rotations(a), n, mode);
  }
  const PixelMatrix m = mate(a);
  bool any = false;
  int best = 0;
  auto consider = [&](int v) {
    if (!any || v < best) best = v;
    any = true;
  };
  for (int k = 0; k < 4; ++k) {
    const PixelMatrix turned = rotate90(m, k);
    for (int dy = -(n - 1); dy <= n - 1; ++dy) {
      for (int dx = -(n - 1); dx <= n - 1; ++dx) {
        const bool centred = dx == 0 && dy == 0;
        if (k == 0 && centred) continue;
        if (mode == LocalMode::kCenter && k != 0 && !centred) continue;
        consider(kernels::overlap_sum<int>(a.cells(), turned.cells(), dx, dy));
      }
    }
  }
  return best;
}

double local_score(const PixelMatrix& a, LocalMode mode) {
  return local_score_sum(a, mode) / cell_count(a.order());
}

int pair_max_abs_sum(const PixelMatrix& a, const PixelMatrix& b) {
  require_same_order(a, b);
  require_binary(a, "pair_score");
  require_binary(b, "pair_score");
  const int n = a.order();
  if (n <= kMaxPackedOrder) {
    return packed_pair_max_abs(packed_rotations(a), packed_rotations(b), n);
  }
  int best = 0;
  for (int k = 0; k < 4; ++k) {
    const PixelMatrix turned = rotate90(b, k);
    const InteractionMap map = cross_correlate(a, turned);
    best = std::max(best, map.sums().cwiseAbs().maxCoeff());
  }
  return best;
}

double pair_score(const PixelMatrix& a, const PixelMatrix& b) {
  require_same_order(a, b);
  if (a == b || a == mate(b)) {
    throw InvalidInputError(
        "pair_score needs two distinct, non-mating encodings");
  }
  return -pair_max_abs_sum(a, b) / cell_count(a.order());
}

std::string format_fixed9(double value) {
  if (value == 0.0) value = 0.0;  // folds -0.0
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9f", value);
  std::string out(buf);
  if (out == "-0.000000000") out = "0.000000000";
  return out;
}

std::string to_csv(const InteractionMap& map) {
  std::string out = "dx,dy,score\n";
  const int m = map.max_offset();
  for (int dy = -m; dy <= m; ++dy) {
    for (int dx = -m; dx <= m; ++dx) {
      out += std::to_string(dx) + "," + std::to_string(dy) + "," +
             format_fixed9(map.at(dx, dy)) + "\n";
    }
  }
  return out;
}

std::string to_csv(const RotationProfile& profile) {
  std::string out = "angle_deg,score\n";
  for (std::size_t i = 0; i < profile.angles_deg.size(); ++i) {
    out += format_fixed9(profile.angles_deg[i]) + "," +
           format_fixed9(profile.scores[i]) + "\n";
  }
  return out;
}

}  // namespace pixcode
