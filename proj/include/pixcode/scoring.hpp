#pragma once

#include <array>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "pixcode/pixel_matrix.hpp"

namespace pixcode {

/// Normalized translation scores of one ordered pair. Stored as exact
/// integer overlap sums; scores are sums / N^2.
class InteractionMap {
 public:
  InteractionMap(int order, Eigen::MatrixXi sums);

  int order() const noexcept { return order_; }
  /// Offsets run over [-(N-1), N-1] on both axes.
  int max_offset() const noexcept { return order_ - 1; }
  int sum_at(int dx, int dy) const;
  double at(int dx, int dy) const;
  /// Row index dy + N - 1, column index dx + N - 1.
  const Eigen::MatrixXi& sums() const noexcept { return sums_; }
  Eigen::MatrixXd scores() const;
  int min_sum() const { return sums_.minCoeff(); }

 private:
  int order_;
  Eigen::MatrixXi sums_;
};

struct RotationProfile {
  std::vector<double> angles_deg;
  std::vector<double> scores;
};

/// Which configurations count as "wrong" ones when scoring a matrix
/// against its own mate.
enum class LocalMode {
  /// Every translation at 0 degrees plus the 90/180/270 degree turns at the
  /// centred position.
  kCenter,
  /// Every translation of every quarter turn (the product set).
  kFull,
};

const char* to_string(LocalMode mode);
LocalMode parse_local_mode(const std::string& text);

struct FineRotationOptions {
  int upsample = 10;
  bool smooth = true;
  /// Exact quarter turns go through the index remap and skip smoothing:
  /// the remap has no discretization artefacts to remove.
  bool exact_quarter_turns = true;
};

/// Counter-clockwise quarter turns, exact index remap.
PixelMatrix rotate90(const PixelMatrix& m, int quarter_turns = 1);

/// Entry (dx, dy) = sum over the overlap of a[i][j] * b[i+dy][j+dx] / N^2.
InteractionMap cross_correlate(const PixelMatrix& a, const PixelMatrix& b);

/// Centred scores of a against b turned by 0, 90, 180 and 270 degrees.
std::array<double, 4> rotation_scores_cardinal(const PixelMatrix& a,
                                               const PixelMatrix& b);

/// Score of a against b rotated by an arbitrary angle on an upsampled grid
/// (nearest-neighbour forward mapping, then a 3x3 box average).
double rotation_score_fine(const PixelMatrix& a, const PixelMatrix& b,
                           double theta_deg,
                           const FineRotationOptions& options = {});

/// rotation_score_fine over [start, stop] in `step` increments.
RotationProfile rotation_profile(const PixelMatrix& a, const PixelMatrix& b,
                                 double start_deg = -180.0,
                                 double stop_deg = 180.0,
                                 double step_deg = 10.0,
                                 const FineRotationOptions& options = {});

/// Most attractive overlap sum between `a` and its mate over every wrong
/// configuration (the mating one excluded). Exact integer.
int local_score_sum(const PixelMatrix& a, LocalMode mode = LocalMode::kFull);
/// S_L: local_score_sum / N^2. Optimal value is 0.
double local_score(const PixelMatrix& a, LocalMode mode = LocalMode::kFull);

/// Largest |overlap sum| of a against every translation of every quarter
/// turn of b. Covers the four encounters {a, a'} x {b, b'} at once because
/// mates only flip the sign.
int pair_max_abs_sum(const PixelMatrix& a, const PixelMatrix& b);
/// Worst (most attractive) interaction between two distinct, non-mating
/// encodings and their mates: -pair_max_abs_sum / N^2. Throws
/// InvalidInputError when b equals a or mate(a).
double pair_score(const PixelMatrix& a, const PixelMatrix& b);

/// CSV with header "dx,dy,score"; dy outer loop, dx inner, 9 decimals.
std::string to_csv(const InteractionMap& map);
/// CSV with header "angle_deg,score", 9 decimals.
std::string to_csv(const RotationProfile& profile);

/// Fixed 9-decimal rendering used by every CSV writer (never "-0.000000000").
std::string format_fixed9(double value);

}  // namespace pixcode
