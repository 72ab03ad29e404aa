#pragma once

#include <string>
#include <string_view>

#include <Eigen/Dense>
#include <json.hpp>

#include "pixcode/pixel_matrix.hpp"

namespace pixcode {

/// Empirical correction applied to predicted repulsion.
inline constexpr double kDefaultRepulsionScale = 0.09;

struct ForceCalibration {
  double peak_attraction_newtons = 1.0;
  double repulsion_scale = kDefaultRepulsionScale;
  double face_side_mm = 25.0;
};

/// Predicted force (N) for every translation, indexed like InteractionMap:
/// row dy + N - 1, column dx + N - 1.
struct ForceMap {
  int order = 0;
  Eigen::MatrixXd newtons;
  ForceCalibration calibration;

  double at(int dx, int dy) const;
};

/// Measured forces (N) on the same (2N-1)x(2N-1) offset grid.
struct MeasurementGrid {
  int order = 0;
  Eigen::MatrixXd newtons;

  double at(int dx, int dy) const;
};

/// Attraction (negative scores) is scaled by the peak attraction, repulsion
/// additionally by `repulsion_scale`. Throws InvalidInputError unless
/// peak > 0 and the scale lies in (0, 1].
ForceMap predict_force_map(const PixelMatrix& a, const PixelMatrix& b,
                           double peak_attraction_newtons,
                           double repulsion_scale = kDefaultRepulsionScale,
                           double face_side_mm = 25.0);

/// sum (p - m)^2 / sum m^2. Throws DimensionError on a size mismatch and
/// InvalidInputError when the measured grid is all zeros.
double normalized_ssd(const ForceMap& predicted,
                      const MeasurementGrid& measured);

struct PressureReport {
  double force_newtons = 0.0;
  double side_mm = 0.0;
  double area_m2 = 0.0;
  double pressure_pa = 0.0;
};

/// Force spread over a square face of side `side_mm`.
PressureReport pressure_report(double side_mm, double force_newtons);

/// "dx,dy,force_newtons" CSV, dy outer loop, 9 decimals.
std::string to_csv(const ForceMap& map);
nlohmann::json metadata_json(const ForceMap& map);

/// Reads the measurement CSV. Every offset of a (2N-1)^2 grid must appear
/// exactly once; N is inferred from the row count.
MeasurementGrid parse_measurement_csv(std::string_view text);
std::string to_csv(const MeasurementGrid& grid);

}  // namespace pixcode
