#include "pixcode/force_model.hpp"

#include <cmath>
#include <cstdlib>
#include <set>
#include <utility>

#include "pixcode/errors.hpp"
#include "pixcode/scoring.hpp"

namespace pixcode {
namespace {

double grid_at(const Eigen::MatrixXd& grid, int order, int dx, int dy) {
  if (std::abs(dx) >= order || std::abs(dy) >= order) return 0.0;
  return grid(dy + order - 1, dx + order - 1);
}

std::string grid_csv(const Eigen::MatrixXd& grid, int order) {
  std::string out = "dx,dy,force_newtons\n";
  for (int dy = -(order - 1); dy <= order - 1; ++dy) {
    for (int dx = -(order - 1); dx <= order - 1; ++dx) {
      out += std::to_string(dx) + "," + std::to_string(dy) + "," +
             format_fixed9(grid_at(grid, order, dx, dy)) + "\n";
    }
  }
  return out;
}

}  // namespace

double ForceMap::at(int dx, int dy) const {
  return grid_at(newtons, order, dx, dy);
}

double MeasurementGrid::at(int dx, int dy) const {
  return grid_at(newtons, order, dx, dy);
}

ForceMap predict_force_map(const PixelMatrix& a, const PixelMatrix& b,
                           double peak_attraction_newtons,
                           double repulsion_scale, double face_side_mm) {
  if (!(peak_attraction_newtons > 0) ||
      !std::isfinite(peak_attraction_newtons)) {
    throw InvalidInputError("peak attraction must be a positive force");
  }
  if (!(repulsion_scale > 0) || repulsion_scale > 1) {
    throw InvalidInputError("repulsion scale must lie in (0, 1]");
  }
  if (!(face_side_mm > 0)) {
    throw InvalidInputError("face side must be positive");
  }
  const InteractionMap map = cross_correlate(a, b);
  ForceMap out;
  out.order = a.order();
  out.calibration = {peak_attraction_newtons, repulsion_scale, face_side_mm};
  out.newtons = map.scores().unaryExpr([&](double s) {
    if (s < 0) return s * peak_attraction_newtons;
    if (s > 0) return s * peak_attraction_newtons * repulsion_scale;
    return 0.0;
  });
  return out;
}

double normalized_ssd(const ForceMap& predicted,
                      const MeasurementGrid& measured) {
  if (predicted.newtons.rows() != measured.newtons.rows() ||
      predicted.newtons.cols() != measured.newtons.cols()) {
    throw DimensionError("predicted and measured grids differ in size");
  }
  const double energy = measured.newtons.squaredNorm();
  if (energy == 0.0) {
    throw InvalidInputError(
        "measured grid is all zeros; normalization undefined");
  }
  return (predicted.newtons - measured.newtons).squaredNorm() / energy;
}

PressureReport pressure_report(double side_mm, double force_newtons) {
  if (!(side_mm > 0)) throw InvalidInputError("face side must be positive");
  PressureReport r;
  r.force_newtons = force_newtons;
  r.side_mm = side_mm;
  const double side_m = side_mm / 1000.0;
  r.area_m2 = side_m * side_m;
  r.pressure_pa = force_newtons / r.area_m2;
  return r;
}

std::string to_csv(const ForceMap& map) {
  return grid_csv(map.newtons, map.order);
}

std::string to_csv(const MeasurementGrid& grid) {
  return grid_csv(grid.newtons, grid.order);
}

nlohmann::json metadata_json(const ForceMap& map) {
  const double centre = map.at(0, 0);
  const auto pressure =
      pressure_report(map.calibration.face_side_mm, std::abs(centre));
  return {{"order", map.order},
          {"face_side_mm", map.calibration.face_side_mm},
          {"peak_attraction_newtons", map.calibration.peak_attraction_newtons},
          {"repulsion_scale", map.calibration.repulsion_scale},
          {"centre_force_newtons", centre},
          {"centre_pressure_pa", pressure.pressure_pa},
          {"units", "newtons"}};
}

MeasurementGrid parse_measurement_csv(std::string_view text) {
  std::vector<std::tuple<int, int, double>> rows;
  std::size_t pos = 0;
  bool header = true;
  while (pos < text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string line(text.substr(pos, nl - pos));
    pos = nl + 1;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (header) {
      if (line != "dx,dy,force_newtons") {
        throw InvalidInputError(
            "measurement CSV: expected header 'dx,dy,force_newtons'");
      }
      header = false;
      continue;
    }
    const auto c1 = line.find(',');
    const auto c2 = line.find(',', c1 == std::string::npos ? c1 : c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos) {
      throw InvalidInputError("measurement CSV: malformed row '" + line + "'");
    }
    try {
      std::size_t used = 0;
      const std::string sx = line.substr(0, c1);
      const std::string sy = line.substr(c1 + 1, c2 - c1 - 1);
      const std::string sf = line.substr(c2 + 1);
      const int dx = std::stoi(sx, &used);
      if (used != sx.size()) throw std::invalid_argument(sx);
      const int dy = std::stoi(sy, &used);
      if (used != sy.size()) throw std::invalid_argument(sy);
      const double f = std::stod(sf, &used);
      if (used != sf.size() || !std::isfinite(f)) {
        throw std::invalid_argument(sf);
      }
      rows.emplace_back(dx, dy, f);
    } catch (const std::logic_error&) {
      throw InvalidInputError("measurement CSV: malformed row '" + line + "'");
    }
  }
  if (header) throw InvalidInputError("measurement CSV: empty input");
  const auto side = static_cast<int>(std::lround(std::sqrt(rows.size())));
  if (side * side != static_cast<int>(rows.size()) || side % 2 == 0) {
    throw DimensionError("measurement CSV: row count is not (2N-1)^2");
  }
  MeasurementGrid grid;
  grid.order = (side + 1) / 2;
  grid.newtons = Eigen::MatrixXd::Zero(side, side);
  std::set<std::pair<int, int>> seen;
  for (const auto& [dx, dy, f] : rows) {
    if (std::abs(dx) >= grid.order || std::abs(dy) >= grid.order) {
      throw DimensionError("measurement CSV: offset out of range");
    }
    if (!seen.insert({dx, dy}).second) {
      throw InvalidInputError("measurement CSV: duplicate offset");
    }
    grid.newtons(dy + grid.order - 1, dx + grid.order - 1) = f;
  }
  return grid;
}

}  // namespace pixcode
