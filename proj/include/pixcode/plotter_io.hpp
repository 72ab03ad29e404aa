#pragma once

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "pixcode/pixel_matrix.hpp"

namespace pixcode {

enum class Polarity { kNorth, kSouth };

namespace plot {

struct Move {
  double x_mm = 0.0;
  double y_mm = 0.0;
  bool operator==(const Move&) const = default;
};
struct LowerZ {
  bool operator==(const LowerZ&) const = default;
};
struct RaiseZ {
  bool operator==(const RaiseZ&) const = default;
};
struct SetPolarity {
  Polarity polarity = Polarity::kNorth;
  bool operator==(const SetPolarity&) const = default;
};
/// Timed pulse: the electromagnet is on for `dwell_ms`, then off.
struct Energize {
  int dwell_ms = 0;
  bool operator==(const Energize&) const = default;
};

}  // namespace plot

using PlotCommand = std::variant<plot::Move, plot::LowerZ, plot::RaiseZ,
                                 plot::SetPolarity, plot::Energize>;

/// Plotter frame: origin at the top-left pixel, +x to the right along a
/// row, +y down the rows.
struct PlotterSettings {
  double pitch_mm = 3.0;
  double z_lift_mm = 3.0;
  double dwell_s = 0.7;
  double origin_x_mm = 0.0;
  double origin_y_mm = 0.0;

  int dwell_ms() const;
  bool operator==(const PlotterSettings&) const = default;
};

struct PlotterProgram {
  PlotterSettings settings;
  int order = 0;
  std::vector<PlotCommand> commands;

  int energize_count() const;
  /// Exact sum of all pulse lengths.
  long total_dwell_ms() const;
  double total_dwell_s() const { return total_dwell_ms() / 1000.0; }
  bool operator==(const PlotterProgram&) const = default;
};

/// Writes every nonzero pixel: move, set polarity (+1 North, -1 South),
/// lower, pulse, raise. Rows are visited top to bottom, alternating
/// direction; zero cells produce no commands.
PlotterProgram emit_program(const PixelMatrix& m,
                            const PlotterSettings& settings = {});

/// One command per line after a single header comment:
///   G0 X<mm> Y<mm> | ;POL N | ;POL S | G0 Z-<lift> | G4 P<ms> | G0 Z<lift>
/// Z moves are relative steps. Millimetres carry 3 decimals.
std::string render_gcode(const PlotterProgram& program);

/// Inverse of render_gcode. Throws InvalidInputError on anything it did not
/// write.
PlotterProgram parse_gcode(std::string_view text);

/// Rebuilds the matrix a program writes; unvisited pixels are 0. Throws
/// InvalidInputError when a pulse is not preceded by a move and a polarity
/// or lands outside the grid.
PixelMatrix reconstruct_matrix(const PlotterProgram& program);

/// Normalized hall-sensor readings, one per pixel.
struct ScanGrid {
  Eigen::MatrixXd readings;
};

struct ScanClassification {
  PixelMatrix matrix;
  /// Cells inside the dead band (classified as 0).
  int ambiguous_cells = 0;
};

inline constexpr double kDefaultDeadBand = 0.1;

/// > +dead_band -> +1, < -dead_band -> -1, otherwise 0 (and counted).
ScanClassification classify_scan(const ScanGrid& scan,
                                 double dead_band = kDefaultDeadBand);

/// Noise-free scan model of a written sheet: +1 for North pulses, -1 for
/// South, 0 where nothing was written.
ScanGrid ideal_scan(const PlotterProgram& program);

/// N lines of N comma-separated reals.
ScanGrid parse_scan_csv(std::string_view text);
std::string to_csv(const ScanGrid& scan);

}  // namespace pixcode
