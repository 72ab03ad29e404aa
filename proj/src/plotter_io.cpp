#include "pixcode/plotter_io.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "pixcode/errors.hpp"

namespace pixcode {
namespace {

constexpr std::string_view kHeaderPrefix = "; pixcode plotter ";

std::string mm(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  std::string s(buf);
  if (s == "-0.000") s = "0.000";
  return s;
}

double parse_number(const std::string& s, const char* what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size() || !std::isfinite(v)) throw std::invalid_argument(s);
    return v;
  } catch (const std::logic_error&) {
    throw InvalidInputError(std::string("G-code: bad ") + what + " '" + s +
                            "'");
  }
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  return out;
}

}  // namespace

int PlotterSettings::dwell_ms() const {
  return static_cast<int>(std::lround(dwell_s * 1000.0));
}

int PlotterProgram::energize_count() const {
  int n = 0;
  for (const auto& c : commands) n += std::holds_alternative<plot::Energize>(c);
  return n;
}

long PlotterProgram::total_dwell_ms() const {
  long total = 0;
  for (const auto& c : commands) {
    if (const auto* e = std::get_if<plot::Energize>(&c)) total += e->dwell_ms;
  }
  return total;
}

PlotterProgram emit_program(const PixelMatrix& m,
                            const PlotterSettings& settings) {
  if (!(settings.pitch_mm > 0) || !(settings.z_lift_mm > 0) ||
      !(settings.dwell_s > 0)) {
    throw InvalidInputError("pitch, lift and dwell must be positive");
  }
  if (settings.dwell_ms() < 1) {
    throw InvalidInputError("dwell must be at least 1 ms");
  }
  PlotterProgram p;
  p.settings = settings;
  p.order = m.order();
  for (int i = 0; i < m.order(); ++i) {
    const bool forward = (i % 2) == 0;
    for (int step = 0; step < m.order(); ++step) {
      const int j = forward ? step : m.order() - 1 - step;
      const Trit v = m(i, j);
      if (v == 0) continue;
      p.commands.emplace_back(
          plot::Move{settings.origin_x_mm + j * settings.pitch_mm,
                     settings.origin_y_mm + i * settings.pitch_mm});
      p.commands.emplace_back(plot::SetPolarity{
          v > 0 ? Polarity::kNorth : Polarity::kSouth});
      p.commands.emplace_back(plot::LowerZ{});
      p.commands.emplace_back(plot::Energize{settings.dwell_ms()});
      p.commands.emplace_back(plot::RaiseZ{});
    }
  }
  return p;
}

std::string render_gcode(const PlotterProgram& program) {
  const auto& s = program.settings;
  std::string out(kHeaderPrefix);
  out += "order=" + std::to_string(program.order) +
         " pitch_mm=" + mm(s.pitch_mm) + " z_lift_mm=" + mm(s.z_lift_mm) +
         " dwell_s=" + mm(s.dwell_s) + " origin_mm=" + mm(s.origin_x_mm) +
         "," + mm(s.origin_y_mm) + "\n";
  for (const auto& cmd : program.commands) {
    std::visit(
        [&](const auto& c) {
          using T = std::decay_t<decltype(c)>;
          if constexpr (std::is_same_v<T, plot::Move>) {
            out += "G0 X" + mm(c.x_mm) + " Y" + mm(c.y_mm) + "\n";
          } else if constexpr (std::is_same_v<T, plot::SetPolarity>) {
            out += c.polarity == Polarity::kNorth ? ";POL N\n" : ";POL S\n";
          } else if constexpr (std::is_same_v<T, plot::LowerZ>) {
            out += "G0 Z" + mm(-s.z_lift_mm) + "\n";
          } else if constexpr (std::is_same_v<T, plot::RaiseZ>) {
            out += "G0 Z" + mm(s.z_lift_mm) + "\n";
          } else {
            out += "G4 P" + std::to_string(c.dwell_ms) + "\n";
          }
        },
        cmd);
  }
  return out;
}

PlotterProgram parse_gcode(std::string_view text) {
  std::vector<std::string> lines;
  {
    std::size_t pos = 0;
    while (pos < text.size()) {
      std::size_t nl = text.find('\n', pos);
      if (nl == std::string_view::npos) nl = text.size();
      lines.emplace_back(text.substr(pos, nl - pos));
      pos = nl + 1;
    }
  }
  if (lines.empty() || !lines[0].starts_with(kHeaderPrefix)) {
    throw InvalidInputError("G-code: missing pixcode header");
  }
  PlotterProgram p;
  for (const auto& field :
       split(lines[0].substr(kHeaderPrefix.size()), ' ')) {
    const auto eq = field.find('=');
    if (eq == std::string::npos) {
      throw InvalidInputError("G-code: bad header field '" + field + "'");
    }
    const std::string key = field.substr(0, eq);
    const std::string val = field.substr(eq + 1);
    if (key == "order") {
      p.order = static_cast<int>(parse_number(val, "order"));
    } else if (key == "pitch_mm") {
      p.settings.pitch_mm = parse_number(val, "pitch");
    } else if (key == "z_lift_mm") {
      p.settings.z_lift_mm = parse_number(val, "lift");
    } else if (key == "dwell_s") {
      p.settings.dwell_s = parse_number(val, "dwell");
    } else if (key == "origin_mm") {
      const auto parts = split(val, ',');
      if (parts.size() != 2) throw InvalidInputError("G-code: bad origin");
      p.settings.origin_x_mm = parse_number(parts[0], "origin");
      p.settings.origin_y_mm = parse_number(parts[1], "origin");
    } else {
      throw InvalidInputError("G-code: unknown header field '" + key + "'");
    }
  }
  const std::string lower = "G0 Z" + mm(-p.settings.z_lift_mm);
  const std::string raise = "G0 Z" + mm(p.settings.z_lift_mm);
  for (std::size_t n = 1; n < lines.size(); ++n) {
    const std::string& line = lines[n];
    if (line == ";POL N") {
      p.commands.emplace_back(plot::SetPolarity{Polarity::kNorth});
    } else if (line == ";POL S") {
      p.commands.emplace_back(plot::SetPolarity{Polarity::kSouth});
    } else if (line == lower) {
      p.commands.emplace_back(plot::LowerZ{});
    } else if (line == raise) {
      p.commands.emplace_back(plot::RaiseZ{});
    } else if (line.starts_with("G4 P")) {
      const std::string ms = line.substr(4);
      const double v = parse_number(ms, "dwell");
      if (v != std::floor(v) || v < 0) {
        throw InvalidInputError("G-code: dwell must be whole milliseconds");
      }
      p.commands.emplace_back(plot::Energize{static_cast<int>(v)});
    } else if (line.starts_with("G0 X")) {
      const auto y = line.find(" Y");
      if (y == std::string::npos) {
        throw InvalidInputError("G-code: move without Y: '" + line + "'");
      }
      p.commands.emplace_back(
          plot::Move{parse_number(line.substr(4, y - 4), "x"),
                     parse_number(line.substr(y + 2), "y")});
    } else {
      throw InvalidInputError("G-code: unexpected line " + std::to_string(n) +
                              ": '" + line + "'");
    }
  }
  return p;
}

PixelMatrix reconstruct_matrix(const PlotterProgram& program) {
  const int n = program.order;
  if (n < 0) throw InvalidInputError("negative order");
  TritGrid cells = TritGrid::Zero(n, n);
  const auto& s = program.settings;
  bool have_pos = false;
  bool have_pol = false;
  int row = 0;
  int col = 0;
  Polarity pol = Polarity::kNorth;
  for (const auto& cmd : program.commands) {
    if (const auto* m = std::get_if<plot::Move>(&cmd)) {
      const double fc = (m->x_mm - s.origin_x_mm) / s.pitch_mm;
      const double fr = (m->y_mm - s.origin_y_mm) / s.pitch_mm;
      col = static_cast<int>(std::lround(fc));
      row = static_cast<int>(std::lround(fr));
      if (std::abs(fc - col) > 1e-6 || std::abs(fr - row) > 1e-6) {
        throw InvalidInputError("G-code: move off the pixel lattice");
      }
      have_pos = true;
      have_pol = false;
    } else if (const auto* sp = std::get_if<plot::SetPolarity>(&cmd)) {
      pol = sp->polarity;
      have_pol = true;
    } else if (std::holds_alternative<plot::Energize>(cmd)) {
      if (!have_pos || !have_pol) {
        throw InvalidInputError("G-code: pulse without position or polarity");
      }
      if (row < 0 || row >= n || col < 0 || col >= n) {
        throw InvalidInputError("G-code: pulse outside the grid");
      }
      cells(row, col) = pol == Polarity::kNorth ? 1 : -1;
    }
  }
  return PixelMatrix(std::move(cells));
}

ScanClassification classify_scan(const ScanGrid& scan, double dead_band) {
  if (scan.readings.rows() != scan.readings.cols()) {
    throw DimensionError("scan grid must be square");
  }
  if (!(dead_band >= 0)) throw InvalidInputError("dead band must be >= 0");
  const auto n = scan.readings.rows();
  TritGrid cells(n, n);
  int ambiguous = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const double r = scan.readings(i, j);
      if (!std::isfinite(r)) throw InvalidInputError("non-finite scan value");
      if (r > dead_band) {
        cells(i, j) = 1;
      } else if (r < -dead_band) {
        cells(i, j) = -1;
      } else {
        cells(i, j) = 0;
        ++ambiguous;
      }
    }
  }
  return {PixelMatrix(std::move(cells)), ambiguous};
}

ScanGrid ideal_scan(const PlotterProgram& program) {
  return {reconstruct_matrix(program).cells().cast<double>()};
}

ScanGrid parse_scan_csv(std::string_view text) {
  std::vector<std::vector<double>> rows;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string line(text.substr(pos, nl - pos));
    pos = nl + 1;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<double> row;
    for (const auto& tok : split(line, ',')) {
      try {
        std::size_t used = 0;
        const double v = std::stod(tok, &used);
        if (used != tok.size() || !std::isfinite(v)) {
          throw std::invalid_argument(tok);
        }
        row.push_back(v);
      } catch (const std::logic_error&) {
        throw InvalidInputError("scan CSV: bad value '" + tok + "'");
      }
    }
    rows.push_back(std::move(row));
  }
  const auto n = static_cast<Eigen::Index>(rows.size());
  if (n == 0) throw InvalidInputError("scan CSV: empty");
  ScanGrid scan{Eigen::MatrixXd(n, n)};
  for (Eigen::Index i = 0; i < n; ++i) {
    if (static_cast<Eigen::Index>(rows[i].size()) != n) {
      throw DimensionError("scan CSV: expected " + std::to_string(n) +
                           " values on line " + std::to_string(i + 1));
    }
    for (Eigen::Index j = 0; j < n; ++j) scan.readings(i, j) = rows[i][j];
  }
  return scan;
}

std::string to_csv(const ScanGrid& scan) {
  std::string out;
  char buf[64];
  for (Eigen::Index i = 0; i < scan.readings.rows(); ++i) {
    for (Eigen::Index j = 0; j < scan.readings.cols(); ++j) {
      if (j) out += ',';
      std::snprintf(buf, sizeof buf, "%.6f", scan.readings(i, j));
      out += buf;
    }
    out += '\n';
  }
  return out;
}

}  // namespace pixcode
