#include <gtest/gtest.h>

#include <random>
#include <variant>

#include "oracles.hpp"
#include "pixcode/errors.hpp"
#include "pixcode/grid_io.hpp"
#include "pixcode/matrix_core.hpp"
#include "pixcode/plotter_io.hpp"

namespace pixcode {
namespace {

std::vector<Polarity> polarities(const PlotterProgram& p) {
  std::vector<Polarity> out;
  for (const auto& c : p.commands)
    if (const auto* s = std::get_if<plot::SetPolarity>(&c)) out.push_back(s->polarity);
  return out;
}

TEST(EmitProgram, AllZeroHasNoPixels) {
  const auto p = emit_program(PixelMatrix::zeros(4));
  EXPECT_TRUE(p.commands.empty());
  EXPECT_EQ(p.energize_count(), 0);
  const std::string g = render_gcode(p);
  EXPECT_EQ(std::count(g.begin(), g.end(), '\n'), 1);
  EXPECT_EQ(g[0], ';');
}

TEST(EmitProgram, SkipsZerosAndSetsPolarity) {
  const auto p = emit_program(PixelMatrix::from_rows({{1, -1}, {0, 1}}));
  EXPECT_EQ(p.energize_count(), 3);
  EXPECT_EQ(polarities(p),
            (std::vector<Polarity>{Polarity::kNorth, Polarity::kSouth, Polarity::kNorth}));
}

TEST(EmitProgram, CommandShapePerPixel) {
  const auto p = emit_program(PixelMatrix::from_rows({{0, -1}, {0, 0}}));
  ASSERT_EQ(p.commands.size(), 5u);
  EXPECT_EQ(std::get<plot::Move>(p.commands[0]), (plot::Move{3.0, 0.0}));
  EXPECT_EQ(std::get<plot::SetPolarity>(p.commands[1]).polarity, Polarity::kSouth);
  EXPECT_TRUE(std::holds_alternative<plot::LowerZ>(p.commands[2]));
  EXPECT_EQ(std::get<plot::Energize>(p.commands[3]).dwell_ms, 700);
  EXPECT_TRUE(std::holds_alternative<plot::RaiseZ>(p.commands[4]));
}

TEST(EmitProgram, BoustrophedonOrder) {
  const auto p = emit_program(PixelMatrix::constant(3, 1));
  std::vector<std::pair<double, double>> moves;
  for (const auto& c : p.commands)
    if (const auto* m = std::get_if<plot::Move>(&c)) moves.emplace_back(m->x_mm, m->y_mm);
  const std::vector<std::pair<double, double>> expect{
      {0, 0}, {3, 0}, {6, 0}, {6, 3}, {3, 3}, {0, 3}, {0, 6}, {3, 6}, {6, 6}};
  EXPECT_EQ(moves, expect);
}

TEST(EmitProgram, Order8Dwell) {
  const auto p = emit_program(sylvester(3));
  EXPECT_EQ(p.energize_count(), 64);
  EXPECT_EQ(p.total_dwell_ms(), 44800);
  EXPECT_DOUBLE_EQ(p.total_dwell_s(), 44.8);
}

TEST(EmitProgram, RejectsBadSettings) {
  PlotterSettings s;
  s.pitch_mm = 0;
  EXPECT_THROW(emit_program(sylvester(1), s), InvalidInputError);
  s = {};
  s.dwell_s = -1;
  EXPECT_THROW(emit_program(sylvester(1), s), InvalidInputError);
}

TEST(RenderGcode, GoldenSinglePixel) {
  const std::string golden =
      read_text_file(std::filesystem::path(PIXCODE_FIXTURE_DIR) / "single_north_pixel.gcode");
  const std::string g = render_gcode(emit_program(PixelMatrix::from_rows({{1}})));
  EXPECT_EQ(g, golden);
  EXPECT_EQ(std::count(g.begin(), g.end(), '\n'), 6);
  EXPECT_EQ(render_gcode(emit_program(PixelMatrix::from_rows({{1}}))), g);
}

TEST(RenderGcode, ParseRoundTrip) {
  std::mt19937_64 rng(41);
  for (int t = 0; t < 50; ++t) {
    const auto m = oracle::from_grid(oracle::random_trits(rng, 1 + t % 10));
    PlotterSettings s;
    s.pitch_mm = 2.5;
    s.dwell_s = 0.25;
    const auto p = emit_program(m, s);
    const auto back = parse_gcode(render_gcode(p));
    EXPECT_EQ(back, p);
    EXPECT_EQ(reconstruct_matrix(back), m);
  }
}

TEST(ParseGcode, RejectsForeignText) {
  EXPECT_THROW(parse_gcode("G1 X0 Y0\n"), InvalidInputError);
  const std::string good = render_gcode(emit_program(PixelMatrix::from_rows({{1}})));
  EXPECT_THROW(parse_gcode(good + "M3\n"), InvalidInputError);
}

TEST(ReconstructMatrix, RequiresMoveAndPolarity) {
  PlotterProgram p;
  p.order = 2;
  p.commands = {plot::LowerZ{}, plot::Energize{700}, plot::RaiseZ{}};
  EXPECT_THROW(reconstruct_matrix(p), InvalidInputError);
  p.commands = {plot::Move{9.0, 0.0}, plot::SetPolarity{}, plot::LowerZ{},
                plot::Energize{700}, plot::RaiseZ{}};
  EXPECT_THROW(reconstruct_matrix(p), InvalidInputError);
}

TEST(ClassifyScan, Examples) {
  ScanGrid s{Eigen::MatrixXd(2, 2)};
  s.readings << -0.9, 0.8, 0.0, 0.1;
  const auto c = classify_scan(s);
  EXPECT_EQ(c.matrix, PixelMatrix::from_rows({{-1, 1}, {0, 0}}));
  EXPECT_EQ(c.ambiguous_cells, 2);
  EXPECT_EQ(classify_scan(s, 0.05).matrix, PixelMatrix::from_rows({{-1, 1}, {0, 1}}));
}

TEST(ClassifyScan, SeparatedDistributionsRecoverSource) {
  std::mt19937_64 rng(43);
  std::normal_distribution<double> noise(0.0, 0.15);
  for (int t = 0; t < 20; ++t) {
    const auto m = oracle::from_grid(oracle::random_binary(rng, 8));
    ScanGrid s{Eigen::MatrixXd(8, 8)};
    for (int i = 0; i < 8; ++i)
      for (int j = 0; j < 8; ++j)
        s.readings(i, j) = m(i, j) + std::clamp(noise(rng), -0.6, 0.6);
    const auto c = classify_scan(s);
    EXPECT_EQ(c.matrix, m);
    EXPECT_EQ(c.ambiguous_cells, 0);
  }
}

TEST(ClassifyScan, IdealScanOfProgram) {
  std::mt19937_64 rng(47);
  for (int t = 0; t < 20; ++t) {
    const auto m = oracle::from_grid(oracle::random_trits(rng, 6));
    EXPECT_EQ(classify_scan(ideal_scan(emit_program(m))).matrix, m);
  }
}

TEST(ScanCsv, RoundTripAndErrors) {
  ScanGrid s{Eigen::MatrixXd(2, 2)};
  s.readings << -0.5, 1.25, 0.0, 0.75;
  const auto back = parse_scan_csv(to_csv(s));
  EXPECT_TRUE(back.readings.isApprox(s.readings));
  EXPECT_THROW(parse_scan_csv("1,2\n3\n"), Error);
  EXPECT_THROW(parse_scan_csv("1,x\n3,4\n"), InvalidInputError);
}

}  // namespace
}  // namespace pixcode
