#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace pixcode::cli {

struct GenerateArgs {
  int exponent = 3;
  bool permutations = false;
  std::filesystem::path out_dir;
};

struct SearchArgs {
  std::filesystem::path pool_dir;
  double seed = -0.2;
  double step = 0.02;
  std::size_t target = 12;
  std::string local_mode = "full";
  unsigned threads = 0;
  std::filesystem::path out_dir;
};

struct ScoreArgs {
  std::filesystem::path a;
  std::filesystem::path b;
  bool fine_rotation = false;
  std::filesystem::path out_dir;
};

struct AssembleArgs {
  std::filesystem::path report;
  std::filesystem::path clique_dir;
  std::string local_mode = "full";
  std::filesystem::path out_dir;
};

struct GcodeArgs {
  std::filesystem::path assignment;
  std::filesystem::path grid;
  double pitch_mm = 3.0;
  double z_lift_mm = 3.0;
  double dwell_s = 0.7;
  std::filesystem::path out_dir;
};

struct ForceArgs {
  std::filesystem::path a;
  std::filesystem::path b;
  double peak_newtons = 0.0;
  double repulsion_scale = 0.09;
  double face_side_mm = 25.0;
  std::filesystem::path measured;
  std::filesystem::path out_dir;
};

struct DnaArgs {
  std::filesystem::path grid;
  std::filesystem::path pool;
  std::string traversal = "row:0";
  std::string mate_convention = "literal";
  std::filesystem::path out_dir;
};

struct ScanArgs {
  std::filesystem::path scan;
  double dead_band = 0.1;
  std::filesystem::path out_dir;
};

/// Each returns the process exit status; library errors propagate.
int run_generate(const GenerateArgs& args);
int run_search(const SearchArgs& args);
int run_score(const ScoreArgs& args);
int run_assemble(const AssembleArgs& args);
int run_gcode(const GcodeArgs& args);
int run_force(const ForceArgs& args);
int run_dna(const DnaArgs& args);
int run_scan(const ScanArgs& args);

}  // namespace pixcode::cli
