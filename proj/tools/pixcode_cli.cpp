// pixcode: design, score and export programmable magnetic pixel encodings.

#include <iostream>

#include <CLI11.hpp>

#include "cli_commands.hpp"
#include "pixcode/errors.hpp"

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitExhausted = 3;
constexpr int kExitIo = 4;

int exit_code_for(pixcode::ErrorKind kind) {
  switch (kind) {
    case pixcode::ErrorKind::kExhaustedSearch:
      return kExitExhausted;
    case pixcode::ErrorKind::kIo:
      return kExitIo;
    default:
      return kExitValidation;
  }
}

}  // namespace

int main(int argc, char** argv) {
  using namespace pixcode::cli;
  CLI::App app{"Binary pixel encodings for magnetic self-assembly"};
  app.set_version_flag("--version", PIXCODE_VERSION);
  app.require_subcommand(1);

  GenerateArgs gen;
  auto* generate = app.add_subcommand(
      "generate", "Write the Sylvester matrix of order 2^k (and row "
                  "permutations)");
  generate->add_option("-k,--order-exponent", gen.exponent, "k >= 0")
      ->required();
  generate->add_flag("--permutations", gen.permutations,
                     "Also write every distinct non-mating row permutation");
  generate->add_option("--out-dir", gen.out_dir)->required();

  SearchArgs search;
  auto* search_cmd = app.add_subcommand(
      "search", "Threshold sweep for a maximal compatible clique");
  search_cmd->add_option("--pool-dir", search.pool_dir,
                         "Directory of .grid files")
      ->required();
  search_cmd->add_option("--seed-threshold", search.seed, "S_L floor and "
                         "initial S_G threshold")
      ->capture_default_str();
  search_cmd->add_option("--step", search.step)->capture_default_str();
  search_cmd->add_option("--target-size", search.target)
      ->capture_default_str();
  search_cmd->add_option("--local-mode", search.local_mode,
                         "center or full")
      ->capture_default_str();
  search_cmd->add_option("--threads", search.threads, "0 = hardware")
      ->capture_default_str();
  search_cmd->add_option("--out-dir", search.out_dir)->required();

  ScoreArgs score;
  auto* score_cmd =
      app.add_subcommand("score", "Translation map and rotation profile");
  score_cmd->add_option("a", score.a)->required();
  score_cmd->add_option("b", score.b)->required();
  score_cmd->add_flag("--fine-rotation", score.fine_rotation,
                      "Also write the -180..180 deg profile");
  score_cmd->add_option("--out-dir", score.out_dir)->required();

  AssembleArgs assemble;
  auto* assemble_cmd = app.add_subcommand(
      "assemble", "Assign a clique to the faces of the 2x2x2 meta cube");
  assemble_cmd->add_option("--report", assemble.report,
                           "clique_report.json from search");
  assemble_cmd->add_option("--clique-dir", assemble.clique_dir,
                           "Directory of clique .grid files");
  assemble_cmd->add_option("--local-mode", assemble.local_mode)
      ->capture_default_str();
  assemble_cmd->add_option("--out-dir", assemble.out_dir)->required();

  GcodeArgs gcode;
  auto* gcode_cmd =
      app.add_subcommand("gcode", "Emit magnetic plotter programs");
  gcode_cmd->add_option("--assignment", gcode.assignment,
                        "assignment.json from assemble");
  gcode_cmd->add_option("--grid", gcode.grid, "A single grid file");
  gcode_cmd->add_option("--pitch-mm", gcode.pitch_mm)->capture_default_str();
  gcode_cmd->add_option("--z-lift-mm", gcode.z_lift_mm)
      ->capture_default_str();
  gcode_cmd->add_option("--dwell-s", gcode.dwell_s)->capture_default_str();
  gcode_cmd->add_option("--out-dir", gcode.out_dir)->required();

  ForceArgs force;
  auto* force_cmd =
      app.add_subcommand("force", "Predict the force map of a face pair");
  force_cmd->add_option("a", force.a)->required();
  force_cmd->add_option("b", force.b)->required();
  force_cmd->add_option("--peak-newtons", force.peak_newtons,
                        "Measured centred attraction")
      ->required();
  force_cmd->add_option("--repulsion-scale", force.repulsion_scale)
      ->capture_default_str();
  force_cmd->add_option("--face-side-mm", force.face_side_mm)
      ->capture_default_str();
  force_cmd->add_option("--measured", force.measured,
                        "Measured force CSV for SSD");
  force_cmd->add_option("--out-dir", force.out_dir)->required();

  DnaArgs dna;
  auto* dna_cmd =
      app.add_subcommand("dna", "Translate an encoding into DNA edge codes");
  dna_cmd->add_option("--grid", dna.grid)->required();
  dna_cmd->add_option("--pool", dna.pool, "One ACGT sequence per line")
      ->required();
  dna_cmd->add_option("--traversal", dna.traversal, "row:i or column:j")
      ->capture_default_str();
  dna_cmd->add_option("--mate-convention", dna.mate_convention,
                      "literal or mate")
      ->capture_default_str();
  dna_cmd->add_option("--out-dir", dna.out_dir)->required();

  ScanArgs scan;
  auto* scan_cmd =
      app.add_subcommand("scan", "Classify a hall-sensor scan into a grid");
  scan_cmd->add_option("--scan", scan.scan)->required();
  scan_cmd->add_option("--dead-band", scan.dead_band)->capture_default_str();
  scan_cmd->add_option("--out-dir", scan.out_dir)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitValidation;
  }

  try {
    if (*generate) return run_generate(gen);
    if (*search_cmd) return run_search(search);
    if (*score_cmd) return run_score(score);
    if (*assemble_cmd) return run_assemble(assemble);
    if (*gcode_cmd) return run_gcode(gcode);
    if (*force_cmd) return run_force(force);
    if (*dna_cmd) return run_dna(dna);
    if (*scan_cmd) return run_scan(scan);
  } catch (const pixcode::ExhaustedSearchError& e) {
    std::cerr << "error: " << e.what() << "\nbest threshold "
              << e.best_threshold() << ", census:";
    for (const auto& [size, count] : e.best_census()) {
      std::cerr << " " << size << ":" << count;
    }
    std::cerr << "\n";
    return kExitExhausted;
  } catch (const pixcode::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  }
  return kExitValidation;
}
