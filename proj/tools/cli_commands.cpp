#include "cli_commands.hpp"

#include <algorithm>
#include <cstdio>
#include <iostream>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "pixcode/assembly_design.hpp"
#include "pixcode/clique_search.hpp"
#include "pixcode/dna_codec.hpp"
#include "pixcode/errors.hpp"
#include "pixcode/force_model.hpp"
#include "pixcode/grid_io.hpp"
#include "pixcode/manifest.hpp"
#include "pixcode/matrix_core.hpp"
#include "pixcode/plotter_io.hpp"
#include "pixcode/scoring.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace pixcode::cli {
namespace {

// Holds every output in memory until the command has validated all its
// inputs and finished computing; nothing touches the disk before commit().
class Staging {
 public:
  Staging(std::string subcommand, fs::path out_dir)
      : out_dir_(std::move(out_dir)) {
    manifest_.subcommand = std::move(subcommand);
  }

  RunManifest& manifest() { return manifest_; }

  void input(const fs::path& p) { manifest_.inputs.push_back(p.string()); }

  void add(const std::string& name, std::string text) {
    manifest_.outputs.push_back(name);
    files_.emplace_back(name, std::move(text));
  }

  /// JSON documents embed the manifest; it is filled in at commit time so
  /// it lists every output.
  void add_json(const std::string& name, json doc) {
    manifest_.outputs.push_back(name);
    json_docs_.emplace_back(files_.size(), std::move(doc));
    files_.emplace_back(name, std::string{});
  }

  void commit() {
    if (out_dir_.empty()) throw InvalidInputError("--out-dir is required");
    manifest_.outputs.push_back("manifest.json");
    const json m = manifest_.to_json();
    for (auto& [index, doc] : json_docs_) {
      doc["manifest"] = m;
      files_[index].second = doc.dump(2) + "\n";
    }
    files_.emplace_back("manifest.json", m.dump(2) + "\n");
    for (const auto& [name, text] : files_) {
      const fs::path path = out_dir_ / name;
      std::error_code ec;
      fs::create_directories(path.parent_path(), ec);
      if (ec) {
        throw IoError("cannot create directory " +
                      path.parent_path().string() + ": " + ec.message());
      }
      write_text_file(path, text);
    }
  }

 private:
  fs::path out_dir_;
  RunManifest manifest_;
  std::vector<std::pair<std::string, std::string>> files_;
  std::vector<std::pair<std::size_t, json>> json_docs_;
};

void require_out_dir(const fs::path& dir) {
  if (dir.empty()) throw InvalidInputError("--out-dir is required");
  if (fs::exists(dir) && !fs::is_directory(dir)) {
    throw IoError("output path is not a directory: " + dir.string());
  }
}

std::string indexed_name(const char* prefix, std::size_t i, int width,
                         const char* suffix) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%s%0*zu%s", prefix, width, i, suffix);
  return buf;
}

// Grid files of a directory, sorted by name for a stable vertex order.
std::vector<fs::path> grid_files_in(const fs::path& dir) {
  if (!fs::is_directory(dir)) {
    throw IoError("not a directory: " + dir.string());
  }
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".grid") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  return files;
}

PixelMatrix read_binary_grid(const fs::path& path) {
  PixelMatrix m = read_grid_file(path);
  try {
    require_binary(m, path.string().c_str());
  } catch (const Error& e) {
    throw InvalidInputError(path.string() + ": " + e.what());
  }
  return m;
}

json settings_json(const PlotterSettings& s) {
  return {{"pitch_mm", s.pitch_mm},
          {"z_lift_mm", s.z_lift_mm},
          {"dwell_s", s.dwell_s}};
}

}  // namespace

int run_generate(const GenerateArgs& args) {
  require_out_dir(args.out_dir);
  const PixelMatrix h = sylvester(args.exponent);
  Staging out("generate", args.out_dir);
  out.manifest().parameters = {{"order_exponent", args.exponent},
                               {"permutations", args.permutations}};
  const std::string base = "sylvester_k" + std::to_string(args.exponent);
  out.add(base + ".grid", to_grid_text(h));

  std::size_t written = 0;
  if (args.permutations) {
    constexpr int kMaxPermutationOrder = 8;
    if (h.order() > kMaxPermutationOrder) {
      throw CapacityError("row permutations of order " +
                          std::to_string(h.order()) +
                          " exceed the supported order " +
                          std::to_string(kMaxPermutationOrder));
    }
    std::vector<PixelMatrix> pool;
    for (const PixelMatrix& m : row_permutations(h)) pool.push_back(m);
    const auto kept = distinct_non_mating(pool);
    for (std::size_t i : kept) {
      out.add(indexed_name("perm/perm_", i, 5, ".grid"),
              to_grid_text(pool[i]));
    }
    written = kept.size();
    std::cout << "permutations: " << pool.size() << " generated, "
              << written << " distinct non-mating written to "
              << (args.out_dir / "perm").string() << "\n";
  }
  out.manifest().parameters["permutation_files"] = written;
  out.commit();
  std::cout << "sylvester order " << h.order() << " written to "
            << (args.out_dir / (base + ".grid")).string() << "\n";
  return 0;
}

int run_search(const SearchArgs& args) {
  require_out_dir(args.out_dir);
  SweepOptions opts;
  opts.seed = args.seed;
  opts.step = args.step;
  opts.target_size = args.target;
  opts.local_mode = parse_local_mode(args.local_mode);
  opts.threads = args.threads;
  if (!(opts.step > 0.0)) throw InvalidInputError("--step must be positive");
  if (opts.target_size == 0) {
    throw InvalidInputError("--target-size must be at least 1");
  }

  const auto files = grid_files_in(args.pool_dir);
  if (files.empty()) {
    throw InvalidInputError("no .grid files in " + args.pool_dir.string());
  }
  std::vector<PixelMatrix> all;
  all.reserve(files.size());
  for (const auto& f : files) all.push_back(read_binary_grid(f));
  for (const auto& m : all) {
    if (m.order() != all.front().order()) {
      throw DimensionError("pool mixes orders " +
                           std::to_string(all.front().order()) + " and " +
                           std::to_string(m.order()));
    }
  }

  const auto kept = distinct_non_mating(all);
  std::vector<PixelMatrix> pool;
  std::vector<std::string> names;
  for (std::size_t i : kept) {
    pool.push_back(all[i]);
    names.push_back(files[i].filename().string());
  }

  const CliqueReport report = threshold_sweep(pool, opts);

  Staging out("search", args.out_dir);
  out.input(args.pool_dir);
  out.manifest().parameters = {{"seed_threshold", opts.seed},
                               {"step", opts.step},
                               {"target_size", opts.target_size},
                               {"local_mode", to_string(opts.local_mode)},
                               {"pool_files", files.size()},
                               {"pool_after_dedup", pool.size()}};
  std::vector<std::string> selected_files;
  for (std::size_t k = 0; k < report.selected.size(); ++k) {
    const std::string name = indexed_name("clique/clique_", k, 2, ".grid");
    out.add(name, to_grid_text(pool[report.selected[k]]));
    selected_files.push_back(name);
  }
  out.add_json("clique_report.json",
               to_json(report, names, selected_files));
  out.commit();

  std::cout << "threshold " << format_fixed9(report.threshold)
            << " max clique " << report.max_clique_size << " ("
            << report.cliques_at_max << " at max)";
  if (report.combined_score) {
    std::cout << " combined score " << format_fixed9(*report.combined_score);
  }
  std::cout << "\n";
  return 0;
}

int run_score(const ScoreArgs& args) {
  require_out_dir(args.out_dir);
  const PixelMatrix a = read_binary_grid(args.a);
  const PixelMatrix b = read_binary_grid(args.b);
  require_same_order(a, b);

  Staging out("score", args.out_dir);
  out.input(args.a);
  out.input(args.b);
  out.manifest().parameters = {{"fine_rotation", args.fine_rotation}};
  const InteractionMap map = cross_correlate(a, b);
  out.add("translation.csv", to_csv(map));
  std::cout << "centered " << format_fixed9(map.at(0, 0)) << " min "
            << format_fixed9(map.scores().minCoeff()) << " max "
            << format_fixed9(map.scores().maxCoeff()) << "\n";
  if (args.fine_rotation) {
    const RotationProfile profile = rotation_profile(a, b);
    out.add("rotation.csv", to_csv(profile));
  }
  out.commit();
  return 0;
}

int run_assemble(const AssembleArgs& args) {
  require_out_dir(args.out_dir);
  const LocalMode mode = parse_local_mode(args.local_mode);
  std::vector<fs::path> files;
  if (!args.report.empty() == !args.clique_dir.empty()) {
    throw InvalidInputError("give exactly one of --report or --clique-dir");
  }
  if (!args.report.empty()) {
    const json report = json::parse(read_text_file(args.report), nullptr,
                                    /*allow_exceptions=*/false);
    if (report.is_discarded() || !report.contains("selected") ||
        !report["selected"].is_array()) {
      throw InvalidInputError(args.report.string() +
                              ": not a clique report");
    }
    for (const auto& entry : report["selected"]) {
      if (!entry.is_object() || !entry.contains("grid_file") ||
          !entry["grid_file"].is_string()) {
        throw InvalidInputError(args.report.string() +
                                ": selected entries need a grid_file");
      }
      files.push_back(args.report.parent_path() /
                      entry["grid_file"].get<std::string>());
    }
  } else {
    files = grid_files_in(args.clique_dir);
  }
  std::vector<PixelMatrix> clique;
  for (const auto& f : files) clique.push_back(read_binary_grid(f));

  const FaceAssignment assignment =
      assign_encodings(metacube_topology(), clique);
  const FluidWindow window = fluid_window(assignment, mode);

  Staging out("assemble", args.out_dir);
  if (!args.report.empty()) out.input(args.report);
  for (const auto& f : files) out.input(f);
  out.manifest().parameters = {{"topology", "metacube"},
                               {"local_mode", to_string(mode)}};
  std::map<FaceKey, std::string> grid_files;
  for (const auto& [key, enc] : assignment.faces) {
    if (enc.blank()) continue;
    const std::string name = "faces/" + face_file_name(key);
    out.add(name, to_grid_text(enc.matrix));
    grid_files[key] = name;
  }
  out.add_json("assignment.json", to_json(assignment, window, grid_files));
  out.commit();

  std::cout << "programmed faces " << assignment.programmed_count()
            << ", blank faces " << assignment.blank_count()
            << ", fluid window (" << format_fixed9(window.lo) << ", "
            << format_fixed9(window.hi) << ")\n";
  return 0;
}

int run_gcode(const GcodeArgs& args) {
  require_out_dir(args.out_dir);
  PlotterSettings settings;
  settings.pitch_mm = args.pitch_mm;
  settings.z_lift_mm = args.z_lift_mm;
  settings.dwell_s = args.dwell_s;

  std::vector<std::pair<std::string, fs::path>> jobs;
  if (!args.assignment.empty() == !args.grid.empty()) {
    throw InvalidInputError("give exactly one of --assignment or --grid");
  }
  if (!args.grid.empty()) {
    jobs.emplace_back(args.grid.stem().string() + ".gcode", args.grid);
  } else {
    const json doc = json::parse(read_text_file(args.assignment), nullptr,
                                 /*allow_exceptions=*/false);
    if (doc.is_discarded() || !doc.contains("modules") ||
        !doc["modules"].is_array()) {
      throw InvalidInputError(args.assignment.string() +
                              ": not an assignment document");
    }
    for (const auto& module : doc["modules"]) {
      for (const auto& face : module.value("faces", json::array())) {
        if (!face.contains("grid_file") || !face["grid_file"].is_string()) {
          continue;
        }
        const fs::path grid = args.assignment.parent_path() /
                              face["grid_file"].get<std::string>();
        jobs.emplace_back("gcode/" + grid.stem().string() + ".gcode", grid);
      }
    }
  }

  Staging out("gcode", args.out_dir);
  out.manifest().parameters = settings_json(settings);
  if (!args.assignment.empty()) out.input(args.assignment);
  int pulses = 0;
  for (const auto& [name, grid] : jobs) {
    const PixelMatrix m = read_grid_file(grid);
    const PlotterProgram program = emit_program(m, settings);
    pulses += program.energize_count();
    out.input(grid);
    out.add(name, render_gcode(program));
  }
  out.commit();
  std::cout << jobs.size() << " G-code files, " << pulses
            << " pixels written\n";
  return 0;
}

int run_force(const ForceArgs& args) {
  require_out_dir(args.out_dir);
  const PixelMatrix a = read_binary_grid(args.a);
  const PixelMatrix b = read_binary_grid(args.b);
  require_same_order(a, b);
  const ForceMap map = predict_force_map(a, b, args.peak_newtons,
                                         args.repulsion_scale,
                                         args.face_side_mm);
  json meta = metadata_json(map);
  const PressureReport peak =
      pressure_report(args.face_side_mm, -map.newtons.minCoeff());
  meta["peak_attraction_pressure_pa"] = peak.pressure_pa;

  Staging out("force", args.out_dir);
  out.input(args.a);
  out.input(args.b);
  if (!args.measured.empty()) {
    const MeasurementGrid measured =
        parse_measurement_csv(read_text_file(args.measured));
    const double ssd = normalized_ssd(map, measured);
    meta["normalized_ssd"] = ssd;
    out.input(args.measured);
    std::cout << "normalized SSD " << format_fixed9(ssd) << "\n";
  }
  out.manifest().parameters = {{"peak_newtons", args.peak_newtons},
                               {"repulsion_scale", args.repulsion_scale},
                               {"face_side_mm", args.face_side_mm}};
  out.add("force_map.csv", to_csv(map));
  out.add_json("force_map.json", meta);
  out.commit();
  std::cout << "centered " << format_fixed9(map.at(0, 0)) << " N, "
            << format_fixed9(peak.pressure_pa) << " Pa at peak\n";
  return 0;
}

int run_dna(const DnaArgs& args) {
  require_out_dir(args.out_dir);
  const PixelMatrix m = read_binary_grid(args.grid);
  const auto pool = parse_sequence_pool(read_text_file(args.pool));
  const EdgeTraversal traversal = parse_traversal(args.traversal);
  const MateConvention convention =
      parse_mate_convention(args.mate_convention);

  const auto bits = edge_bits(m, traversal);
  const auto mate_bits = edge_bits(mate(m), traversal);
  const EdgeCode overhang = edge_from_binary(
      bits, EdgeRole::kOverhang, pool, convention, "encoding");
  const EdgeCode vacancy = edge_from_binary(
      mate_bits, EdgeRole::kVacancy, pool, convention, "mate");

  json doc;
  doc["mapping_version"] = std::string(kQuaternaryMappingVersion);
  doc["traversal"] = args.traversal;
  doc["mate_convention"] = to_string(convention);
  doc["overhang_edge"] = to_json(overhang);
  doc["vacancy_edge"] = to_json(vacancy);
  doc["binding_score"] = binding_score(overhang, vacancy);
  json pool_json = json::array();
  for (const auto& s : pool) {
    const QuaternaryString c = complement(s);
    pool_json.push_back({{"sequence", s.str()},
                         {"complement", c.str()},
                         {"involution", complement(c) == s}});
  }
  doc["pool"] = pool_json;
  if (m.order() % 2 == 0) {
    json rows = json::array();
    for (int i = 0; i < m.order(); ++i) {
      std::vector<int> row(m.order());
      for (int j = 0; j < m.order(); ++j) row[j] = m(i, j);
      rows.push_back(binary_to_quaternary(row).str());
    }
    doc["rows_quaternary"] = rows;
  }

  Staging out("dna", args.out_dir);
  out.input(args.grid);
  out.input(args.pool);
  out.manifest().parameters = {{"traversal", args.traversal},
                               {"mate_convention", to_string(convention)}};
  out.add_json("dna_edges.json", doc);
  out.commit();
  std::cout << "binding score " << doc["binding_score"].get<int>() << " of "
            << bits.size() << "\n";
  return 0;
}

int run_scan(const ScanArgs& args) {
  require_out_dir(args.out_dir);
  const ScanGrid scan = parse_scan_csv(read_text_file(args.scan));
  const ScanClassification result = classify_scan(scan, args.dead_band);
  Staging out("scan", args.out_dir);
  out.input(args.scan);
  out.manifest().parameters = {{"dead_band", args.dead_band},
                               {"ambiguous_cells", result.ambiguous_cells}};
  out.add("classified.grid", to_grid_text(result.matrix));
  out.commit();
  std::cout << "ambiguous cells " << result.ambiguous_cells << "\n";
  return 0;
}

}  // namespace pixcode::cli
