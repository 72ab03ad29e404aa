#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "pixcode/pixel_matrix.hpp"
#include "pixcode/scoring.hpp"

namespace pixcode {

enum class Face { kPosX, kNegX, kPosY, kNegY, kPosZ, kNegZ };

inline constexpr std::array<Face, 6> kAllFaces = {
    Face::kPosX, Face::kNegX, Face::kPosY,
    Face::kNegY, Face::kPosZ, Face::kNegZ};

const char* to_string(Face face);
Face parse_face(const std::string& label);
Face opposite(Face face);
Eigen::Vector3i face_normal(Face face);

/// Right-handed frame of a face seen from outside: stepping along a matrix
/// row (increasing column) moves along +u, increasing the row index moves
/// along +v, and u x v is the outward normal.
struct FaceFrame {
  Eigen::Vector3i normal;
  Eigen::Vector3i u;
  Eigen::Vector3i v;
};
FaceFrame face_frame(Face face);

struct Module {
  int id = 0;
  Eigen::Vector3i position = Eigen::Vector3i::Zero();
};

struct Mating {
  int module_a = 0;
  Face face_a = Face::kPosX;
  int module_b = 0;
  Face face_b = Face::kNegX;
};

struct AssemblyTopology {
  std::vector<Module> modules;
  std::vector<Mating> matings;

  /// Throws InvalidInputError on duplicate module ids, unknown modules,
  /// non-adjacent matings or a face used by two matings.
  void validate() const;
  const Module& module(int id) const;
};

struct FaceKey {
  int module = 0;
  Face face = Face::kPosX;
  auto operator<=>(const FaceKey&) const = default;
};

struct FaceEncoding {
  /// All-zero for blank faces.
  PixelMatrix matrix;
  /// Index into the clique passed to assign_encodings; empty when blank.
  std::optional<std::size_t> member;
  bool is_mate = false;
  /// Frame the matrix is expressed in. Both faces of a mating share the
  /// frame of the member face so that cell (i, j) touches cell (i, j).
  FaceFrame frame;

  bool blank() const { return !member.has_value(); }
};

struct FaceAssignment {
  AssemblyTopology topology;
  int order = 0;
  std::map<FaceKey, FaceEncoding> faces;
  /// Clique members actually placed, in mating order.
  std::vector<PixelMatrix> members;

  std::size_t programmed_count() const;
  std::size_t blank_count() const;
};

/// 2x2x2 "meta cube": module id = x + 2y + 4z, matings along X, then Y,
/// then Z, each axis in increasing id of the lower module.
AssemblyTopology metacube_topology();

/// Gives mating k the clique member k: the member goes on the smaller
/// (module, face) key, its mate on the other face; every other face is
/// blank. Throws CapacityError when the clique is smaller than the number
/// of matings and InvalidInputError when members repeat.
FaceAssignment assign_encodings(const AssemblyTopology& topology,
                                std::span<const PixelMatrix> clique);

/// Admissible agitation force interval (lo, hi), both exclusive.
struct FluidWindow {
  double lo = -1.0;
  double hi = 0.0;
  bool empty() const { return hi <= lo; }
};

FluidWindow fluid_window(std::span<const double> local_scores,
                         std::span<const double> pair_scores);
FluidWindow fluid_window(const FaceAssignment& assignment,
                         LocalMode mode = LocalMode::kFull);

/// Serialized assignment; `grid_files` maps programmed faces to the grid
/// file that holds their matrix.
nlohmann::json to_json(const FaceAssignment& assignment,
                       const FluidWindow& window,
                       const std::map<FaceKey, std::string>& grid_files);

/// Canonical grid file name for a face, e.g. "m3_-Z.grid".
std::string face_file_name(const FaceKey& key);

}  // namespace pixcode
