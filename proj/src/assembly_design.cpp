#include "pixcode/assembly_design.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "pixcode/errors.hpp"
#include "pixcode/matrix_core.hpp"

namespace pixcode {

const char* to_string(Face face) {
  switch (face) {
    case Face::kPosX: return "+X";
    case Face::kNegX: return "-X";
    case Face::kPosY: return "+Y";
    case Face::kNegY: return "-Y";
    case Face::kPosZ: return "+Z";
    case Face::kNegZ: return "-Z";
  }
  return "?";
}

Face parse_face(const std::string& label) {
  for (Face f : kAllFaces) {
    if (label == to_string(f)) return f;
  }
  throw InvalidInputError("unknown face label '" + label + "'");
}

Face opposite(Face face) {
  return static_cast<Face>(static_cast<int>(face) ^ 1);
}

Eigen::Vector3i face_normal(Face face) {
  Eigen::Vector3i n = Eigen::Vector3i::Zero();
  n(static_cast<int>(face) / 2) = (static_cast<int>(face) % 2 == 0) ? 1 : -1;
  return n;
}

FaceFrame face_frame(Face face) {
  FaceFrame f;
  f.normal = face_normal(face);
  // u is the next axis cyclically (X->Y->Z->X), signed like the normal.
  const int axis = static_cast<int>(face) / 2;
  f.u = Eigen::Vector3i::Zero();
  f.u((axis + 1) % 3) = f.normal(axis);
  f.v = f.normal.cross(f.u);
  return f;
}

const Module& AssemblyTopology::module(int id) const {
  for (const auto& m : modules) {
    if (m.id == id) return m;
  }
  throw InvalidInputError("unknown module id " + std::to_string(id));
}

void AssemblyTopology::validate() const {
  std::set<int> ids;
  for (const auto& m : modules) {
    if (!ids.insert(m.id).second) {
      throw InvalidInputError("duplicate module id " + std::to_string(m.id));
    }
  }
  std::set<FaceKey> used;
  for (const auto& mt : matings) {
    const Module& a = module(mt.module_a);
    const Module& b = module(mt.module_b);
    if (mt.face_b != opposite(mt.face_a)) {
      throw InvalidInputError("mating faces must be opposite");
    }
    if (b.position - a.position != face_normal(mt.face_a)) {
      throw InvalidInputError("modules " + std::to_string(a.id) + " and " +
                              std::to_string(b.id) +
                              " are not adjacent across " +
                              to_string(mt.face_a));
    }
    for (FaceKey key : {FaceKey{mt.module_a, mt.face_a},
                        FaceKey{mt.module_b, mt.face_b}}) {
      if (!used.insert(key).second) {
        throw InvalidInputError("face " + face_file_name(key) +
                                " used by two matings");
      }
    }
  }
}

std::size_t FaceAssignment::programmed_count() const {
  return static_cast<std::size_t>(
      std::count_if(faces.begin(), faces.end(),
                    [](const auto& kv) { return !kv.second.blank(); }));
}

std::size_t FaceAssignment::blank_count() const {
  return faces.size() - programmed_count();
}

AssemblyTopology metacube_topology() {
  AssemblyTopology t;
  for (int id = 0; id < 8; ++id) {
    t.modules.push_back({id, Eigen::Vector3i(id & 1, (id >> 1) & 1,
                                             (id >> 2) & 1)});
  }
  const Face positive[3] = {Face::kPosX, Face::kPosY, Face::kPosZ};
  for (int axis = 0; axis < 3; ++axis) {
    for (int id = 0; id < 8; ++id) {
      if ((id >> axis) & 1) continue;
      t.matings.push_back(
          {id, positive[axis], id | (1 << axis), opposite(positive[axis])});
    }
  }
  return t;
}

FaceAssignment assign_encodings(const AssemblyTopology& topology,
                                std::span<const PixelMatrix> clique) {
  topology.validate();
  if (clique.size() < topology.matings.size()) {
    throw CapacityError("clique of " + std::to_string(clique.size()) +
                        " cannot cover " +
                        std::to_string(topology.matings.size()) + " matings");
  }
  if (topology.matings.empty()) {
    throw InvalidInputError("topology has no matings");
  }
  const int order = clique.front().order();
  for (std::size_t i = 0; i < clique.size(); ++i) {
    require_same_order(clique.front(), clique[i]);
    require_binary(clique[i], "assign_encodings");
    for (std::size_t j = 0; j < i; ++j) {
      if (clique[i] == clique[j] || clique[i] == mate(clique[j])) {
        throw InvalidInputError("clique members must be pairwise distinct");
      }
    }
  }

  FaceAssignment out;
  out.topology = topology;
  out.order = order;
  const PixelMatrix blank = PixelMatrix::zeros(order);
  for (const auto& m : topology.modules) {
    for (Face f : kAllFaces) {
      out.faces[{m.id, f}] = FaceEncoding{blank, std::nullopt, false,
                                          face_frame(f)};
    }
  }
  for (std::size_t k = 0; k < topology.matings.size(); ++k) {
    const auto& mt = topology.matings[k];
    FaceKey first{mt.module_a, mt.face_a};
    FaceKey second{mt.module_b, mt.face_b};
    if (second < first) std::swap(first, second);
    const FaceFrame frame = face_frame(first.face);
    out.faces[first] = FaceEncoding{clique[k], k, false, frame};
    out.faces[second] = FaceEncoding{mate(clique[k]), k, true, frame};
    out.members.push_back(clique[k]);
  }
  return out;
}

FluidWindow fluid_window(std::span<const double> local_scores,
                         std::span<const double> pair_scores) {
  FluidWindow w;
  double hi = std::numeric_limits<double>::infinity();
  for (double s : local_scores) hi = std::min(hi, s);
  for (double s : pair_scores) hi = std::min(hi, s);
  w.hi = std::isinf(hi) ? 0.0 : hi;
  return w;
}

FluidWindow fluid_window(const FaceAssignment& assignment, LocalMode mode) {
  std::vector<double> local;
  std::vector<double> pairs;
  const auto& m = assignment.members;
  for (std::size_t i = 0; i < m.size(); ++i) {
    local.push_back(local_score(m[i], mode));
    for (std::size_t j = i + 1; j < m.size(); ++j) {
      pairs.push_back(pair_score(m[i], m[j]));
    }
  }
  return fluid_window(local, pairs);
}

std::string face_file_name(const FaceKey& key) {
  return "m" + std::to_string(key.module) + "_" + to_string(key.face) +
         ".grid";
}

namespace {

nlohmann::json vec_json(const Eigen::Vector3i& v) {
  return nlohmann::json::array({v.x(), v.y(), v.z()});
}

}  // namespace

nlohmann::json to_json(const FaceAssignment& assignment,
                       const FluidWindow& window,
                       const std::map<FaceKey, std::string>& grid_files) {
  nlohmann::json j;
  j["order"] = assignment.order;
  j["modules"] = nlohmann::json::array();
  for (const auto& m : assignment.topology.modules) {
    nlohmann::json mj;
    mj["id"] = m.id;
    mj["position"] = vec_json(m.position);
    mj["faces"] = nlohmann::json::array();
    for (Face f : kAllFaces) {
      const FaceKey key{m.id, f};
      const auto& enc = assignment.faces.at(key);
      nlohmann::json fj;
      fj["face"] = to_string(f);
      fj["blank"] = enc.blank();
      if (!enc.blank()) {
        fj["member"] = *enc.member;
        fj["is_mate"] = enc.is_mate;
        fj["frame"] = {{"normal", vec_json(enc.frame.normal)},
                       {"u", vec_json(enc.frame.u)},
                       {"v", vec_json(enc.frame.v)}};
        if (auto it = grid_files.find(key); it != grid_files.end()) {
          fj["grid_file"] = it->second;
        }
      }
      mj["faces"].push_back(fj);
    }
    j["modules"].push_back(mj);
  }
  j["matings"] = nlohmann::json::array();
  for (const auto& mt : assignment.topology.matings) {
    j["matings"].push_back({{"module_a", mt.module_a},
                            {"face_a", to_string(mt.face_a)},
                            {"module_b", mt.module_b},
                            {"face_b", to_string(mt.face_b)}});
  }
  j["window"] = {{"lo", window.lo}, {"hi", window.hi},
                 {"empty", window.empty()}};
  return j;
}

}  // namespace pixcode
