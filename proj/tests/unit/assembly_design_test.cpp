#include <gtest/gtest.h>

#include <map>

#include "pools.hpp"
#include "pixcode/assembly_design.hpp"
#include "pixcode/errors.hpp"
#include "pixcode/scoring.hpp"

namespace pixcode {
namespace {

std::vector<PixelMatrix> selected_clique() {
  std::vector<PixelMatrix> out;
  for (std::size_t i : pools::order8_sweep().selected)
    out.push_back(pools::order8_permutations()[i]);
  return out;
}

TEST(Faces, LabelsAndOpposites) {
  for (Face f : kAllFaces) {
    EXPECT_EQ(parse_face(to_string(f)), f);
    EXPECT_EQ(opposite(opposite(f)), f);
    EXPECT_EQ(face_normal(opposite(f)), -face_normal(f));
  }
  EXPECT_STREQ(to_string(Face::kNegZ), "-Z");
  EXPECT_THROW(parse_face("+W"), InvalidInputError);
}

TEST(Faces, FramesAreRightHanded) {
  for (Face f : kAllFaces) {
    const auto fr = face_frame(f);
    EXPECT_EQ(fr.u.cross(fr.v), fr.normal) << to_string(f);
    EXPECT_EQ(fr.u.dot(fr.normal), 0);
    EXPECT_EQ(fr.u.cwiseAbs().sum(), 1);
  }
}

TEST(Metacube, Topology) {
  const auto t = metacube_topology();
  EXPECT_NO_THROW(t.validate());
  EXPECT_EQ(t.modules.size(), 8u);
  EXPECT_EQ(t.matings.size(), 12u);
  std::map<int, int> degree;
  for (const auto& m : t.matings) {
    ++degree[m.module_a];
    ++degree[m.module_b];
    EXPECT_EQ(opposite(m.face_a), m.face_b);
    const Eigen::Vector3i step = t.module(m.module_b).position - t.module(m.module_a).position;
    EXPECT_EQ(step, face_normal(m.face_a));
  }
  for (const auto& [id, d] : degree) EXPECT_EQ(d, 3) << id;
  for (const auto& m : t.modules)
    EXPECT_EQ(m.id, m.position.x() + 2 * m.position.y() + 4 * m.position.z());
}

TEST(Topology, ValidationErrors) {
  AssemblyTopology t;
  t.modules = {{0, {0, 0, 0}}, {1, {2, 0, 0}}};
  t.matings = {{0, Face::kPosX, 1, Face::kNegX}};
  EXPECT_THROW(t.validate(), InvalidInputError);  // not adjacent
  t.modules[1].position = {1, 0, 0};
  EXPECT_NO_THROW(t.validate());
  t.matings.push_back({0, Face::kPosX, 1, Face::kNegX});
  EXPECT_THROW(t.validate(), InvalidInputError);  // face reused
}

TEST(AssignEncodings, MetacubeWithClique) {
  const auto clique = selected_clique();
  ASSERT_GE(clique.size(), 12u);
  const auto t = metacube_topology();
  const auto a = assign_encodings(t, clique);
  EXPECT_EQ(a.programmed_count(), 24u);
  EXPECT_EQ(a.blank_count(), 24u);
  EXPECT_EQ(a.members.size(), 12u);
  std::map<std::size_t, int> uses;
  for (std::size_t k = 0; k < t.matings.size(); ++k) {
    const auto& m = t.matings[k];
    const auto& ea = a.faces.at({m.module_a, m.face_a});
    const auto& eb = a.faces.at({m.module_b, m.face_b});
    ASSERT_TRUE(ea.member && eb.member);
    EXPECT_EQ(*ea.member, k);
    EXPECT_EQ(*eb.member, k);
    EXPECT_EQ(ea.matrix, clique[k]);  // (module_a, face_a) is the smaller key
    EXPECT_FALSE(ea.is_mate);
    EXPECT_TRUE(eb.is_mate);
    EXPECT_EQ(eb.matrix, mate(ea.matrix));
    EXPECT_EQ(normalized_score(ea.matrix, eb.matrix), -1.0);
    ++uses[k];
  }
  for (const auto& [k, n] : uses) EXPECT_EQ(n, 1);
  for (const auto& [key, enc] : a.faces)
    if (enc.blank()) EXPECT_EQ(enc.matrix, PixelMatrix::zeros(8));
}

TEST(AssignEncodings, NonPartnerFacesRespectThreshold) {
  const auto& r = pools::order8_sweep();
  const auto a = assign_encodings(metacube_topology(), selected_clique());
  std::vector<std::pair<FaceKey, const FaceEncoding*>> prog;
  for (const auto& [key, enc] : a.faces)
    if (!enc.blank()) prog.emplace_back(key, &enc);
  ASSERT_EQ(prog.size(), 24u);
  int checked = 0;
  for (std::size_t i = 0; i < prog.size(); ++i)
    for (std::size_t j = i + 1; j < prog.size(); ++j) {
      if (*prog[i].second->member == *prog[j].second->member) continue;
      EXPECT_GE(pair_score(prog[i].second->matrix, prog[j].second->matrix),
                r.threshold - 1e-9);
      ++checked;
    }
  EXPECT_EQ(checked, 24 * 23 / 2 - 12);
}

TEST(AssignEncodings, Deterministic) {
  const auto clique = selected_clique();
  const auto a = assign_encodings(metacube_topology(), clique);
  const auto b = assign_encodings(metacube_topology(), clique);
  ASSERT_EQ(a.faces.size(), b.faces.size());
  for (const auto& [key, enc] : a.faces) EXPECT_EQ(b.faces.at(key).matrix, enc.matrix);
}

TEST(AssignEncodings, Errors) {
  auto clique = selected_clique();
  clique.resize(11);
  EXPECT_THROW(assign_encodings(metacube_topology(), clique), CapacityError);
  clique = selected_clique();
  clique[3] = clique[0];
  EXPECT_THROW(assign_encodings(metacube_topology(), clique), InvalidInputError);
  clique = selected_clique();
  clique[3] = mate(clique[0]);
  EXPECT_THROW(assign_encodings(metacube_topology(), clique), InvalidInputError);
}

TEST(FluidWindow, MatchesCombinedScore) {
  const auto& r = pools::order8_sweep();
  auto clique = selected_clique();
  clique.resize(12);
  const auto a = assign_encodings(metacube_topology(), clique);
  const auto w = fluid_window(a, r.local_mode);
  EXPECT_EQ(w.lo, -1.0);
  EXPECT_EQ(w.hi, combined_score(clique, r.local_mode));
  EXPECT_FALSE(w.empty());
  EXPECT_GE(w.hi, r.threshold - 1e-9);
}

TEST(FluidWindow, SingleMemberUsesLocalScore) {
  AssemblyTopology t;
  t.modules = {{0, {0, 0, 0}}, {1, {0, 0, 1}}};
  t.matings = {{0, Face::kPosZ, 1, Face::kNegZ}};
  const auto m = pools::order8_permutations()[123];
  const std::vector<PixelMatrix> clique{m};
  const auto w = fluid_window(assign_encodings(t, clique));
  EXPECT_EQ(w.hi, local_score(m));
  const std::vector<double> none;
  EXPECT_EQ(fluid_window(none, none).hi, 0.0);
  const std::vector<double> local{-0.25}, pairs{-1.0};
  EXPECT_TRUE(fluid_window(local, pairs).empty());
}

TEST(FaceFileName, Format) {
  EXPECT_EQ(face_file_name({3, Face::kNegZ}), "m3_-Z.grid");
  EXPECT_EQ(face_file_name({0, Face::kPosX}), "m0_+X.grid");
}

TEST(AssignmentJson, ReferencesGridFiles) {
  const auto a = assign_encodings(metacube_topology(), selected_clique());
  std::map<FaceKey, std::string> files;
  for (const auto& [key, enc] : a.faces)
    if (!enc.blank()) files[key] = face_file_name(key);
  const auto j = to_json(a, fluid_window(a), files);
  ASSERT_EQ(j["modules"].size(), 8u);
  int refs = 0;
  for (const auto& m : j["modules"])
    for (const auto& f : m["faces"]) refs += f.contains("grid_file");
  EXPECT_EQ(refs, 24);
  EXPECT_EQ(j["matings"].size(), 12u);
  EXPECT_EQ(j["window"]["lo"], -1.0);
}

}  // namespace
}  // namespace pixcode
