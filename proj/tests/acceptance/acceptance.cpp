// Acceptance checks: one PASS/FAIL line per criterion. Exit status is the
// number of failing criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "pools.hpp"
#include "pixcode/assembly_design.hpp"
#include "pixcode/clique_search.hpp"
#include "pixcode/dna_codec.hpp"
#include "pixcode/errors.hpp"
#include "pixcode/force_model.hpp"
#include "pixcode/grid_io.hpp"
#include "pixcode/matrix_core.hpp"
#include "pixcode/plotter_io.hpp"
#include "pixcode/scoring.hpp"

using namespace pixcode;

namespace {

int failures = 0;

void report(int id, bool ok, const std::string& detail) {
  std::printf("AC%-2d %s  %s\n", id, ok ? "PASS" : "FAIL", detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::vector<PixelMatrix> selected_members() {
  std::vector<PixelMatrix> out;
  for (std::size_t i : pools::order8_sweep().selected)
    out.push_back(pools::order8_permutations()[i]);
  return out;
}

void ac1() {
  const auto t0 = std::chrono::steady_clock::now();
  long count = 0, total = 0;
  for (const auto& m : enumerate_binary(4)) {
    ++total;
    count += is_hadamard(m);
  }
  const double s = seconds_since(t0);
  report(1, count == 768 && total == 65536 && s < 60.0,
         fmt("%ld Hadamard of %ld order-4 matrices in %.2f s (want 768 of 65536, < 60 s)",
             count, total, s));
}

void ac2() {
  std::mt19937_64 rng(2024);
  int bad = 0;
  for (int t = 0; t < 1000; ++t) {
    const int n = 2 + t % 7;
    const auto a = oracle::from_grid(oracle::random_binary(rng, n));
    const long n2 = static_cast<long>(n) * n;
    if (raw_score(a, mate(a)) != -n2 || raw_score(a, a) != n2 ||
        normalized_score(a, mate(a)) != -1.0 || normalized_score(a, a) != 1.0)
      ++bad;
  }
  report(2, bad == 0, fmt("1000 random binary matrices, orders 2-8: %d violations", bad));
}

void ac3() {
  const auto& pool = pools::order8_permutations();
  long nonzero = 0;
  for (const auto& a : pool) {
    const auto map = cross_correlate(a, mate(a));
    for (int d = -7; d <= 7; ++d) {
      if (d == 0) continue;
      nonzero += map.sum_at(d, 0) != 0;
      nonzero += map.sum_at(0, d) != 0;
    }
  }
  report(3, nonzero == 0 && pool.size() >= 500,
         fmt("%zu row permutations of H_8: %ld nonzero pure-axis entries", pool.size(), nonzero));
}

void ac4() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto& r = pools::order8_sweep();
  const double s = seconds_since(t0);
  const bool thr_ok = std::abs(r.threshold - (-0.36)) < 1e-9;
  const bool size_ok = r.max_clique_size == 12;
  std::string trail;
  for (const auto& st : r.steps)
    trail += fmt(" %.2f:%zu", st.threshold, st.max_clique_size);
  report(4, thr_ok && size_ok && s <= 1800.0,
         fmt("stopped at %.2f with max clique %zu (%llu at max; soft target 4 size-12 cliques"
             "%s), want -0.36 / 12; %zu of %zu pool matrices pass the S_L floor; %.1f s;"
             " sweep:%s",
             r.threshold, r.max_clique_size,
             static_cast<unsigned long long>(r.cliques_at_max),
             r.cliques_at_max == 4 ? ", met" : ", not met", r.candidate_count,
             r.pool_size, s, trail.c_str()));
}

void ac5() {
  const auto members = selected_members();
  double worst_local = 0.0;
  double worst_fine = 1.0, worst_angle = 0.0;
  double worst_fine_20 = 1.0;
  for (const auto& m : members) {
    worst_local = std::min(worst_local, local_score(m, LocalMode::kFull));
    const auto prof = rotation_profile(m, mate(m));
    for (std::size_t i = 0; i < prof.angles_deg.size(); ++i) {
      const double ang = prof.angles_deg[i];
      if (ang == 0.0) continue;  // the mating configuration
      if (prof.scores[i] < worst_fine) {
        worst_fine = prof.scores[i];
        worst_angle = ang;
      }
      if (std::abs(ang) >= 20.0) worst_fine_20 = std::min(worst_fine_20, prof.scores[i]);
    }
  }
  const bool local_ok = worst_local >= -0.25;
  const bool fine_ok = worst_fine >= -0.25 - 0.02;
  report(5, local_ok && fine_ok && !members.empty(),
         fmt("%zu members: worst S_L %.4f (want >= -0.25); worst fine-rotation score %.4f at "
             "%+.0f deg (want >= -0.27); worst at |angle| >= 20 deg %.4f",
             members.size(), worst_local, worst_fine, worst_angle, worst_fine_20));
}

void ac6() {
  const auto members = selected_members();
  int worst = 0;
  for (std::size_t i = 0; i < members.size(); ++i)
    for (std::size_t j = i + 1; j < members.size(); ++j)
      worst = std::max(worst, pair_max_abs_sum(members[i], members[j]));
  // -worst / 64 >= -0.36 exactly  <=>  worst * 100 <= 36 * 64
  report(6, worst * 100 <= 36 * 64 && !members.empty(),
         fmt("worst pair score over %zu members: -%d/64 = %.6f (want >= -0.36)",
             members.size(), worst, -worst / 64.0));
}

void ac7() {
  const auto& had = pools::order4_hadamards();
  const std::vector<PixelMatrix> sub(had.begin(), had.begin() + 16);
  int clique_mismatch = 0;
  for (double thr : {-0.125, -0.25, -0.375, -0.5, -0.625, -0.75}) {
    const auto g = build_graph(sub, thr, -1.0);
    std::set<std::vector<std::size_t>> lib;
    maximal_cliques(g, [&](std::span<const std::size_t> c) { lib.emplace(c.begin(), c.end()); });
    oracle::Adjacency adj(g.vertex_count(), std::vector<bool>(g.vertex_count(), false));
    for (std::size_t u = 0; u < g.vertex_count(); ++u)
      for (std::size_t v = 0; v < g.vertex_count(); ++v)
        if (u != v) adj[u][v] = g.adjacent(u, v);
    clique_mismatch += lib != oracle::maximal_cliques(adj);
  }
  std::mt19937_64 rng(7);
  int pair_mismatch = 0, pairs = 0;
  for (int t = 0; t < 3000; ++t) {
    const auto ga = oracle::random_binary(rng, 4);
    const auto gb = oracle::random_binary(rng, 4);
    if (gb == ga || gb == oracle::negate(ga)) continue;
    ++pairs;
    pair_mismatch += pair_score(oracle::from_grid(ga), oracle::from_grid(gb)) !=
                     oracle::pair_score(ga, gb);
  }
  report(7, clique_mismatch == 0 && pair_mismatch == 0,
         fmt("Bron-Kerbosch vs power set on 16 order-4 Hadamards at 6 thresholds: %d mismatches;"
             " pair_score vs 4x49x4 brute force on %d pairs: %d mismatches",
             clique_mismatch, pairs, pair_mismatch));
}

void ac8() {
  const auto members = selected_members();
  const PixelMatrix& m = members.empty() ? sylvester(3) : members.front();
  const auto map = predict_force_map(m, mate(m), 1.09);
  const double centre = map.at(0, 0);
  const double kpa = pressure_report(25.0, -centre).pressure_pa / 1000.0;
  const double pa_small = pressure_report(25.0, 0.160).pressure_pa;
  const bool ok = std::abs(centre + 1.09) < 1e-12 && std::abs(kpa - 1.744) <= 0.005 * 1.744 &&
                  std::abs(kpa - 1.74) <= 0.005 * 1.74 && std::lround(pa_small) == 256;
  report(8, ok,
         fmt("centred force %.6f N (want -1.09), %.4f kPa at 25 mm (want 1.744 +-0.5%%),"
             " 0.160 N -> %.3f Pa (want 256); SSD 0.014 not reproducible without measured data",
             centre, kpa, pa_small));
}

void ac9() {
  std::mt19937_64 rng(9);
  int bad_cells = 0, bad_dwell = 0;
  for (int t = 0; t < 200; ++t) {
    const auto m = oracle::from_grid(oracle::random_trits(rng, 1 + t % 12));
    const auto prog = emit_program(m);
    const auto back = reconstruct_matrix(parse_gcode(render_gcode(prog)));
    bad_cells += !(back == m);
    bad_dwell += prog.total_dwell_ms() != 700L * m.nonzero_count();
  }
  const auto single = emit_program(PixelMatrix::from_rows({{1}}));
  const std::string g1 = render_gcode(single), g2 = render_gcode(emit_program(PixelMatrix::from_rows({{1}})));
  const std::string golden =
      read_text_file(std::filesystem::path(PIXCODE_FIXTURE_DIR) / "single_north_pixel.gcode");
  report(9, bad_cells == 0 && bad_dwell == 0 && g1 == g2 && g1 == golden,
         fmt("200 random matrices: %d round-trip failures, %d dwell mismatches;"
             " golden fixture %s",
             bad_cells, bad_dwell, g1 == golden && g1 == g2 ? "byte-identical" : "differs"));
}

void ac10() {
  std::mt19937_64 rng(10);
  std::uniform_int_distribution<int> base(0, 3), len(0, 64);
  int bad = 0;
  for (int t = 0; t < 10000; ++t) {
    std::string s;
    for (int i = len(rng); i > 0; --i) s += "ACGT"[base(rng)];
    const QuaternaryString q(s);
    bad += !(complement(complement(q)) == q);
  }
  std::vector<QuaternaryString> pool;
  for (const char* s : {"ACGTAC", "TTGACC", "GGATCA", "CATGCA", "AGCTTG",
                        "TCAGGA", "GTCCAT", "CCTAGT", "AACGGT", "TGGCAA"})
    pool.emplace_back(s);
  const auto over = edge_from_binary(std::vector<int>(10, 1), EdgeRole::kOverhang, pool);
  const auto vac = edge_from_binary(std::vector<int>(10, 0), EdgeRole::kVacancy, pool);
  const int bind = binding_score(over, vac);
  int bij = 0;
  std::set<std::string> images;
  for (int a : {-1, 1})
    for (int b : {-1, 1}) {
      const std::vector<int> pr{a, b};
      const auto q = binary_to_quaternary(pr);
      images.insert(q.str());
      bij += quaternary_to_binary(q) == pr;
    }
  report(10, bad == 0 && bind == 10 && bij == 4 && images.size() == 4,
         fmt("involution failures %d / 10000; 10-overhang vs 10-vacancy binding %d (want 10);"
             " trit-pair round trips %d/4 onto %zu bases",
             bad, bind, bij, images.size()));
}

void ac11() {
  const auto topo = metacube_topology();
  std::map<int, int> degree;
  for (const auto& m : topo.matings) {
    ++degree[m.module_a];
    ++degree[m.module_b];
  }
  bool deg_ok = degree.size() == 8;
  for (const auto& [id, d] : degree) deg_ok &= d == 3;
  auto members = selected_members();
  if (members.size() > topo.matings.size()) members.resize(topo.matings.size());
  double hi = NAN;
  std::size_t programmed = 0;
  try {
    const auto a = assign_encodings(topo, members);
    programmed = a.programmed_count();
    hi = fluid_window(a).hi;
  } catch (const Error& e) {
    std::printf("      assignment failed: %s\n", e.what());
  }
  const bool hi_ok = std::abs(hi - (-0.36)) < 1e-9;
  report(11, topo.matings.size() == 12 && deg_ok && programmed == 24 && hi_ok,
         fmt("%zu matings, degree 3 everywhere: %s, %zu programmed faces,"
             " fluid window upper bound %.6f (want -0.36); tank experiment not reproducible",
             topo.matings.size(), deg_ok ? "yes" : "no", programmed, hi));
}

}  // namespace

int main() {
  ac1();
  ac2();
  ac3();
  ac4();
  ac5();
  ac6();
  ac7();
  ac8();
  ac9();
  ac10();
  ac11();
  std::printf("%d of 11 criteria failed\n", failures);
  return failures;
}
