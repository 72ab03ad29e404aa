#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "pixcode/pixel_matrix.hpp"
#include "pixcode/scoring.hpp"

namespace pixcode {

/// Fixed-size bitset over graph vertices.
class VertexSet {
 public:
  VertexSet() = default;
  explicit VertexSet(std::size_t size);

  std::size_t size() const noexcept { return size_; }
  bool test(std::size_t v) const { return (words_[v >> 6] >> (v & 63)) & 1U; }
  void set(std::size_t v) { words_[v >> 6] |= std::uint64_t{1} << (v & 63); }
  void reset(std::size_t v) {
    words_[v >> 6] &= ~(std::uint64_t{1} << (v & 63));
  }
  bool empty() const;
  std::size_t count() const;
  std::size_t intersection_count(const VertexSet& other) const;
  VertexSet intersect(const VertexSet& other) const;
  VertexSet minus(const VertexSet& other) const;
  /// Calls fn(v) for every member in increasing order.
  template <typename Fn>
  void for_each(Fn&& fn) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      std::uint64_t bits = words_[w];
      while (bits) {
        const int b = __builtin_ctzll(bits);
        fn(w * 64 + static_cast<std::size_t>(b));
        bits &= bits - 1;
      }
    }
  }

 private:
  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

/// Symmetric "compatible" relation over candidate encodings. Vertex ids are
/// positions in `members`, which index into the pool the graph was built
/// from (pool order preserved).
struct CompatibilityGraph {
  std::vector<std::size_t> members;
  double threshold = 0.0;
  double s_l_floor = -1.0;
  std::vector<VertexSet> adjacency;

  std::size_t vertex_count() const noexcept { return members.size(); }
  bool adjacent(std::size_t u, std::size_t v) const {
    return adjacency[u].test(v);
  }
  std::size_t edge_count() const;
  bool empty() const noexcept { return members.empty(); }

  /// Graph from an explicit edge list (mainly for tests).
  static CompatibilityGraph from_edges(
      std::size_t vertex_count,
      std::span<const std::pair<std::size_t, std::size_t>> edges);
};

/// Symmetric table of pair_max_abs_sum over a candidate list. Filled once,
/// then re-thresholded for every sweep step.
class PairScoreTable {
 public:
  /// Scores every unordered pair of `candidates`; `threads` == 0 picks the
  /// hardware concurrency. Results do not depend on the thread count.
  static PairScoreTable compute(std::span<const PixelMatrix> candidates,
                                unsigned threads = 0);

  std::size_t size() const noexcept { return size_; }
  int order() const noexcept { return order_; }
  int max_abs_sum(std::size_t u, std::size_t v) const;
  /// -max_abs_sum / N^2.
  double score(std::size_t u, std::size_t v) const;
  /// pair score >= threshold, compared exactly on the integer sums.
  bool compatible(std::size_t u, std::size_t v, double threshold) const;

 private:
  std::size_t index(std::size_t u, std::size_t v) const;

  std::size_t size_ = 0;
  int order_ = 0;
  std::vector<std::uint16_t> upper_;
};

/// True when the exact sum satisfies -sum_abs / N^2 >= threshold. A 1e-9
/// slack absorbs the binary rounding of thresholds such as 0.2 - 8 * 0.02.
bool passes_threshold(int max_abs_sum, int order, double threshold);

/// Compatibility graph over `pool`: members with local_score < s_l_floor are
/// dropped first; u~v iff pair_score(u, v) >= threshold.
CompatibilityGraph build_graph(std::span<const PixelMatrix> pool,
                               double threshold, double s_l_floor,
                               LocalMode mode = LocalMode::kFull);

/// Same relation from a precomputed table; `members[i]` is the pool index of
/// table row i.
CompatibilityGraph threshold_graph(const PairScoreTable& table,
                                   std::vector<std::size_t> members,
                                   double threshold, double s_l_floor);

using CliqueVisitor = std::function<void(std::span<const std::size_t>)>;

/// Bron-Kerbosch with Tomita pivoting. Calls `visit` once per maximal
/// clique with vertex ids in increasing order. Output order depends only on
/// the graph.
void maximal_cliques(const CompatibilityGraph& g, const CliqueVisitor& visit);
std::vector<std::vector<std::size_t>> collect_maximal_cliques(
    const CompatibilityGraph& g);

using CliqueCensus = std::map<std::size_t, std::uint64_t>;

/// Number of maximal cliques by size.
CliqueCensus clique_census(const CompatibilityGraph& g);

struct SweepOptions {
  double seed = -0.2;
  double step = 0.02;
  std::size_t target_size = 12;
  LocalMode local_mode = LocalMode::kFull;
  unsigned threads = 0;
  /// Refuse pools whose S_L-filtered candidate list exceeds this many
  /// vertices (the pair table grows quadratically).
  std::size_t max_candidates = 20000;
};

struct SweepStep {
  double threshold = 0.0;
  std::size_t max_clique_size = 0;
  std::uint64_t cliques_at_max = 0;
  std::size_t edge_count = 0;
};

struct CliqueReport {
  double threshold = 0.0;
  double s_l_floor = 0.0;
  LocalMode local_mode = LocalMode::kFull;
  std::size_t pool_size = 0;
  std::size_t candidate_count = 0;
  bool empty_graph = false;
  std::size_t max_clique_size = 0;
  std::uint64_t cliques_at_max = 0;
  CliqueCensus census;
  /// Pool indices of the selected clique (smallest id sequence among the
  /// cliques of maximum size), increasing.
  std::vector<std::size_t> selected;
  /// min(min pairwise pair_score, min member S_L) of the selected clique.
  std::optional<double> combined_score;
  std::vector<SweepStep> steps;
};

/// Sorts, removes duplicate matrices and drops any matrix whose mate is
/// already present (the first of each mate pair in pool order survives).
/// Returns the kept pool indices in pool order.
std::vector<std::size_t> distinct_non_mating(
    std::span<const PixelMatrix> pool);

/// Threshold sweep: the S_L floor stays at `seed`; the S_G threshold starts
/// at `seed` and drops by `step` until the largest maximal clique reaches
/// `target_size`. Throws ExhaustedSearchError once the threshold passes -1.
/// `pool` is used as given; call distinct_non_mating first to deduplicate.
CliqueReport threshold_sweep(std::span<const PixelMatrix> pool,
                             const SweepOptions& options = {});

/// min over members of S_L and over pairs of pair_score.
double combined_score(std::span<const PixelMatrix> members,
                      LocalMode mode = LocalMode::kFull);

/// JSON form of a report. `pool_names` names every pool entry (e.g. its
/// grid file); `selected_files` lists the files the selected clique was
/// written to, in `selected` order.
nlohmann::json to_json(const CliqueReport& report,
                       std::span<const std::string> pool_names,
                       std::span<const std::string> selected_files);

}  // namespace pixcode
