#include "pixcode/clique_search.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <set>
#include <thread>

#include "pixcode/errors.hpp"
#include "pixcode/matrix_core.hpp"
#include "pixcode/packed.hpp"

namespace pixcode {

VertexSet::VertexSet(std::size_t size)
    : size_(size), words_((size + 63) / 64, 0) {}

bool VertexSet::empty() const {
  return std::all_of(words_.begin(), words_.end(),
                     [](std::uint64_t w) { return w == 0; });
}

std::size_t VertexSet::count() const {
  std::size_t n = 0;
  for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

std::size_t VertexSet::intersection_count(const VertexSet& other) const {
  std::size_t n = 0;
  for (std::size_t i = 0; i < words_.size(); ++i) {
    n += static_cast<std::size_t>(std::popcount(words_[i] & other.words_[i]));
  }
  return n;
}

VertexSet VertexSet::intersect(const VertexSet& other) const {
  VertexSet out(size_);
  for (std::size_t i = 0; i < words_.size(); ++i) {
    out.words_[i] = words_[i] & other.words_[i];
  }
  return out;
}

VertexSet VertexSet::minus(const VertexSet& other) const {
  VertexSet out(size_);
  for (std::size_t i = 0; i < words_.size(); ++i) {
    out.words_[i] = words_[i] & ~other.words_[i];
  }
  return out;
}

std::size_t CompatibilityGraph::edge_count() const {
  std::size_t twice = 0;
  for (const auto& row : adjacency) twice += row.count();
  return twice / 2;
}

CompatibilityGraph CompatibilityGraph::from_edges(
    std::size_t vertex_count,
    std::span<const std::pair<std::size_t, std::size_t>> edges) {
  CompatibilityGraph g;
  g.members.resize(vertex_count);
  for (std::size_t i = 0; i < vertex_count; ++i) g.members[i] = i;
  g.adjacency.assign(vertex_count, VertexSet(vertex_count));
  for (auto [u, v] : edges) {
    if (u >= vertex_count || v >= vertex_count) {
      throw InvalidInputError("edge endpoint out of range");
    }
    if (u == v) throw InvalidInputError("self-edges are not allowed");
    g.adjacency[u].set(v);
    g.adjacency[v].set(u);
  }
  return g;
}

// ---------------------------------------------------------------------------

bool passes_threshold(int max_abs_sum, int order, double threshold) {
  const double score =
      -static_cast<double>(max_abs_sum) / (static_cast<double>(order) * order);
  return score >= threshold - 1e-9;
}

std::size_t PairScoreTable::index(std::size_t u, std::size_t v) const {
  if (u > v) std::swap(u, v);
  // Row-major strict upper triangle.
  return u * (2 * size_ - u - 1) / 2 + (v - u - 1);
}

int PairScoreTable::max_abs_sum(std::size_t u, std::size_t v) const {
  if (u == v) throw InvalidInputError("no score for a vertex with itself");
  return upper_[index(u, v)];
}

double PairScoreTable::score(std::size_t u, std::size_t v) const {
  return -static_cast<double>(max_abs_sum(u, v)) /
         (static_cast<double>(order_) * order_);
}

bool PairScoreTable::compatible(std::size_t u, std::size_t v,
                                double threshold) const {
  return passes_threshold(max_abs_sum(u, v), order_, threshold);
}

PairScoreTable PairScoreTable::compute(std::span<const PixelMatrix> candidates,
                                       unsigned threads) {
  PairScoreTable table;
  table.size_ = candidates.size();
  if (candidates.empty()) return table;
  table.order_ = candidates.front().order();
  for (const auto& m : candidates) {
    require_same_order(candidates.front(), m);
    require_binary(m, "pair score table");
  }
  const std::size_t n = candidates.size();
  table.upper_.assign(n * (n - 1) / 2, 0);
  const int order = table.order_;

  std::vector<PackedRotations> packed;
  if (order <= kMaxPackedOrder) {
    packed.reserve(n);
    for (const auto& m : candidates) packed.push_back(packed_rotations(m));
  }

  if (threads == 0) threads = std::max(1U, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(
      std::min<std::size_t>(threads, std::max<std::size_t>(1, n)));

  // Rows are dealt round-robin; every worker owns whole rows.
  auto work = [&](unsigned worker) {
    for (std::size_t u = worker; u < n; u += threads) {
      for (std::size_t v = u + 1; v < n; ++v) {
        const int value =
            packed.empty()
                ? pair_max_abs_sum(candidates[u], candidates[v])
                : packed_pair_max_abs(packed[u], packed[v], order);
        table.upper_[table.index(u, v)] = static_cast<std::uint16_t>(value);
      }
    }
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
  }
  return table;
}

CompatibilityGraph threshold_graph(const PairScoreTable& table,
                                   std::vector<std::size_t> members,
                                   double threshold, double s_l_floor) {
  if (members.size() != table.size()) {
    throw DimensionError("member list does not match pair table");
  }
  CompatibilityGraph g;
  g.threshold = threshold;
  g.s_l_floor = s_l_floor;
  g.members = std::move(members);
  const std::size_t n = g.members.size();
  g.adjacency.assign(n, VertexSet(n));
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = u + 1; v < n; ++v) {
      if (table.compatible(u, v, threshold)) {
        g.adjacency[u].set(v);
        g.adjacency[v].set(u);
      }
    }
  }
  return g;
}

namespace {

std::vector<std::size_t> local_filter(std::span<const PixelMatrix> pool,
                                      double s_l_floor, LocalMode mode) {
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < pool.size(); ++i) {
    if (local_score(pool[i], mode) >= s_l_floor - 1e-9) kept.push_back(i);
  }
  return kept;
}

std::vector<PixelMatrix> gather(std::span<const PixelMatrix> pool,
                                const std::vector<std::size_t>& ids) {
  std::vector<PixelMatrix> out;
  out.reserve(ids.size());
  for (auto i : ids) out.push_back(pool[i]);
  return out;
}

void require_uniform_binary(std::span<const PixelMatrix> pool) {
  for (const auto& m : pool) {
    require_same_order(pool.front(), m);
    require_binary(m, "candidate pool");
  }
}

}  // namespace

CompatibilityGraph build_graph(std::span<const PixelMatrix> pool,
                               double threshold, double s_l_floor,
                               LocalMode mode) {
  if (pool.empty()) throw InvalidInputError("build_graph: empty pool");
  require_uniform_binary(pool);
  auto kept = local_filter(pool, s_l_floor, mode);
  const auto candidates = gather(pool, kept);
  const auto table = PairScoreTable::compute(candidates);
  return threshold_graph(table, std::move(kept), threshold, s_l_floor);
}

// ---------------------------------------------------------------------------

namespace {

class BronKerbosch {
 public:
  BronKerbosch(const CompatibilityGraph& g, const CliqueVisitor& visit)
      : g_(g), visit_(visit) {}

  void run() {
    const std::size_t n = g_.vertex_count();
    if (n == 0) return;
    VertexSet p(n);
    for (std::size_t v = 0; v < n; ++v) p.set(v);
    expand(p, VertexSet(n));
  }

 private:
  void expand(VertexSet p, VertexSet x) {
    if (p.empty()) {
      if (x.empty()) {
        std::vector<std::size_t> clique = r_;
        std::sort(clique.begin(), clique.end());
        visit_(clique);
      }
      return;
    }
    // Tomita pivot: the vertex of P u X with most neighbours in P; ties go
    // to the smallest id.
    std::size_t pivot = 0;
    std::size_t best = 0;
    bool have = false;
    auto consider = [&](std::size_t u) {
      const std::size_t c = p.intersection_count(g_.adjacency[u]);
      if (!have || c > best || (c == best && u < pivot)) {
        pivot = u;
        best = c;
        have = true;
      }
    };
    p.for_each(consider);
    x.for_each(consider);

    const VertexSet branch = p.minus(g_.adjacency[pivot]);
    branch.for_each([&](std::size_t v) {
      r_.push_back(v);
      expand(p.intersect(g_.adjacency[v]), x.intersect(g_.adjacency[v]));
      r_.pop_back();
      p.reset(v);
      x.set(v);
    });
  }

  const CompatibilityGraph& g_;
  const CliqueVisitor& visit_;
  std::vector<std::size_t> r_;
};

}  // namespace

void maximal_cliques(const CompatibilityGraph& g, const CliqueVisitor& visit) {
  BronKerbosch(g, visit).run();
}

std::vector<std::vector<std::size_t>> collect_maximal_cliques(
    const CompatibilityGraph& g) {
  std::vector<std::vector<std::size_t>> out;
  maximal_cliques(g, [&](std::span<const std::size_t> c) {
    out.emplace_back(c.begin(), c.end());
  });
  return out;
}

CliqueCensus clique_census(const CompatibilityGraph& g) {
  CliqueCensus census;
  maximal_cliques(g, [&](std::span<const std::size_t> c) { ++census[c.size()]; });
  return census;
}

// ---------------------------------------------------------------------------

std::vector<std::size_t> distinct_non_mating(
    std::span<const PixelMatrix> pool) {
  std::set<PixelMatrix> seen;
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < pool.size(); ++i) {
    if (seen.contains(pool[i]) || seen.contains(mate(pool[i]))) continue;
    seen.insert(pool[i]);
    kept.push_back(i);
  }
  return kept;
}

double combined_score(std::span<const PixelMatrix> members, LocalMode mode) {
  if (members.empty()) throw InvalidInputError("combined_score: no members");
  double worst = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < members.size(); ++i) {
    worst = std::min(worst, local_score(members[i], mode));
    for (std::size_t j = i + 1; j < members.size(); ++j) {
      worst = std::min(worst, pair_score(members[i], members[j]));
    }
  }
  return worst;
}

namespace {

double snap(double t) { return std::round(t * 1e9) / 1e9; }

}  // namespace

CliqueReport threshold_sweep(std::span<const PixelMatrix> pool,
                             const SweepOptions& options) {
  if (!(options.step > 0)) throw InvalidInputError("sweep step must be > 0");
  if (options.target_size < 1) {
    throw InvalidInputError("target clique size must be >= 1");
  }
  if (options.seed < -1.0 || options.seed > 1.0) {
    throw InvalidInputError("seed threshold must lie in [-1, 1]");
  }
  if (pool.empty()) throw InvalidInputError("threshold_sweep: empty pool");
  require_uniform_binary(pool);

  CliqueReport report;
  report.pool_size = pool.size();
  report.s_l_floor = options.seed;
  report.local_mode = options.local_mode;

  auto kept = local_filter(pool, options.seed, options.local_mode);
  report.candidate_count = kept.size();
  report.empty_graph = kept.empty();
  if (kept.size() > options.max_candidates) {
    throw CapacityError(std::to_string(kept.size()) +
                        " candidates survive the S_L floor; limit is " +
                        std::to_string(options.max_candidates));
  }
  const auto candidates = gather(pool, kept);
  const auto table = PairScoreTable::compute(candidates, options.threads);

  CliqueCensus best_census;
  double best_threshold = options.seed;
  std::size_t best_size = 0;
  for (int k = 0;; ++k) {
    const double threshold = snap(options.seed - k * options.step);
    if (threshold < -1.0 - 1e-9) break;
    const auto g = threshold_graph(table, kept, threshold, options.seed);

    CliqueCensus census;
    std::size_t max_size = 0;
    std::vector<std::size_t> selected;
    maximal_cliques(g, [&](std::span<const std::size_t> c) {
      ++census[c.size()];
      const std::vector<std::size_t> ids(c.begin(), c.end());
      if (c.size() > max_size) {
        max_size = c.size();
        selected = ids;
      } else if (c.size() == max_size && ids < selected) {
        selected = ids;
      }
    });
    report.steps.push_back(SweepStep{
        threshold, max_size, max_size ? census[max_size] : 0, g.edge_count()});
    if (max_size > best_size || best_census.empty()) {
      best_size = max_size;
      best_census = census;
      best_threshold = threshold;
    }
    if (max_size >= options.target_size) {
      report.threshold = threshold;
      report.max_clique_size = max_size;
      report.cliques_at_max = census[max_size];
      report.census = std::move(census);
      for (auto v : selected) report.selected.push_back(kept[v]);
      const auto members = gather(pool, report.selected);
      report.combined_score = combined_score(members, options.local_mode);
      return report;
    }
  }
  throw ExhaustedSearchError(
      "threshold reached -1 without a clique of size " +
          std::to_string(options.target_size) + " (best " +
          std::to_string(best_size) + ")",
      best_threshold, std::move(best_census));
}

}  // namespace pixcode

namespace pixcode {

nlohmann::json to_json(const CliqueReport& report,
                       std::span<const std::string> pool_names,
                       std::span<const std::string> selected_files) {
  nlohmann::json j;
  j["threshold"] = report.threshold;
  j["s_l_floor"] = report.s_l_floor;
  j["local_mode"] = to_string(report.local_mode);
  j["pool_size"] = report.pool_size;
  j["candidate_count"] = report.candidate_count;
  j["empty_graph"] = report.empty_graph;
  j["max_clique_size"] = report.max_clique_size;
  j["cliques_at_max"] = report.cliques_at_max;
  nlohmann::json census = nlohmann::json::object();
  for (const auto& [size, count] : report.census) {
    census[std::to_string(size)] = count;
  }
  j["census"] = census;
  j["selected"] = nlohmann::json::array();
  for (std::size_t i = 0; i < report.selected.size(); ++i) {
    nlohmann::json e;
    const auto idx = report.selected[i];
    e["pool_index"] = idx;
    if (idx < pool_names.size()) e["source"] = pool_names[idx];
    if (i < selected_files.size()) e["grid_file"] = selected_files[i];
    j["selected"].push_back(e);
  }
  if (report.combined_score) {
    j["combined_score"] = *report.combined_score;
  } else {
    j["combined_score"] = nullptr;
  }
  j["steps"] = nlohmann::json::array();
  for (const auto& s : report.steps) {
    j["steps"].push_back({{"threshold", s.threshold},
                          {"max_clique_size", s.max_clique_size},
                          {"cliques_at_max", s.cliques_at_max},
                          {"edge_count", s.edge_count}});
  }
  return j;
}

}  // namespace pixcode
