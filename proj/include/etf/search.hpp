#pragma once

#include <algorithm>
#include <array>
#include <atomic>
#include <condition_variable>
#include <cstdint>
#include <functional>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <unordered_set>
#include <utility>
#include <vector>

#include "etf/errors.hpp"
#include "etf/feasibility.hpp"
#include "etf/seidel.hpp"

// Exhaustive search for standard-form signature matrices of a given order,
// plus a canonical form under switching equivalence.

namespace etf {

struct SearchConfig {
  int order = 0;
  std::uint64_t limit = 0;  // 0 means no limit
  bool pairwise_prune = true;
  int threads = 1;
  std::optional<std::int64_t> mu{};  // fixed mu; otherwise every admissible one
};

struct SearchStats {
  std::uint64_t nodes = 0;
  std::uint64_t solutions = 0;
};

namespace detail {

struct search_layout {
  int n = 0;
  std::int64_t mu = 0;
  std::array<std::int64_t, 3> quota{};
  std::vector<std::pair<int, int>> cells;  // free upper cells, row-major
};

inline search_layout make_layout(const FrameParams& p) {
  search_layout L;
  L.n = static_cast<int>(p.n);
  L.mu = p.mu;
  L.quota = {p.n - 1 - 2 * p.e, p.e, p.e};
  for (int i = 1; i + 1 < L.n; ++i)
    for (int j = i + 1; j < L.n; ++j) L.cells.emplace_back(i, j);
  return L;
}

struct search_grid {
  int n;
  std::vector<std::int8_t> code;
  std::vector<std::array<std::int64_t, 3>> cnt;

  explicit search_grid(const search_layout& L)
      : n(L.n), code(static_cast<std::size_t>(L.n) * L.n, 0), cnt(L.n) {
    reset();
  }

  void reset() {
    std::fill(code.begin(), code.end(), 0);
    for (auto& a : cnt) a = {0, 0, 0};
    for (int j = 1; j < n; ++j) cnt[j][0] = 1;  // the fixed one in column 0
  }

  int at(int i, int j) const { return code[static_cast<std::size_t>(i) * n + j]; }

  bool try_assign(const std::array<std::int64_t, 3>& quota, int i, int j, int c) {
    const int cc = c == 0 ? 0 : 3 - c;
    if (cnt[i][c] == quota[c] || cnt[j][cc] == quota[cc]) return false;
    ++cnt[i][c];
    ++cnt[j][cc];
    code[static_cast<std::size_t>(i) * n + j] = static_cast<std::int8_t>(c);
    code[static_cast<std::size_t>(j) * n + i] = static_cast<std::int8_t>(cc);
    return true;
  }

  void undo(int i, int j, int c) {
    --cnt[i][c];
    --cnt[j][c == 0 ? 0 : 3 - c];
  }

  // Necessary pair condition for the unordered pair {r, j}, all of whose
  // incident entries are already assigned.
  bool pair_ok(int r, int j, std::int64_t order, std::int64_t mu) const {
    if (at(r, j) == 2) std::swap(r, j);
    PairCounts pc{};
    for (int k = 0; k < n; ++k) {
      if (k == r || k == j) continue;
      ++pc.table[static_cast<std::size_t>(at(r, k))][static_cast<std::size_t>(at(k, j))];
    }
    return at(r, j) == 0 ? one_pair_system_holds(pc, order, mu)
                         : omega_pair_system_holds(pc, order, mu);
  }

  // Pair checks that become decidable once cells[depth] has been assigned.
  bool prune_ok(const search_layout& L, std::size_t depth) const {
    const auto [i, j] = L.cells[depth];
    if (j != L.n - 1) return true;
    for (int r = 1; r < i; ++r)
      if (!pair_ok(r, i, L.n, L.mu)) return false;
    if (depth + 1 == L.cells.size())
      for (int r = 1; r + 1 < L.n; ++r)
        if (!pair_ok(r, L.n - 1, L.n, L.mu)) return false;
    return true;
  }

  SeidelMatrix to_matrix() const {
    std::vector<CubeRoot> upper;
    upper.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) upper.push_back(CubeRoot::from_exponent(at(i, j)));
    return SeidelMatrix::from_upper(n, upper);
  }
};

template <typename Leaf>
inline void search_dfs(const search_layout& L, search_grid& g, std::size_t depth, bool prune,
                       std::uint64_t& nodes, const std::atomic<bool>* cancel,
                       const bool* stop, Leaf&& leaf) {
  if (cancel && cancel->load(std::memory_order_relaxed)) return;
  if (stop && *stop) return;
  if (depth == L.cells.size()) {
    leaf();
    return;
  }
  const auto [i, j] = L.cells[depth];
  for (int c = 0; c < 3; ++c) {
    if (!g.try_assign(L.quota, i, j, c)) continue;
    ++nodes;
    if (!prune || g.prune_ok(L, depth))
      search_dfs(L, g, depth + 1, prune, nodes, cancel, stop, leaf);
    g.undo(i, j, c);
    if (cancel && cancel->load(std::memory_order_relaxed)) return;
    if (stop && *stop) return;
  }
}

inline void replay_prefix(const search_layout& L, search_grid& g,
                          const std::vector<std::int8_t>& codes) {
  g.reset();
  for (std::size_t d = 0; d < codes.size(); ++d) {
    const auto [i, j] = L.cells[d];
    g.try_assign(L.quota, i, j, codes[d]);
  }
}

// Breadth-first expansion of valid assignment prefixes, one cell per layer,
// stopping once the layer is wide enough to keep the pool busy. Memory stays
// bounded regardless of the order being searched.
inline std::vector<std::vector<std::int8_t>> make_tasks(const search_layout& L, bool prune,
                                                        std::size_t target,
                                                        std::uint64_t& nodes) {
  std::vector<std::vector<std::int8_t>> layer;
  layer.emplace_back();
  search_grid g(L);
  std::size_t depth = 0;
  while (depth < L.cells.size() && layer.size() < target && !layer.empty()) {
    std::vector<std::vector<std::int8_t>> next;
    next.reserve(layer.size() * 3);
    for (const auto& prefix : layer) {
      replay_prefix(L, g, prefix);
      const auto [i, j] = L.cells[depth];
      for (int c = 0; c < 3; ++c) {
        if (!g.try_assign(L.quota, i, j, c)) continue;
        ++nodes;
        if (!prune || g.prune_ok(L, depth)) {
          auto child = prefix;
          child.push_back(static_cast<std::int8_t>(c));
          next.push_back(std::move(child));
        }
        g.undo(i, j, c);
      }
    }
    layer = std::move(next);
    ++depth;
  }
  return layer;
}

}  // namespace detail

// Enumerates all standard-form signature matrices of the given order in
// lexicographic order of their free upper-triangle entries (1 < w < W,
// row-major). The callback may return false to stop early. Every emitted
// matrix has passed verify_signature. Throws precondition_error when the
// order admits no signature parameters.
inline SearchStats search_signatures(const SearchConfig& cfg,
                                     const std::function<bool(const SeidelMatrix&)>& emit) {
  if (cfg.order < 2) throw precondition_error("search: order must be at least 2");
  std::vector<FrameParams> params;
  if (cfg.mu) {
    FrameParams p;
    try {
      p = derive_params(cfg.order, *cfg.mu);
    } catch (const param_error& e) {
      throw precondition_error(std::string("search: ") + e.what());
    }
    if (!p.e_integral || p.e < 0 || p.n - 1 - 2 * p.e < 0)
      throw precondition_error("search: n = " + std::to_string(cfg.order) +
                               ", mu = " + std::to_string(*cfg.mu) +
                               " does not admit row quotas");
    params.push_back(p);
  } else {
    params = feasible_params(cfg.order);
  }
  if (params.empty())
    throw precondition_error("search: order " + std::to_string(cfg.order) +
                             " admits no signature parameters");
  SearchStats stats;
  std::uint64_t released = 0;
  bool stopped = false;

  const auto release = [&](SeidelMatrix&& Q) {
    ++released;
    ++stats.solutions;
    const bool cont = emit(Q);
    if (!cont || (cfg.limit != 0 && released >= cfg.limit)) stopped = true;
  };

  for (const auto& p : params) {
    if (stopped) break;
    const auto L = detail::make_layout(p);

    if (cfg.threads <= 1) {
      detail::search_grid g(L);
      detail::search_dfs(L, g, 0, cfg.pairwise_prune, stats.nodes, nullptr, &stopped, [&] {
        auto Q = g.to_matrix();
        if (verify_signature(Q) == L.mu) release(std::move(Q));
      });
      continue;
    }

    const std::size_t target = std::max<std::size_t>(64, 16 * static_cast<std::size_t>(cfg.threads));
    const auto tasks = detail::make_tasks(L, cfg.pairwise_prune, target, stats.nodes);

    std::atomic<bool> cancel{false};
    std::atomic<std::size_t> next{0};
    std::atomic<std::uint64_t> worker_nodes{0};
    std::vector<std::optional<std::vector<SeidelMatrix>>> results(tasks.size());
    std::mutex mtx;
    std::condition_variable cv;

    const std::uint64_t task_cap =
        cfg.limit == 0 ? 0 : (cfg.limit > released ? cfg.limit - released : 1);

    const auto worker = [&] {
      std::uint64_t local_nodes = 0;
      detail::search_grid g(L);
      while (!cancel.load(std::memory_order_relaxed)) {
        const std::size_t t = next.fetch_add(1);
        if (t >= tasks.size()) break;
        detail::replay_prefix(L, g, tasks[t]);
        std::vector<SeidelMatrix> sols;
        bool task_stop = false;
        detail::search_dfs(L, g, tasks[t].size(), cfg.pairwise_prune, local_nodes, &cancel,
                           &task_stop, [&] {
                             auto Q = g.to_matrix();
                             if (verify_signature(Q) != L.mu) return;
                             sols.push_back(std::move(Q));
                             if (task_cap != 0 && sols.size() >= task_cap) task_stop = true;
                           });
        {
          std::lock_guard<std::mutex> lk(mtx);
          results[t] = std::move(sols);
        }
        cv.notify_all();
      }
      worker_nodes.fetch_add(local_nodes);
    };

    const int thread_count = static_cast<int>(
        std::min<std::size_t>(static_cast<std::size_t>(cfg.threads),
                              std::max<std::size_t>(tasks.size(), 1)));
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(thread_count));
    for (int t = 0; t < thread_count; ++t) pool.emplace_back(worker);

    for (std::size_t t = 0; t < tasks.size() && !stopped; ++t) {
      std::unique_lock<std::mutex> lk(mtx);
      cv.wait(lk, [&] { return results[t].has_value(); });
      auto sols = std::move(*results[t]);
      results[t].reset();
      lk.unlock();
      for (auto& Q : sols) {
        release(std::move(Q));
        if (stopped) break;
      }
    }
    if (stopped) cancel.store(true);
    for (auto& th : pool) th.join();
    stats.nodes += worker_nodes.load();
  }
  return stats;
}

struct SearchResult {
  std::vector<SeidelMatrix> matrices;
  SearchStats stats;
};

inline SearchResult search_all(const SearchConfig& cfg) {
  SearchResult out;
  out.stats = search_signatures(cfg, [&](const SeidelMatrix& Q) {
    out.matrices.push_back(Q);
    return true;
  });
  return out;
}

namespace detail {

// Entries of Q after switching vertex v's row and column to ones, expressed
// as cube-root exponents between original vertex labels.
struct standardized_view {
  const SeidelMatrix* Q;
  int v;

  int at(int x, int y) const {
    if (x == v || y == v) return 0;
    return (Q->code(v, x) + Q->code(x, y) + 3 - Q->code(v, y)) % 3;
  }
};

struct canon_state {
  std::vector<std::int8_t> placed;
  std::uint32_t mask = 0;
};

inline std::string canon_state_key(const standardized_view& view, const canon_state& s, int n) {
  std::string key;
  key.reserve(4 + static_cast<std::size_t>(n) * s.placed.size());
  for (int b = 0; b < 4; ++b) key.push_back(static_cast<char>((s.mask >> (8 * b)) & 0xff));
  for (int u = 0; u < n; ++u) {
    if (s.mask & (1u << u)) continue;
    for (const auto q : s.placed) key.push_back(static_cast<char>(view.at(q, u)));
  }
  return key;
}

// Minimal column-major upper-triangle entry sequence over all placements of
// the remaining vertices, for one choice of first vertex. States reaching the
// same minimal prefix are deduplicated by their view of the unplaced
// vertices, which keeps highly symmetric inputs polynomial.
inline std::vector<std::int8_t> canon_sequence(const standardized_view& view, int n) {
  std::vector<canon_state> frontier;
  frontier.push_back({{static_cast<std::int8_t>(view.v)}, 1u << view.v});
  std::vector<std::int8_t> seq;
  for (int pos = 1; pos < n; ++pos) {
    std::vector<std::int8_t> best_seg;
    std::vector<canon_state> next_frontier;
    std::unordered_set<std::string> seen;
    std::vector<std::int8_t> seg(static_cast<std::size_t>(pos));
    for (const auto& s : frontier) {
      for (int u = 0; u < n; ++u) {
        if (s.mask & (1u << u)) continue;
        for (int i = 0; i < pos; ++i)
          seg[static_cast<std::size_t>(i)] =
              static_cast<std::int8_t>(view.at(s.placed[static_cast<std::size_t>(i)], u));
        if (!best_seg.empty() && seg > best_seg) continue;
        if (best_seg.empty() || seg < best_seg) {
          best_seg = seg;
          next_frontier.clear();
          seen.clear();
        }
        canon_state ns;
        ns.placed = s.placed;
        ns.placed.push_back(static_cast<std::int8_t>(u));
        ns.mask = s.mask | (1u << u);
        auto key = canon_state_key(view, ns, n);
        if (!seen.insert(std::move(key)).second) continue;
        next_frontier.push_back(std::move(ns));
      }
    }
    seq.insert(seq.end(), best_seg.begin(), best_seg.end());
    frontier = std::move(next_frontier);
  }
  return seq;
}

inline SeidelMatrix matrix_from_colex(int n, const std::vector<std::int8_t>& seq) {
  std::vector<std::vector<int>> grid(static_cast<std::size_t>(n),
                                     std::vector<int>(static_cast<std::size_t>(n), 0));
  std::size_t pos = 0;
  for (int j = 1; j < n; ++j)
    for (int i = 0; i < j; ++i)
      grid[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = seq[pos++];
  std::vector<CubeRoot> upper;
  upper.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      upper.push_back(
          CubeRoot::from_exponent(grid[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]));
  return SeidelMatrix::from_upper(n, upper);
}

}  // namespace detail

// Canonical representative of the switching class of Q: the matrix whose
// column-major upper-triangle entry sequence (ordered 1 < w < W) is minimal
// over all diagonal switchings and vertex relabelings. Two matrices are
// switching equivalent exactly when their canonical forms are equal.
inline SeidelMatrix canonical_form(const SeidelMatrix& Q, int size_limit = 16) {
  const int n = Q.order();
  if (n > std::min(size_limit, 32))
    throw size_limit_error("canonical_form: order " + std::to_string(n) +
                           " exceeds the size limit " + std::to_string(std::min(size_limit, 32)));
  std::vector<std::int8_t> best;
  for (int v = 0; v < n; ++v) {
    const detail::standardized_view view{&Q, v};
    auto seq = detail::canon_sequence(view, n);
    if (best.empty() || seq < best) best = std::move(seq);
  }
  return detail::matrix_from_colex(n, best);
}

inline bool switching_equivalent(const SeidelMatrix& Q1, const SeidelMatrix& Q2,
                                 int size_limit = 16) {
  if (Q1.order() != Q2.order())
    throw std::invalid_argument("switching_equivalent: orders differ");
  return canonical_form(Q1, size_limit) == canonical_form(Q2, size_limit);
}

}  // namespace etf
