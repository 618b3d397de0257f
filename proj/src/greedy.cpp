#include "packsurgeon/greedy.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "packsurgeon/flow.hpp"
#include "packsurgeon/parallel.hpp"
#include "packsurgeon/random.hpp"

namespace packsurgeon::greedy {
namespace {

using grid::CellCoord;
using grid::MarkedSet;

// up, left, right, down
constexpr int kDr[4] = {-1, 0, 0, 1};
constexpr int kDc[4] = {0, -1, 1, 0};

}  // namespace

GreedyResult greedy_bfs_paths(const GridInstance& instance) {
  const GridDims& dims = instance.dims();
  const auto cells = static_cast<std::size_t>(dims.cell_count());
  std::vector<bool> used(cells, false);
  GreedyResult result;

  // Marked boundary cells are distance-0 sources; the smallest one wins each
  // round, so they are accepted first in row-major order.
  std::vector<CellCoord> pending;
  for (const auto& c : instance.marked()) {
    if (grid::is_boundary(dims, c)) {
      used[grid::dense_index(dims, c)] = true;
      result.paths.push_back(CellPath{{c}});
    } else {
      pending.push_back(c);
    }
  }

  constexpr int kUnseen = std::numeric_limits<int>::max();
  std::vector<int> dist(cells, kUnseen);
  std::vector<std::int64_t> pred(cells, -1);
  std::vector<std::int64_t> queue;
  std::vector<std::int64_t> touched;
  queue.reserve(cells);
  for (;;) {
    for (auto k : touched) {
      dist[k] = kUnseen;
      pred[k] = -1;
    }
    touched.clear();
    queue.clear();
    for (const auto& c : pending) {
      const auto k = grid::dense_index(dims, c);
      if (used[k]) continue;
      dist[k] = 0;
      queue.push_back(k);
      touched.push_back(k);
    }
    int best_dist = kUnseen;
    std::int64_t best = -1;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const auto k = queue[head];
      if (dist[k] >= best_dist) break;
      const CellCoord c = grid::from_dense(dims, k);
      for (int d = 0; d < 4; ++d) {
        const CellCoord nb{c.row + kDr[d], c.col + kDc[d]};
        if (!grid::in_bounds(dims, nb)) continue;
        const auto nk = grid::dense_index(dims, nb);
        if (used[nk] || dist[nk] != kUnseen) continue;
        dist[nk] = dist[k] + 1;
        pred[nk] = k;
        queue.push_back(nk);
        touched.push_back(nk);
        if (grid::is_boundary(dims, nb) &&
            (dist[nk] < best_dist || (dist[nk] == best_dist && nk < best))) {
          best_dist = dist[nk];
          best = nk;
        }
      }
    }
    if (best < 0) break;
    CellPath path;
    for (auto k = best; k >= 0; k = pred[k]) {
      path.cells.push_back(grid::from_dense(dims, k));
      used[k] = true;
    }
    std::reverse(path.cells.begin(), path.cells.end());
    result.paths.push_back(std::move(path));
  }
  result.f_prime = static_cast<int>(result.paths.size());
  return result;
}

Comparison compare_f_prime_f(const GridInstance& instance) {
  Comparison cmp;
  cmp.f_prime = greedy_bfs_paths(instance).f_prime;
  cmp.f = flow::solve_max_flow(instance).f;
  if (cmp.f_prime > cmp.f) {
    throw std::logic_error("greedy found more paths than the maximum flow");
  }
  return cmp;
}

GridInstance uniform_instance(const GridDims& dims, double p, std::uint64_t seed) {
  CounterRng rng(seed);
  std::vector<CellCoord> marked;
  for (int r = 1; r <= dims.rows(); ++r) {
    for (int c = 1; c <= dims.cols(); ++c) {
      if (rng.bernoulli(p)) marked.push_back({r, c});
    }
  }
  return GridInstance(dims, MarkedSet(std::move(marked)));
}

namespace {

int rand_int(CounterRng& rng, int lo, int hi) {  // inclusive
  if (hi <= lo) return lo;
  return lo + static_cast<int>(rng.below(static_cast<std::uint64_t>(hi - lo + 1)));
}

void mark_ring(std::vector<CellCoord>& out, const GridDims& dims, int depth,
               double density, CounterRng& rng) {
  const int top = 1 + depth;
  const int bottom = dims.rows() - depth;
  const int left = 1 + depth;
  const int right = dims.cols() - depth;
  if (top > bottom || left > right) return;
  for (int r = top; r <= bottom; ++r) {
    for (int c = left; c <= right; ++c) {
      const bool on_ring = r == top || r == bottom || c == left || c == right;
      if (on_ring && rng.bernoulli(density)) out.push_back({r, c});
    }
  }
}

}  // namespace

GridInstance make_family_instance(Family family, const GridDims& dims,
                                  std::uint64_t seed) {
  CounterRng rng(seed, static_cast<std::uint64_t>(family) + 1);
  const int n = dims.rows();
  const int m = dims.cols();
  std::vector<CellCoord> marked;
  switch (family) {
    case Family::kUniform: {
      const double p = rng.uniform(0.05, 0.75);
      for (int r = 1; r <= n; ++r)
        for (int c = 1; c <= m; ++c)
          if (rng.bernoulli(p)) marked.push_back({r, c});
      break;
    }
    case Family::kRings: {
      const int max_depth = (std::min(n, m) - 1) / 2;
      const int rings = rand_int(rng, 1, 3);
      for (int k = 0; k < rings; ++k) {
        mark_ring(marked, dims, rand_int(rng, 1, std::max(1, max_depth)),
                  rng.uniform(0.5, 1.0), rng);
      }
      const double noise = rng.uniform(0.0, 0.3);
      for (int r = 2; r < n; ++r)
        for (int c = 2; c < m; ++c)
          if (rng.bernoulli(noise)) marked.push_back({r, c});
      break;
    }
    case Family::kComb: {
      // Teeth hang from an interior spine; the gaps between teeth are the
      // only corridors to the boundary.
      const int spine = rand_int(rng, 2, std::max(2, n / 2));
      const int period = rand_int(rng, 2, 4);
      const int depth = rand_int(rng, 1, std::max(1, n - spine - 1));
      for (int c = 2; c < m; ++c) {
        if (rng.bernoulli(0.9)) marked.push_back({spine, c});
        if ((c % period) == 0) {
          for (int r = spine + 1; r <= std::min(n - 1, spine + depth); ++r) {
            if (rng.bernoulli(0.85)) marked.push_back({r, c});
          }
        }
      }
      break;
    }
    case Family::kBlockedCorridor: {
      const int r0 = rand_int(rng, 2, std::max(2, n - 2));
      const int c0 = rand_int(rng, 2, std::max(2, m - 2));
      const int h = rand_int(rng, 1, std::max(1, n - r0));
      const int w = rand_int(rng, 1, std::max(1, m - c0));
      for (int r = r0; r < std::min(n, r0 + h); ++r)
        for (int c = c0; c < std::min(m, c0 + w); ++c)
          if (rng.bernoulli(0.9)) marked.push_back({r, c});
      // Thin wall between the block and the nearest side.
      const int wall_col = std::max(2, c0 - rand_int(rng, 1, 2));
      for (int r = std::max(2, r0 - 1); r <= std::min(n - 1, r0 + h); ++r) {
        if (rng.bernoulli(0.7)) marked.push_back({r, wall_col});
      }
      const double noise = rng.uniform(0.0, 0.2);
      for (int r = 1; r <= n; ++r)
        for (int c = 1; c <= m; ++c)
          if (rng.bernoulli(noise)) marked.push_back({r, c});
      break;
    }
    case Family::kClusters: {
      const int blobs = rand_int(rng, 1, 5);
      for (int b = 0; b < blobs; ++b) {
        const int r0 = rand_int(rng, 1, n);
        const int c0 = rand_int(rng, 1, m);
        const int h = rand_int(rng, 1, std::max(1, n / 2));
        const int w = rand_int(rng, 1, std::max(1, m / 2));
        const double density = rng.uniform(0.6, 1.0);
        for (int r = r0; r <= std::min(n, r0 + h - 1); ++r)
          for (int c = c0; c <= std::min(m, c0 + w - 1); ++c)
            if (rng.bernoulli(density)) marked.push_back({r, c});
      }
      break;
    }
  }
  return GridInstance(dims, MarkedSet(std::move(marked)));
}

std::optional<GridInstance> counterexample_search(int budget, const GridDims& dims,
                                                  std::uint64_t seed) {
  if (budget <= 0) return std::nullopt;
  // Every cell of a single row or column is on the boundary: f' = f = |M|.
  if (dims.rows() <= 2 || dims.cols() <= 2) return std::nullopt;

  constexpr Family kFamilies[] = {Family::kUniform, Family::kRings, Family::kComb,
                                  Family::kBlockedCorridor, Family::kClusters};
  constexpr int kFamilyCount = static_cast<int>(std::size(kFamilies));
  const std::size_t batch = std::max<std::size_t>(64, 16 * worker_count());
  std::vector<char> hit;
  for (int base = 0; base < budget; base += static_cast<int>(batch)) {
    const int count = std::min<int>(static_cast<int>(batch), budget - base);
    hit.assign(static_cast<std::size_t>(count), 0);
    parallel_for(static_cast<std::size_t>(count), [&](std::size_t k) {
      const int t = base + static_cast<int>(k);
      const auto inst = make_family_instance(kFamilies[t % kFamilyCount], dims,
                                             splitmix64(seed ^ splitmix64(t)));
      const auto cmp = compare_f_prime_f(inst);
      hit[k] = cmp.f_prime < cmp.f ? 1 : 0;
    });
    for (int k = 0; k < count; ++k) {
      if (hit[static_cast<std::size_t>(k)]) {
        const int t = base + k;
        return make_family_instance(kFamilies[t % kFamilyCount], dims,
                                    splitmix64(seed ^ splitmix64(t)));
      }
    }
  }
  return std::nullopt;
}

RatioStats ratio_experiment(const RatioModel& model, int trials, std::uint64_t seed) {
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  if (!(model.p >= 0.0 && model.p <= 1.0)) {
    throw std::invalid_argument("marking probability must lie in [0, 1]");
  }
  const GridDims dims(model.n, model.m);
  std::vector<Comparison> per_trial(static_cast<std::size_t>(trials));
  parallel_for(per_trial.size(), [&](std::size_t t) {
    const auto inst = uniform_instance(dims, model.p, splitmix64(seed ^ splitmix64(t)));
    per_trial[t] = compare_f_prime_f(inst);
  });

  RatioStats stats;
  stats.trials = trials;
  double sum = 0.0;
  for (const auto& cmp : per_trial) {
    if (cmp.f == 0) continue;
    const Ratio r{cmp.f_prime, cmp.f};
    stats.ratios.push_back(r);
    sum += r.value();
    // a/b < c/d  <=>  a*d < c*b for positive denominators
    if (!stats.min_ratio ||
        static_cast<std::int64_t>(r.num) * stats.min_ratio->den <
            static_cast<std::int64_t>(stats.min_ratio->num) * r.den) {
      stats.min_ratio = r;
    }
  }
  if (!stats.ratios.empty()) stats.mean_ratio = sum / static_cast<double>(stats.ratios.size());
  return stats;
}

}  // namespace packsurgeon::greedy
