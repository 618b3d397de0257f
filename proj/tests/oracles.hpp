#pragma once

// Brute-force references used only by the tests. None of these share code
// paths with the library algorithms they check.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <vector>

#include "packsurgeon/grid.hpp"

namespace oracle {

using packsurgeon::grid::CellCoord;
using packsurgeon::grid::GridInstance;

inline int count_neighbors(int n, int m, int r, int c) {
  int k = 0;
  if (r > 1) ++k;
  if (r < n) ++k;
  if (c > 1) ++k;
  if (c < m) ++k;
  return k;
}

/// Cells with fewer than four neighbors, by enumeration.
inline std::int64_t boundary_cells(int n, int m) {
  std::int64_t total = 0;
  for (int r = 1; r <= n; ++r)
    for (int c = 1; c <= m; ++c)
      if (count_neighbors(n, m, r, c) < 4) ++total;
  return total;
}

/// Number of grid edges on the boundary of a rectangle, by walking its sides.
inline int boundary_edges(int i, int i_hi, int j, int j_hi) {
  int edges = 0;
  for (int c = j; c <= j_hi; ++c) edges += 2;  // top and bottom
  for (int r = i; r <= i_hi; ++r) edges += 2;  // left and right
  return edges;
}

/// 8-connected components by union-find; each sorted, list sorted by min cell.
inline std::vector<std::vector<CellCoord>> components_union_find(std::vector<CellCoord> cells) {
  std::sort(cells.begin(), cells.end());
  cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
  std::vector<int> parent(cells.size());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  for (std::size_t a = 0; a < cells.size(); ++a)
    for (std::size_t b = a + 1; b < cells.size(); ++b)
      if (std::abs(cells[a].row - cells[b].row) <= 1 && std::abs(cells[a].col - cells[b].col) <= 1)
        parent[find(static_cast<int>(a))] = find(static_cast<int>(b));
  std::vector<std::vector<CellCoord>> groups(cells.size());
  for (std::size_t a = 0; a < cells.size(); ++a) groups[find(static_cast<int>(a))].push_back(cells[a]);
  std::vector<std::vector<CellCoord>> out;
  for (auto& g : groups)
    if (!g.empty()) out.push_back(std::move(g));
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.front() < y.front(); });
  return out;
}

/// Maximum number of cell-disjoint marked-to-boundary paths by exhaustive
/// search. Any optimal family can be shortened so that each path starts at
/// its only marked cell and stops at its first boundary cell, so the search
/// only extends paths through unmarked interior cells.
class DisjointPathSearch {
 public:
  explicit DisjointPathSearch(const GridInstance& inst)
      : n_(inst.dims().rows()), m_(inst.dims().cols()),
        used_(static_cast<std::size_t>(n_ * m_), false),
        marked_flags_(static_cast<std::size_t>(n_ * m_), false),
        marked_(inst.marked().cells()) {
    for (const auto& c : marked_) marked_flags_[idx(c)] = true;
  }

  int solve() { return search(0); }

 private:
  [[nodiscard]] std::size_t idx(CellCoord c) const {
    return static_cast<std::size_t>((c.row - 1) * m_ + (c.col - 1));
  }
  [[nodiscard]] bool boundary(CellCoord c) const {
    return count_neighbors(n_, m_, c.row, c.col) < 4;
  }

  int search(std::size_t i) {
    if (i == marked_.size()) return 0;
    int best = search(i + 1);
    const CellCoord start = marked_[i];
    if (used_[idx(start)]) return best;
    used_[idx(start)] = true;
    if (boundary(start)) {
      best = std::max(best, 1 + search(i + 1));
    } else {
      extend(start, i, best);
    }
    used_[idx(start)] = false;
    return best;
  }

  void extend(CellCoord at, std::size_t i, int& best) {
    static constexpr int dr[4] = {-1, 1, 0, 0};
    static constexpr int dc[4] = {0, 0, -1, 1};
    for (int d = 0; d < 4; ++d) {
      const CellCoord nb{at.row + dr[d], at.col + dc[d]};
      if (nb.row < 1 || nb.row > n_ || nb.col < 1 || nb.col > m_) continue;
      if (used_[idx(nb)]) continue;
      if (boundary(nb)) {
        used_[idx(nb)] = true;
        best = std::max(best, 1 + search(i + 1));
        used_[idx(nb)] = false;
      } else if (!marked_flags_[idx(nb)]) {
        used_[idx(nb)] = true;
        extend(nb, i, best);
        used_[idx(nb)] = false;
      }
    }
  }

  int n_, m_;
  std::vector<bool> used_;
  std::vector<bool> marked_flags_;
  std::vector<CellCoord> marked_;
};

inline int max_disjoint_paths(const GridInstance& inst) {
  return DisjointPathSearch(inst).solve();
}

/// Length (in cells) of the shortest path from any source to the boundary
/// avoiding `blocked`, by one single-source BFS per source; -1 if none.
inline int shortest_escape(const GridInstance& inst, const std::vector<CellCoord>& sources,
                           const std::vector<bool>& blocked) {
  const int n = inst.dims().rows();
  const int m = inst.dims().cols();
  int best = -1;
  for (const auto& s : sources) {
    std::vector<int> dist(static_cast<std::size_t>(n * m), -1);
    auto id = [&](CellCoord c) { return static_cast<std::size_t>((c.row - 1) * m + c.col - 1); };
    if (blocked[id(s)]) continue;
    std::vector<CellCoord> q{s};
    dist[id(s)] = 1;
    for (std::size_t h = 0; h < q.size(); ++h) {
      const CellCoord c = q[h];
      if (count_neighbors(n, m, c.row, c.col) < 4) {
        if (best < 0 || dist[id(c)] < best) best = dist[id(c)];
        break;
      }
      const CellCoord nbs[4] = {{c.row - 1, c.col}, {c.row + 1, c.col}, {c.row, c.col - 1}, {c.row, c.col + 1}};
      for (const auto& nb : nbs) {
        if (nb.row < 1 || nb.row > n || nb.col < 1 || nb.col > m) continue;
        if (blocked[id(nb)] || dist[id(nb)] >= 0) continue;
        dist[id(nb)] = dist[id(c)] + 1;
        q.push_back(nb);
      }
    }
  }
  return best;
}

}  // namespace oracle
