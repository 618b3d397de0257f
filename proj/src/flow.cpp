#include "packsurgeon/flow.hpp"

#include <algorithm>
#include <cstdint>
#include <deque>
#include <stdexcept>

namespace packsurgeon::flow {
namespace {

using grid::CellCoord;
using grid::GridDims;

constexpr int kDr[4] = {-1, 0, 0, 1};
constexpr int kDc[4] = {0, -1, 1, 0};

/// Unit-capacity residual network in CSR form.
class UnitNetwork {
 public:
  struct Arc {
    int to;
    int rev;
    std::uint8_t cap;
    bool forward;
    bool unbounded;  // models an infinite-capacity edge of the cut network
  };

  UnitNetwork(int nodes, const std::vector<std::tuple<int, int, bool>>& edges)
      : start_(nodes + 1, 0) {
    for (const auto& [u, v, unbounded] : edges) {
      ++start_[u + 1];
      ++start_[v + 1];
    }
    for (int i = 0; i < nodes; ++i) start_[i + 1] += start_[i];
    arcs_.resize(start_[nodes]);
    std::vector<int> fill(start_.begin(), start_.end() - 1);
    for (const auto& [u, v, unbounded] : edges) {
      const int a = fill[u]++;
      const int b = fill[v]++;
      arcs_[a] = {v, b, 1, true, unbounded};
      arcs_[b] = {u, a, 0, false, unbounded};
    }
  }

  [[nodiscard]] int node_count() const {
    return static_cast<int>(start_.size()) - 1;
  }
  [[nodiscard]] int begin(int v) const { return start_[v]; }
  [[nodiscard]] int end(int v) const { return start_[v + 1]; }
  Arc& arc(int e) { return arcs_[e]; }
  [[nodiscard]] const Arc& arc(int e) const { return arcs_[e]; }

  void push(int e) {
    --arcs_[e].cap;
    ++arcs_[arcs_[e].rev].cap;
  }

 private:
  std::vector<int> start_;
  std::vector<Arc> arcs_;
};

bool bfs_levels(const UnitNetwork& net, int s, int t, std::vector<int>& level) {
  std::fill(level.begin(), level.end(), -1);
  std::vector<int> queue;
  queue.reserve(net.node_count());
  level[s] = 0;
  queue.push_back(s);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const int v = queue[head];
    for (int e = net.begin(v); e < net.end(v); ++e) {
      const auto& a = net.arc(e);
      if (a.cap > 0 && level[a.to] < 0) {
        level[a.to] = level[v] + 1;
        queue.push_back(a.to);
      }
    }
  }
  return level[t] >= 0;
}

int run_dinic(UnitNetwork& net, int s, int t) {
  const int nodes = net.node_count();
  std::vector<int> level(nodes), next_arc(nodes);
  std::vector<int> stack;  // arcs on the current DFS path
  int flow = 0;
  while (bfs_levels(net, s, t, level)) {
    for (int v = 0; v < nodes; ++v) next_arc[v] = net.begin(v);
    stack.clear();
    int v = s;
    for (;;) {
      if (v == t) {
        for (int e : stack) net.push(e);
        ++flow;
        stack.clear();
        v = s;
        continue;
      }
      bool advanced = false;
      for (int& e = next_arc[v]; e < net.end(v); ++e) {
        const auto& a = net.arc(e);
        if (a.cap > 0 && level[a.to] == level[v] + 1) {
          stack.push_back(e);
          v = a.to;
          advanced = true;
          break;
        }
      }
      if (advanced) continue;
      if (v == s) break;
      // Dead end: retire the node and retreat along the path.
      level[v] = -1;
      const int e = stack.back();
      stack.pop_back();
      v = net.arc(net.arc(e).rev).to;
      ++next_arc[v];
    }
  }
  return flow;
}

int run_edmonds_karp(UnitNetwork& net, int s, int t) {
  const int nodes = net.node_count();
  std::vector<int> parent_arc(nodes);
  std::vector<int> queue;
  queue.reserve(nodes);
  int flow = 0;
  for (;;) {
    std::fill(parent_arc.begin(), parent_arc.end(), -1);
    queue.clear();
    queue.push_back(s);
    parent_arc[s] = -2;
    for (std::size_t head = 0; head < queue.size() && parent_arc[t] == -1;
         ++head) {
      const int v = queue[head];
      for (int e = net.begin(v); e < net.end(v); ++e) {
        const auto& a = net.arc(e);
        if (a.cap > 0 && parent_arc[a.to] == -1) {
          parent_arc[a.to] = e;
          queue.push_back(a.to);
        }
      }
    }
    if (parent_arc[t] == -1) return flow;
    for (int v = t; v != s;) {
      const int e = parent_arc[v];
      net.push(e);
      v = net.arc(net.arc(e).rev).to;
    }
    ++flow;
  }
}

}  // namespace

MaxFlowResult solve_max_flow(const GridInstance& instance, Algorithm algorithm) {
  const GridDims& dims = instance.dims();
  const std::int64_t cells = dims.cell_count();
  if (2 * cells + 2 > INT32_MAX / 8) {
    throw std::invalid_argument("grid too large for the flow network");
  }
  const int n_cells = static_cast<int>(cells);
  const int source = 2 * n_cells;
  const int sink = source + 1;
  const auto a_node = [](int k) { return 2 * k; };
  const auto b_node = [](int k) { return 2 * k + 1; };

  std::vector<std::tuple<int, int, bool>> edges;
  edges.reserve(static_cast<std::size_t>(n_cells) * 6 + instance.marked().size());
  for (const auto& c : instance.marked()) {
    edges.emplace_back(source, a_node(static_cast<int>(grid::dense_index(dims, c))), true);
  }
  for (int k = 0; k < n_cells; ++k) {
    const CellCoord c = grid::from_dense(dims, k);
    edges.emplace_back(a_node(k), b_node(k), false);
    for (int d = 0; d < 4; ++d) {
      const CellCoord nb{c.row + kDr[d], c.col + kDc[d]};
      if (grid::in_bounds(dims, nb)) {
        edges.emplace_back(b_node(k), a_node(static_cast<int>(grid::dense_index(dims, nb))), true);
      }
    }
    if (grid::is_boundary(dims, c)) edges.emplace_back(b_node(k), sink, true);
  }

  UnitNetwork net(sink + 1, edges);
  MaxFlowResult result;
  result.f = algorithm == Algorithm::kDinic ? run_dinic(net, source, sink)
                                            : run_edmonds_karp(net, source, sink);

  // Source side of the residual graph, with unbounded arcs always open.
  std::vector<bool> reach(net.node_count(), false);
  std::vector<int> queue{source};
  reach[source] = true;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const int v = queue[head];
    for (int e = net.begin(v); e < net.end(v); ++e) {
      const auto& a = net.arc(e);
      const bool open = a.cap > 0 || (a.forward && a.unbounded);
      if (open && !reach[a.to]) {
        reach[a.to] = true;
        queue.push_back(a.to);
      }
    }
  }
  std::vector<CellCoord> cut;
  for (int k = 0; k < n_cells; ++k) {
    if (reach[a_node(k)] && !reach[b_node(k)]) cut.push_back(grid::from_dense(dims, k));
  }
  result.cut = MarkedSet(std::move(cut));

  // Decompose into unit paths, cancelling flow as it is traced.
  const auto carries_flow = [&](int e) {
    const auto& a = net.arc(e);
    return a.forward && a.cap == 0;
  };
  for (int e0 = net.begin(source); e0 < net.end(source); ++e0) {
    if (!carries_flow(e0)) continue;
    net.push(net.arc(e0).rev);
    CellPath path;
    int v = net.arc(e0).to;
    while (v != sink) {
      int next = -1;
      for (int e = net.begin(v); e < net.end(v); ++e) {
        if (carries_flow(e)) {
          next = e;
          break;
        }
      }
      if (next < 0) throw std::logic_error("flow decomposition hit a dead end");
      if (v % 2 == 0) path.cells.push_back(grid::from_dense(dims, v / 2));
      net.push(net.arc(next).rev);
      v = net.arc(next).to;
    }
    // Stop at the first boundary cell; the suffix is redundant.
    auto first_boundary = std::find_if(
        path.cells.begin(), path.cells.end(),
        [&](CellCoord c) { return grid::is_boundary(dims, c); });
    path.cells.erase(first_boundary + 1, path.cells.end());
    result.paths.push_back(std::move(path));
  }
  std::sort(result.paths.begin(), result.paths.end(),
            [](const CellPath& a, const CellPath& b) {
              return a.cells.front() < b.cells.front();
            });
  return result;
}

std::pair<int, std::vector<CellPath>> max_disjoint_paths(
    const GridInstance& instance, Algorithm algorithm) {
  auto r = solve_max_flow(instance, algorithm);
  return {r.f, std::move(r.paths)};
}

MarkedSet min_cut_cells(const GridInstance& instance, Algorithm algorithm) {
  return solve_max_flow(instance, algorithm).cut;
}

PathCover path_cover(const GridInstance& instance, Algorithm algorithm) {
  auto solved = solve_max_flow(instance, algorithm);
  PathCover cover;
  cover.f = solved.f;
  cover.paths = std::move(solved.paths);
  cover.cut_cells = std::move(solved.cut);
  for (const auto& component : grid::eight_connected_components(cover.cut_cells)) {
    cover.rectangles.push_back(grid::bounding_rectangle(component));
  }
  return cover;
}

bool marked_reach_boundary(const GridInstance& instance,
                           const MarkedSet& blocked) {
  const GridDims& dims = instance.dims();
  std::vector<bool> closed(static_cast<std::size_t>(dims.cell_count()), false);
  for (const auto& c : blocked) {
    if (grid::in_bounds(dims, c)) closed[grid::dense_index(dims, c)] = true;
  }
  std::vector<CellCoord> queue;
  for (const auto& c : instance.marked()) {
    const auto k = grid::dense_index(dims, c);
    if (!closed[k]) {
      closed[k] = true;
      queue.push_back(c);
    }
  }
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const CellCoord c = queue[head];
    if (grid::is_boundary(dims, c)) return true;
    for (int d = 0; d < 4; ++d) {
      const CellCoord nb{c.row + kDr[d], c.col + kDc[d]};
      if (!grid::in_bounds(dims, nb)) continue;
      const auto k = grid::dense_index(dims, nb);
      if (!closed[k]) {
        closed[k] = true;
        queue.push_back(nb);
      }
    }
  }
  return false;
}

std::vector<std::string> validate_path_cover(const GridInstance& instance,
                                             const PathCover& cover) {
  std::vector<std::string> errors;
  if (cover.f < 0) errors.push_back("negative f");
  if (static_cast<int>(cover.paths.size()) != cover.f) {
    errors.push_back("path count " + std::to_string(cover.paths.size()) +
                     " != f " + std::to_string(cover.f));
  }
  for (std::size_t p = 0; p < cover.paths.size(); ++p) {
    if (auto msg = grid::validate_cell_path(instance, cover.paths[p]); !msg.empty()) {
      errors.push_back("path " + std::to_string(p) + ": " + msg);
    }
  }
  if (auto msg = grid::check_disjoint(instance.dims(), cover.paths); !msg.empty()) {
    errors.push_back(msg);
  }
  if (static_cast<int>(cover.cut_cells.size()) != cover.f) {
    errors.push_back("cut size " + std::to_string(cover.cut_cells.size()) +
                     " != f " + std::to_string(cover.f));
  }
  if (marked_reach_boundary(instance, cover.cut_cells)) {
    errors.push_back("cut does not separate marked cells from the boundary");
  }
  for (const auto& r : cover.rectangles) {
    if (!grid::is_valid_rect(instance.dims(), r)) errors.push_back("invalid rectangle");
  }
  for (const auto& c : instance.marked()) {
    const bool covered = std::any_of(cover.rectangles.begin(), cover.rectangles.end(),
                                     [&](const GridRect& r) { return r.contains(c); });
    if (!covered) {
      errors.push_back("marked cell (" + std::to_string(c.row) + "," +
                       std::to_string(c.col) + ") not covered by a rectangle");
      break;
    }
  }
  const auto perimeter = grid::total_perimeter(cover.rectangles);
  if (perimeter > 4LL * cover.f) {
    errors.push_back("total perimeter " + std::to_string(perimeter) + " > 4f = " +
                     std::to_string(4LL * cover.f));
  }
  return errors;
}

}  // namespace packsurgeon::flow
