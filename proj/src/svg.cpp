#include "packsurgeon/svg.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

namespace packsurgeon::svg {
namespace {

constexpr double kCell = 20.0;
constexpr double kScale = 40.0;

// Fixed formatting keeps the output byte-stable.
std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

}  // namespace

std::string render_grid(const grid::GridInstance& instance, const flow::PathCover* cover) {
  const int n = instance.dims().rows();
  const int m = instance.dims().cols();
  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(m * kCell)
      << "\" height=\"" << num(n * kCell) << "\" viewBox=\"0 0 " << num(m * kCell) << ' '
      << num(n * kCell) << "\">\n";
  out << "<g stroke=\"#999\" stroke-width=\"0.5\">\n";
  for (int r = 1; r <= n; ++r) {
    for (int c = 1; c <= m; ++c) {
      const bool marked = instance.marked().contains({r, c});
      out << "<rect x=\"" << num((c - 1) * kCell) << "\" y=\"" << num((r - 1) * kCell)
          << "\" width=\"" << num(kCell) << "\" height=\"" << num(kCell) << "\" fill=\""
          << (marked ? "#4caf50" : "#ffffff") << "\"/>\n";
    }
  }
  out << "</g>\n";
  if (cover != nullptr) {
    out << "<g fill=\"none\" stroke=\"#1565c0\" stroke-width=\"3\">\n";
    for (const auto& cell : cover->cut_cells) {
      out << "<rect x=\"" << num((cell.col - 1) * kCell + 3) << "\" y=\""
          << num((cell.row - 1) * kCell + 3) << "\" width=\"" << num(kCell - 6)
          << "\" height=\"" << num(kCell - 6) << "\"/>\n";
    }
    out << "</g>\n<g fill=\"none\" stroke=\"#d32f2f\" stroke-width=\"2\">\n";
    for (const auto& path : cover->paths) {
      out << "<polyline points=\"";
      for (std::size_t k = 0; k < path.cells.size(); ++k) {
        if (k) out << ' ';
        out << num((path.cells[k].col - 0.5) * kCell) << ','
            << num((path.cells[k].row - 0.5) * kCell);
      }
      out << "\"/>\n";
      out << "<circle cx=\"" << num((path.cells.front().col - 0.5) * kCell) << "\" cy=\""
          << num((path.cells.front().row - 0.5) * kCell) << "\" r=\"3\"/>\n";
    }
    out << "</g>\n<g fill=\"none\" stroke=\"#ff9800\" stroke-width=\"2\" "
           "stroke-dasharray=\"4 2\">\n";
    for (const auto& r : cover->rectangles) {
      out << "<rect x=\"" << num((r.j - 1) * kCell) << "\" y=\"" << num((r.i - 1) * kCell)
          << "\" width=\"" << num(r.width() * kCell) << "\" height=\""
          << num(r.height() * kCell) << "\"/>\n";
    }
    out << "</g>\n";
  }
  out << "</svg>\n";
  return out.str();
}

std::string render_packing(const geometry::Packing& packing,
                           const geometry::GoodnessConfig& cfg,
                           const std::vector<geometry::Box>& overlays) {
  const double side = packing.x * kScale;
  const auto sx = [&](double x) { return num(x * kScale); };
  const auto sy = [&](double y) { return num(side - y * kScale); };
  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(side) << "\" height=\""
      << num(side) << "\" viewBox=\"0 0 " << num(side) << ' ' << num(side) << "\">\n";
  out << "<rect x=\"0\" y=\"0\" width=\"" << num(side) << "\" height=\"" << num(side)
      << "\" fill=\"#fafafa\" stroke=\"#000\" stroke-width=\"1\"/>\n";
  out << "<g stroke=\"#333\" stroke-width=\"0.5\">\n";
  for (const auto& s : packing.squares) {
    out << "<polygon fill=\"" << (geometry::is_good(s, cfg) ? "#81c784" : "#e57373")
        << "\" points=\"";
    const auto corners = s.corners();
    for (std::size_t k = 0; k < corners.size(); ++k) {
      if (k) out << ' ';
      out << sx(corners[k].x) << ',' << sy(corners[k].y);
    }
    out << "\"/>\n";
  }
  out << "</g>\n";
  if (!overlays.empty()) {
    out << "<g fill=\"none\" stroke=\"#1565c0\" stroke-width=\"2\">\n";
    for (const auto& b : overlays) {
      out << "<rect x=\"" << sx(b.xlo) << "\" y=\"" << sy(b.yhi) << "\" width=\""
          << num((b.xhi - b.xlo) * kScale) << "\" height=\"" << num((b.yhi - b.ylo) * kScale)
          << "\"/>\n";
    }
    out << "</g>\n";
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace packsurgeon::svg
