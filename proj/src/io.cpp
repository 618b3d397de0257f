#include "packsurgeon/io.hpp"

#include <fstream>
#include <sstream>

namespace packsurgeon::io {
namespace {

using grid::CellCoord;
using grid::GridRect;

const json& field(const json& j, const char* name, const std::string& context) {
  if (!j.is_object()) throw InputError(context + ": expected a JSON object");
  auto it = j.find(name);
  if (it == j.end()) throw InputError(context + ": missing field '" + name + "'");
  return *it;
}

int as_int(const json& v, const std::string& what) {
  if (!v.is_number_integer()) throw InputError(what + ": expected an integer");
  return v.get<int>();
}

double as_double(const json& v, const std::string& what) {
  if (!v.is_number()) throw InputError(what + ": expected a number");
  return v.get<double>();
}

const json& as_array(const json& v, const std::string& what) {
  if (!v.is_array()) throw InputError(what + ": expected an array");
  return v;
}

json cell_json(CellCoord c) { return json::array({c.row, c.col}); }

CellCoord cell_from(const json& v, const std::string& what) {
  as_array(v, what);
  if (v.size() != 2) throw InputError(what + ": expected [row, col]");
  return {as_int(v[0], what + "[0]"), as_int(v[1], what + "[1]")};
}

json rect_json(const GridRect& r) { return json::array({r.i, r.i_hi, r.j, r.j_hi}); }

GridRect rect_from(const json& v, const std::string& what) {
  as_array(v, what);
  if (v.size() != 4) throw InputError(what + ": expected [i, i_hi, j, j_hi]");
  GridRect r{as_int(v[0], what), as_int(v[1], what), as_int(v[2], what),
             as_int(v[3], what)};
  if (!grid::is_valid_rect(r)) throw InputError(what + ": invalid rectangle bounds");
  return r;
}

json point_json(geometry::Point p) { return json::array({p.x, p.y}); }

geometry::Point point_from(const json& v, const std::string& what) {
  as_array(v, what);
  if (v.size() != 2) throw InputError(what + ": expected [x, y]");
  return {as_double(v[0], what), as_double(v[1], what)};
}

json cells_json(const grid::MarkedSet& cells) {
  json out = json::array();
  for (const auto& c : cells) out.push_back(cell_json(c));
  return out;
}

}  // namespace

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path.string() + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return json::parse(buffer.str());
  } catch (const json::parse_error& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + path.string() + "'");
  out << text;
}

void write_json_file(const std::filesystem::path& path, const json& value) {
  write_text_file(path, value.dump(2) + "\n");
}

json to_json(const grid::GridInstance& instance) {
  return {{"n", instance.dims().rows()},
          {"m", instance.dims().cols()},
          {"marked", cells_json(instance.marked())}};
}

grid::GridInstance instance_from_json(const json& j) {
  const std::string ctx = "instance";
  const int n = as_int(field(j, "n", ctx), ctx + ".n");
  const int m = as_int(field(j, "m", ctx), ctx + ".m");
  std::vector<CellCoord> cells;
  const auto& marked = as_array(field(j, "marked", ctx), ctx + ".marked");
  for (std::size_t k = 0; k < marked.size(); ++k) {
    cells.push_back(cell_from(marked[k], ctx + ".marked[" + std::to_string(k) + "]"));
  }
  try {
    return grid::GridInstance(grid::GridDims(n, m), grid::MarkedSet(std::move(cells)));
  } catch (const std::invalid_argument& e) {
    throw InputError(ctx + ": " + e.what());
  }
}

json paths_to_json(const std::vector<grid::CellPath>& paths) {
  json out = json::array();
  for (const auto& p : paths) {
    json cells = json::array();
    for (const auto& c : p.cells) cells.push_back(cell_json(c));
    out.push_back(std::move(cells));
  }
  return out;
}

json to_json(const flow::PathCover& cover) {
  return {{"f", cover.f},
          {"paths", paths_to_json(cover.paths)},
          {"cut", cells_json(cover.cut_cells)},
          {"rects", rects_to_json(cover.rectangles)["rects"]}};
}

flow::PathCover cover_from_json(const json& j) {
  const std::string ctx = "cover";
  flow::PathCover cover;
  cover.f = as_int(field(j, "f", ctx), ctx + ".f");
  const auto& paths = as_array(field(j, "paths", ctx), ctx + ".paths");
  for (std::size_t p = 0; p < paths.size(); ++p) {
    const std::string what = ctx + ".paths[" + std::to_string(p) + "]";
    grid::CellPath path;
    for (const auto& c : as_array(paths[p], what)) path.cells.push_back(cell_from(c, what));
    cover.paths.push_back(std::move(path));
  }
  std::vector<CellCoord> cut;
  for (const auto& c : as_array(field(j, "cut", ctx), ctx + ".cut")) {
    cut.push_back(cell_from(c, ctx + ".cut"));
  }
  cover.cut_cells = grid::MarkedSet(std::move(cut));
  cover.rectangles = rects_from_json(field(j, "rects", ctx));
  return cover;
}

json rects_to_json(const std::vector<GridRect>& rects) {
  json arr = json::array();
  for (const auto& r : rects) arr.push_back(rect_json(r));
  return {{"rects", std::move(arr)}};
}

std::vector<GridRect> rects_from_json(const json& j) {
  const json& arr = j.is_array() ? j : field(j, "rects", "rects");
  std::vector<GridRect> out;
  for (std::size_t k = 0; k < arr.size(); ++k) {
    out.push_back(rect_from(arr[k], "rects[" + std::to_string(k) + "]"));
  }
  return out;
}

json to_json(const geometry::Packing& packing) {
  json squares = json::array();
  for (const auto& s : packing.squares) {
    squares.push_back({{"cx", s.center().x}, {"cy", s.center().y}, {"tilt", s.tilt()}});
  }
  return {{"x", packing.x}, {"squares", std::move(squares)}};
}

geometry::Packing packing_from_json(const json& j) {
  const std::string ctx = "packing";
  geometry::Packing p;
  p.x = as_double(field(j, "x", ctx), ctx + ".x");
  if (!(p.x > 0.0)) throw InputError(ctx + ".x: must be positive");
  const auto& squares = as_array(field(j, "squares", ctx), ctx + ".squares");
  for (std::size_t k = 0; k < squares.size(); ++k) {
    const std::string what = ctx + ".squares[" + std::to_string(k) + "]";
    const double cx = as_double(field(squares[k], "cx", what), what + ".cx");
    const double cy = as_double(field(squares[k], "cy", what), what + ".cy");
    const double tilt = as_double(field(squares[k], "tilt", what), what + ".tilt");
    p.squares.emplace_back(geometry::Point{cx, cy}, tilt);
  }
  return p;
}

json to_json(const geometry::Region& region) {
  return std::visit(
      [](const auto& shape) -> json {
        using T = std::decay_t<decltype(shape)>;
        if constexpr (std::is_same_v<T, geometry::Disk>) {
          return {{"disk", {{"cx", shape.center.x}, {"cy", shape.center.y}, {"r", shape.radius}}}};
        } else if constexpr (std::is_same_v<T, geometry::Box>) {
          return {{"rect",
                   {{"xlo", shape.xlo}, {"ylo", shape.ylo}, {"xhi", shape.xhi}, {"yhi", shape.yhi}}}};
        } else if constexpr (std::is_same_v<T, geometry::Tube>) {
          json pts = json::array();
          for (const auto& q : shape.polyline) pts.push_back(point_json(q));
          return {{"tube", {{"points", std::move(pts)}, {"r", shape.radius}}}};
        } else {
          json parts = json::array();
          for (const auto& r : shape) parts.push_back(to_json(r));
          return {{"union", std::move(parts)}};
        }
      },
      region.shape);
}

geometry::Region region_from_json(const json& j) {
  const std::string ctx = "region";
  if (!j.is_object() || j.size() != 1) {
    throw InputError(ctx + ": expected one of disk, rect, tube, union");
  }
  const auto& [tag, body] = *j.items().begin();
  if (tag == "disk") {
    const double r = as_double(field(body, "r", "disk"), "disk.r");
    if (!(r > 0.0)) throw InputError("disk.r: must be positive");
    return {geometry::Disk{{as_double(field(body, "cx", "disk"), "disk.cx"),
                            as_double(field(body, "cy", "disk"), "disk.cy")},
                           r}};
  }
  if (tag == "rect") {
    return {geometry::Box{as_double(field(body, "xlo", "rect"), "rect.xlo"),
                          as_double(field(body, "ylo", "rect"), "rect.ylo"),
                          as_double(field(body, "xhi", "rect"), "rect.xhi"),
                          as_double(field(body, "yhi", "rect"), "rect.yhi")}};
  }
  if (tag == "tube") {
    geometry::Tube tube;
    tube.radius = as_double(field(body, "r", "tube"), "tube.r");
    if (!(tube.radius > 0.0)) throw InputError("tube.r: must be positive");
    for (const auto& q : as_array(field(body, "points", "tube"), "tube.points")) {
      tube.polyline.push_back(point_from(q, "tube.points"));
    }
    if (tube.polyline.empty()) throw InputError("tube.points: needs at least one point");
    return {std::move(tube)};
  }
  if (tag == "union") {
    std::vector<geometry::Region> parts;
    for (const auto& r : as_array(body, "union")) parts.push_back(region_from_json(r));
    return {std::move(parts)};
  }
  throw InputError(ctx + ": unknown region kind '" + tag + "'");
}

json to_json(const geometry::PlanePath& path) {
  json pts = json::array();
  for (const auto& q : path.points) pts.push_back(point_json(q));
  return {{"points", std::move(pts)}};
}

geometry::PlanePath path_from_json(const json& j) {
  const json& arr = j.is_array() ? j : field(j, "points", "path");
  geometry::PlanePath path;
  for (std::size_t k = 0; k < arr.size(); ++k) {
    path.points.push_back(point_from(arr[k], "path.points[" + std::to_string(k) + "]"));
  }
  if (path.points.empty()) throw InputError("path.points: needs at least one point");
  return path;
}

json to_json(const geometry::WasteEstimate& est) {
  return {{"value", est.value}, {"half_width", est.half_width}, {"samples", est.samples}};
}

json to_json(const greedy::GreedyResult& result) {
  return {{"f_prime", result.f_prime}, {"paths", paths_to_json(result.paths)}};
}

json to_json(const greedy::RatioStats& stats) {
  json ratios = json::array();
  for (const auto& r : stats.ratios) ratios.push_back(json::array({r.num, r.den}));
  json out{{"trials", stats.trials},
           {"ratios", std::move(ratios)},
           {"mean_ratio", stats.mean_ratio}};
  if (stats.min_ratio) {
    out["min_ratio"] = json::array({stats.min_ratio->num, stats.min_ratio->den});
    out["min_ratio_value"] = stats.min_ratio->value();
  } else {
    out["min_ratio"] = nullptr;
  }
  return out;
}

json to_json(const pathwaste::PathWitness& w) {
  json samples = json::array();
  for (const auto& q : w.sample_points) samples.push_back(point_json(q));
  json disks = json::array();
  for (const auto& d : w.disks) {
    disks.push_back({{"cx", d.center.x}, {"cy", d.center.y}, {"r", d.radius}});
  }
  json out{{"a", w.a},
           {"b", w.b},
           {"c", w.c},
           {"sample_points", std::move(samples)},
           {"chain", w.chain},
           {"disks", std::move(disks)},
           {"theta_ab", w.theta_ab},
           {"theta_chain_sum", w.theta_chain_sum},
           {"lower_bound", w.lower_bound}};
  if (w.uncovered) {
    out["uncovered"] = {{"sample", w.uncovered->sample},
                        {"center", point_json(w.uncovered->center)},
                        {"radius", w.uncovered->radius},
                        {"certified_waste", w.uncovered->certified_waste}};
  } else {
    out["uncovered"] = nullptr;
  }
  return out;
}

json to_json(const pathwaste::VerifyReport& report) {
  return {{"waste", to_json(report.waste)},
          {"bound", report.bound},
          {"bound_ok", report.bound_ok},
          {"max_multiplicity", report.max_multiplicity},
          {"multiplicity_ok", report.multiplicity_ok},
          {"passed", report.passed()}};
}

json to_json(const surgery::SurgeryReport& report) {
  json gammas = json::array();
  for (const auto& g : report.gammas) gammas.push_back(to_json(g)["points"]);
  json inserted = json::array();
  for (const auto& s : report.inserted) {
    inserted.push_back({{"cx", s.center().x}, {"cy", s.center().y}, {"tilt", s.tilt()}});
  }
  return {{"f", report.f},
          {"marked_cells", report.marked_cells},
          {"rects", rects_to_json(report.rectangles)["rects"]},
          {"gammas", std::move(gammas)},
          {"deleted", report.deleted},
          {"inserted", std::move(inserted)},
          {"waste_before", report.waste_before},
          {"waste_after", report.waste_after},
          {"blow_up", report.blow_up},
          {"overhead_per_f", report.overhead_per_f}};
}

json to_json(const surgery::BlowupStats& stats) {
  json trials = json::array();
  for (const auto& t : stats.trials) {
    trials.push_back({{"x", t.x},
                      {"f", t.f},
                      {"bad_squares", t.bad_squares},
                      {"waste_before", t.waste_before},
                      {"waste_after", t.waste_after},
                      {"blow_up", t.blow_up},
                      {"overhead_per_f", t.overhead_per_f}});
  }
  return {{"trials", std::move(trials)},
          {"max_blow_up", stats.max_blow_up},
          {"mean_blow_up", stats.mean_blow_up},
          {"median_blow_up", stats.median_blow_up},
          {"max_overhead_per_f", stats.max_overhead_per_f},
          {"overhead_flagged", stats.max_overhead_per_f > 16.0}};
}

}  // namespace packsurgeon::io
