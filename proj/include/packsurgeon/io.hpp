#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "packsurgeon/flow.hpp"
#include "packsurgeon/geometry.hpp"
#include "packsurgeon/greedy.hpp"
#include "packsurgeon/grid.hpp"
#include "packsurgeon/pathwaste.hpp"
#include "packsurgeon/surgery.hpp"

namespace packsurgeon::io {

using json = nlohmann::json;

/// Malformed or out-of-range input; the message names the offending field.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

[[nodiscard]] json read_json_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);
void write_json_file(const std::filesystem::path& path, const json& value);

// {"n": int, "m": int, "marked": [[row, col], ...]}
[[nodiscard]] json to_json(const grid::GridInstance& instance);
[[nodiscard]] grid::GridInstance instance_from_json(const json& j);

// {"f": int, "paths": [[[r,c],...],...], "cut": [[r,c],...], "rects": [[i,i_hi,j,j_hi],...]}
[[nodiscard]] json to_json(const flow::PathCover& cover);
[[nodiscard]] flow::PathCover cover_from_json(const json& j);

// {"rects": [[i,i_hi,j,j_hi],...]}; a bare array is accepted on input.
[[nodiscard]] json rects_to_json(const std::vector<grid::GridRect>& rects);
[[nodiscard]] std::vector<grid::GridRect> rects_from_json(const json& j);

[[nodiscard]] json paths_to_json(const std::vector<grid::CellPath>& paths);

// {"x": real, "squares": [{"cx": real, "cy": real, "tilt": real}, ...]}
[[nodiscard]] json to_json(const geometry::Packing& packing);
[[nodiscard]] geometry::Packing packing_from_json(const json& j);

// {"disk": {"cx","cy","r"}} | {"rect": {"xlo","ylo","xhi","yhi"}} |
// {"tube": {"points": [[x,y],...], "r"}} | {"union": [...]}
[[nodiscard]] json to_json(const geometry::Region& region);
[[nodiscard]] geometry::Region region_from_json(const json& j);

// {"points": [[x,y],...]}; a bare array is accepted on input.
[[nodiscard]] json to_json(const geometry::PlanePath& path);
[[nodiscard]] geometry::PlanePath path_from_json(const json& j);

[[nodiscard]] json to_json(const geometry::WasteEstimate& est);
[[nodiscard]] json to_json(const greedy::GreedyResult& result);
[[nodiscard]] json to_json(const greedy::RatioStats& stats);
[[nodiscard]] json to_json(const pathwaste::PathWitness& witness);
[[nodiscard]] json to_json(const pathwaste::VerifyReport& report);
[[nodiscard]] json to_json(const surgery::SurgeryReport& report);
[[nodiscard]] json to_json(const surgery::BlowupStats& stats);

}  // namespace packsurgeon::io
