#include "packsurgeon/generators.hpp"

#include <cmath>
#include <optional>
#include <stdexcept>

#include "packsurgeon/random.hpp"

namespace packsurgeon::gen {

using geometry::Packing;
using geometry::Point;
using geometry::UnitSquare;

geometry::Packing jittered_lattice(const LatticeParams& params, std::uint64_t seed) {
  if (!(params.x > 0.0) || !std::isfinite(params.x)) {
    throw std::invalid_argument("x must be positive");
  }
  if (!(params.q >= 0.0 && params.q <= 1.0)) {
    throw std::invalid_argument("deletion probability q must lie in [0, 1]");
  }
  if (!(params.delta >= 0.0) || !(params.tau >= 0.0)) {
    throw std::invalid_argument("delta and tau must be non-negative");
  }
  Packing packing;
  packing.x = params.x;
  const int sites = static_cast<int>(std::floor(params.x));
  if (sites < 1) return packing;
  const double spacing = params.x / sites;

  CounterRng rng(seed);
  geometry::SquareIndex index(params.x);
  const auto fits = [&](const UnitSquare& s) {
    for (const auto& c : s.corners()) {
      if (c.x < 0.0 || c.y < 0.0 || c.x > params.x || c.y > params.x) return false;
    }
    for (auto id : index.candidates(s.bounds())) {
      if (geometry::squares_overlap(s, packing.squares[id])) return false;
    }
    return true;
  };

  for (int row = 0; row < sites; ++row) {
    for (int col = 0; col < sites; ++col) {
      // Draw every variate so the stream layout does not depend on outcomes.
      const bool deleted = rng.bernoulli(params.q);
      const double ox = rng.uniform(-1.0, 1.0);
      const double oy = rng.uniform(-1.0, 1.0);
      const double ot = rng.uniform(-1.0, 1.0);
      if (deleted) continue;
      const Point site{(col + 0.5) * spacing, (row + 0.5) * spacing};
      std::optional<UnitSquare> placed;
      double scale = 1.0;
      for (int attempt = 0; attempt < kMaxAttempts && !placed; ++attempt, scale *= 0.5) {
        const UnitSquare s({site.x + scale * params.delta * ox,
                            site.y + scale * params.delta * oy},
                           scale * params.tau * ot);
        if (fits(s)) placed = s;
      }
      if (!placed) {
        const UnitSquare s(site, 0.0);
        if (fits(s)) placed = s;
      }
      if (placed) {
        index.insert(static_cast<std::uint32_t>(packing.squares.size()), *placed);
        packing.squares.push_back(*placed);
      }
    }
  }
  return packing;
}

}  // namespace packsurgeon::gen
