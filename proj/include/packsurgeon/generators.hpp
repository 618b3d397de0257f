#pragma once

#include <cstdint>

#include "packsurgeon/geometry.hpp"

namespace packsurgeon::gen {

/// Jittered-lattice packing parameters.
///
/// Squares start on a square lattice of spacing x / floor(x) (so an integral x
/// gives the integral lattice). Each site is deleted with probability `q`;
/// survivors get a uniform offset in [-delta, delta]^2 and a uniform tilt in
/// [-tau, tau]. A perturbation that leaves the container or overlaps an
/// earlier square is retried at half the magnitude, up to kMaxAttempts times,
/// then the unperturbed site is tried, and the site is dropped if that too
/// collides.
struct LatticeParams {
  double x = 4.0;
  double q = 0.0;
  double delta = 0.0;
  double tau = 0.0;
};

inline constexpr int kMaxAttempts = 6;

/// Throws std::invalid_argument for x <= 0, q outside [0, 1] or negative
/// delta / tau.
[[nodiscard]] geometry::Packing jittered_lattice(const LatticeParams& params,
                                                 std::uint64_t seed);

}  // namespace packsurgeon::gen
