#pragma once

#include <cstddef>
#include <cstdint>

#include "packdens/saturation.hpp"

namespace packdens {

enum class GeneratorKind { Hexagonal, Square, PerturbedHex, RandomDart };

struct GeneratorSpec {
  GeneratorKind kind = GeneratorKind::Hexagonal;
  Window window;
  Scalar spacing = 2;       // lattice pitch, or the minimum distance for RandomDart
  Scalar perturbation = 0;  // PerturbedHex: per-coordinate offset bound
  std::uint64_t seed = 0;
  // RandomDart stops after this many consecutive rejections...
  std::size_t failure_budget = 10000;
  // ...or once it holds this many points (0 = no limit).
  std::size_t max_points = 0;
};

// Lattices are anchored at (xmin, ymin). Hexagonal rows sit at a pitch of
// spacing * r, where r is sqrt(3)/2 truncated to 50 decimals, and the
// horizontal pitch is padded by 1e-20 so neighbours in adjacent rows stay at
// distance >= spacing exactly.
//
// Throws InvalidSpec, or PerturbationTooLarge when a perturbed lattice breaks
// the distance constraint.
Configuration generate(const GeneratorSpec& spec);

// sqrt(3)/2 truncated to 50 decimal places.
Scalar half_sqrt3_lower();

}  // namespace packdens
