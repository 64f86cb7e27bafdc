#pragma once

#include <string>

#include "steinhaus/constructions.hpp"
#include "steinhaus/intervals.hpp"

namespace steinhaus {

enum class PairStatus { Realized, Excluded, Unknown };

struct PairResult {
  PairStatus status = PairStatus::Unknown;
  std::string detail;
};

// Norm range of y - x over x in block a, y in block b, from bounding boxes only.
NormRange block_pair_range(const BlockPlacement& a, const BlockPlacement& b);

// Does some x in a, y in b have |x - y| = t?  When a and b are the same block pass same = true.
// Lattice bodies: candidate search near the sphere (exact check) for realisation, and an exhaustive
// per-row scan in 128-bit integers for exclusion when both lattices share the same placed pitch.
PairResult lattice_pair_realizes(const BlockPlacement& a, const BlockPlacement& b, const Dyadic& t, bool same);

}  // namespace steinhaus
