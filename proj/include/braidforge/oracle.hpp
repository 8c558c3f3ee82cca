#pragma once

// Brute-force presentation of the fundamental group of the 2-skeleton:
// a BFS spanning tree of the 1-skeleton, generators are the 1-cells off the
// tree, relators the boundary words of all 2-cells.

#include "braidforge/complex.hpp"
#include "braidforge/presentation.hpp"

namespace braidforge {

FPGroup skeleton_presentation(const MorseComplex& cx);

}  // namespace braidforge
