#pragma once

// Named seed projections: the hexagon space in l1^3 and the icosidodecahedral
// space in l1^6, plus the one-dimensional case.

#include "projconst/matcore.hpp"

#include <string>
#include <vector>

namespace projconst::seeds {

/// 6 x 6 Seidel matrix of the six diagonals of the icosahedron
/// (zero diagonal, C^2 = 5 I). Validated on first use.
const Matrix& icosahedral_seidel();

/// I - J/3.
OrthoProjection hex3();
/// (I + C / sqrt 5) / 2.
OrthoProjection icosa6();
/// [1].
OrthoProjection trivial1();

/// hex3, icosa6 or trivial1; throws std::out_of_range for other names.
OrthoProjection by_name(const std::string& name);
std::vector<std::string> names();

/// 2I - J, whose top-2 eigenspace is the hexagon space.
SignMatrix hex_sign();
/// I + C.
SignMatrix icosa_sign();

}  // namespace projconst::seeds
