#pragma once
#include <array>
#include <string>
#include <vector>

#include "calabi/embedding.hpp"

namespace calabi {

// Checkerboard rendering of the parameterization: faces drawn in normalized
// UV space, fill chosen by the parity of the cell containing each face
// centroid. Output is byte-stable for identical inputs.
std::string checkerboard_svg(const Parameterization&, const std::vector<std::array<int, 3>>& faces,
                             int cells);

} // namespace calabi
