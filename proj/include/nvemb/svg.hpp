#pragma once

// SVG rendering of two-dimensional elements: domain and range patterns drawn
// as labeled unit squares side by side, with exact rational coordinates.

#include "nvemb/element.hpp"

#include <string>

namespace nvemb {

// Deterministic SVG 1.1 document; axis 1 runs rightward, axis 2 upward.
// Throws std::invalid_argument unless f.dim == 2.
std::string render_element_svg(const Element& f);

}  // namespace nvemb
