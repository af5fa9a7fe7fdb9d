#pragma once

// Layered SVG overlays of the pipeline stages.

#include <string>
#include <vector>

#include "framerec/geometry.hpp"
#include "io.hpp"

namespace framerec::cli {

// Layers, in drawing order: g#initial (input segments), g#refined
// (connected segments by axis), g#candidates (voted candidates; fitted ones
// dashed), g#frame (box lines in bold and corners). Empty layers are left out.
std::string render_svg(ImageSize image, const std::vector<Segment>& initial,
                       const FrameFile& frame);

}  // namespace framerec::cli
