#pragma once

#include <string>

#include "setvis/scene.hpp"

namespace setvis {

// UTF-8 SVG 1.1 document; byte-deterministic for identical scenes.
using SvgDocument = std::string;

// One SVG element per primitive in scene order, each carrying data-role and
// data-ref.  The legend block is appended below the scene when enabled.
SvgDocument render_svg(const Scene& scene, bool legend);

} // namespace setvis
