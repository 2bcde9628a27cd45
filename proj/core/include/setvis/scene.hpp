#pragma once

#include <optional>
#include <string>
#include <vector>

#include "setvis/encode.hpp"

namespace setvis {

// One tagged display-list entry.  Geometry fields are interpreted per kind;
// unused fields stay at their defaults.  Exactly one role tag each.
struct Primitive {
    enum class Kind {
        line,         // x,y -> x2,y2
        circle,       // center x,y radius r
        ellipse_path, // closed path data (region fills and outlines)
        rect,         // x,y,w,h
        pie_wedge,    // center x,y radius r, angles a0..a1 (radians, screen cw from 12 o'clock)
        text,         // x,y baseline, text, font_size, anchor
        hatch_fill,   // path filled with a hatch texture
    };

    Kind kind = Kind::line;
    std::string role;
    std::string ref;

    double x = 0.0;
    double y = 0.0;
    double x2 = 0.0;
    double y2 = 0.0;
    double w = 0.0;
    double h = 0.0;
    double r = 0.0;
    double a0 = 0.0;
    double a1 = 0.0;
    std::string path;
    std::string text;
    double font_size = 12.0;
    std::string anchor = "start";

    bool has_fill = false;
    double fill_lightness = 0.0;
    bool has_stroke = false;
    double stroke_lightness = 0.0;
    double stroke_width = 1.0;
    std::optional<DashPattern> dash;
    std::optional<TextureSpec> texture;
};

// One legend row: a swatch plus its meaning.
struct LegendEntry {
    enum class Swatch { line, rect, dot, hatch };

    Swatch swatch = Swatch::line;
    std::string label;
    LineStyle line{};
    CellStyle cell{};
    double dot_lightness = 0.0;
    std::optional<DashPattern> dash;
    std::optional<TextureSpec> texture;
};

// Renderer-independent display list.  Primitive order is part of the value:
// identical inputs must produce identical scenes.
struct Scene {
    double width = 0.0;
    double height = 0.0;
    std::vector<Primitive> primitives;
    std::vector<LegendEntry> legend;
    std::vector<std::string> warnings;
};

} // namespace setvis
