// Visual-variable encoders: membership line/cell styles, value-to-lightness
// ramps, certainty dashes, and grayscale knowledge classes. All constants
// live in one themable configuration.

#pragma once

#include <string>
#include <vector>

#include "setvis/model.hpp"

namespace setvis {

// Which node columns of a bipartite diagram grow link fans for their
// uncertain counterparts. One stub per uncertain pair at its element end
// keeps fan counts equal to the expanded pair count; `both` doubles them.
enum class FanSides { elements, sets, both };

// Every tunable constant of the encoders and layouts. Lightness is in
// percent: 0 is black, 100 is white.
struct Theme {
    double line_width_min = 0.6;
    double line_width_max = 2.5;
    double lightness_dark = 10.0;
    double lightness_light = 75.0;
    double cell_size_min = 0.35;
    double dash_period = 8.0;

    // grayscale classes, strictly increasing lightness with decreasing knowledge
    double gray_known = 0.0;
    double gray_range_known = 30.0;
    double gray_threshold_known = 55.0;
    double gray_unknown = 80.0;

    double hatch_angle = 45.0;
    double hatch_spacing = 6.0;
    double hatch_lightness = 45.0;

    double fan_length = 14.0;
    double fan_spread = 40.0; // degrees to either side
    FanSides fan_sides = FanSides::elements;

    // Redundant-channel coupling. A disabled channel stays pinned to the
    // certain style instead of varying with p.
    bool line_encode_width = true;
    bool line_encode_lightness = true;
    bool cell_encode_size = true;
    bool cell_encode_lightness = true;

    bool operator==(const Theme&) const = default;
};

// Rejects themes whose constants are incoherent (min >= max, lightness
// outside [0,100], non-increasing grayscale classes, ...).
void check_theme(const Theme& theme);

struct LineStyle {
    double width = 0.0;      // px
    double lightness = 0.0;  // percent
    bool operator==(const LineStyle&) const = default;
};

struct CellStyle {
    double size_fraction = 1.0; // of the cell side, in (0,1]
    double lightness = 0.0;
    bool operator==(const CellStyle&) const = default;
};

struct DashPattern {
    double period = 8.0;
    double solid_fraction = 1.0; // 1 renders a solid stroke
    bool operator==(const DashPattern&) const = default;
};

// Knowledge grade of an element attribute value, dark to light.
enum class GrayscaleClass { known, range_known, threshold_known, unknown };

struct TextureSpec {
    double angle = 45.0;    // degrees
    double spacing = 6.0;   // px between hatch lines
    double lightness = 45.0;
    bool operator==(const TextureSpec&) const = default;
};

// Collects non-fatal findings from encoders and layouts.
using WarningList = std::vector<std::string>;

enum class CellVariant { plain, small_marks, size_color };

// Line style for a membership status. Certain members get the full dark
// stroke, undefined uncertainty the thin light one, and probabilities
// interpolate both channels so the p->1 limit meets the certain style and
// the p->0 limit the uncertain one. Throws std::invalid_argument for
// certain non-members: they have no line.
LineStyle membership_line_style(const MembershipStatus& status, const Theme& theme = {});

// Matrix-cell style for a membership status under one of the three design
// variants. Probabilities scale cell side by sqrt(p) so the mark area is
// proportional to p. size_color with an undefined-uncertain status falls
// back to small_marks styling and records a warning.
CellStyle membership_cell_style(const MembershipStatus& status, CellVariant variant,
                                const Theme& theme = {}, WarningList* warnings = nullptr);

// Linear value ramp: domain high maps to the dark end (larger = darker).
// The value is clamped into the domain. A degenerate domain (lo == hi)
// yields the midpoint lightness with a warning; lo > hi throws.
double value_to_lightness(double value, double lo, double hi, const Theme& theme = {},
                          WarningList* warnings = nullptr);

// Outline dash for a certainty score in [0,1]: the solid fraction of each
// period equals the certainty; c=1 is a solid stroke. Out-of-range c throws.
DashPattern certainty_to_dash(double certainty, const Theme& theme = {});

// Knowledge grade of one attribute value. Ranges grade by how much of the
// schema domain they leave open: the full domain is unknown, touching one
// bound is threshold-known, an interior interval is range-known. Flagged
// values grade range-known (given but doubted).
GrayscaleClass element_value_class(const AttributeValue& value, const AttributeSchema& schema);

double grayscale_lightness(GrayscaleClass cls, const Theme& theme = {});

TextureSpec undefined_uncertainty_texture(const Theme& theme = {});

} // namespace setvis
