#include "setvis/encode.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace setvis {

namespace {

void warn(WarningList* warnings, std::string message) {
    if (warnings != nullptr) {
        warnings->push_back(std::move(message));
    }
}

double lerp(double a, double b, double t) {
    return a + t * (b - a);
}

} // namespace

void check_theme(const Theme& t) {
    auto fail = [](const std::string& what) { throw Error("theme: " + what); };
    if (!(t.line_width_min > 0.0 && t.line_width_min < t.line_width_max)) {
        fail("line widths require 0 < min < max");
    }
    if (!(t.lightness_dark >= 0.0 && t.lightness_dark < t.lightness_light &&
          t.lightness_light <= 100.0)) {
        fail("lightness requires 0 <= dark < light <= 100");
    }
    if (!(t.cell_size_min > 0.0 && t.cell_size_min <= 1.0)) {
        fail("cell size minimum must lie in (0,1]");
    }
    if (!(t.dash_period > 0.0)) {
        fail("dash period must be positive");
    }
    if (!(t.gray_known < t.gray_range_known && t.gray_range_known < t.gray_threshold_known &&
          t.gray_threshold_known < t.gray_unknown && t.gray_known >= 0.0 &&
          t.gray_unknown <= 100.0)) {
        fail("grayscale classes must strictly increase within [0,100]");
    }
    if (!(t.hatch_spacing > 0.0)) {
        fail("hatch spacing must be positive");
    }
    if (!(t.fan_length > 0.0 && t.fan_spread >= 0.0 && t.fan_spread < 90.0)) {
        fail("fan geometry requires length > 0 and spread in [0,90)");
    }
}

LineStyle membership_line_style(const MembershipStatus& status, const Theme& theme) {
    switch (status.kind) {
    case MembershipStatus::Kind::certain_member:
        return {theme.line_width_max, theme.lightness_dark};
    case MembershipStatus::Kind::uncertain:
        return {theme.line_width_min, theme.lightness_light};
    case MembershipStatus::Kind::probability: {
        LineStyle style{theme.line_width_max, theme.lightness_dark};
        if (theme.line_encode_width) {
            style.width = lerp(theme.line_width_min, theme.line_width_max, status.p);
        }
        if (theme.line_encode_lightness) {
            style.lightness = lerp(theme.lightness_light, theme.lightness_dark, status.p);
        }
        return style;
    }
    case MembershipStatus::Kind::certain_non_member:
        break;
    }
    throw std::invalid_argument("certain non-members have no line style");
}

CellStyle membership_cell_style(const MembershipStatus& status, CellVariant variant,
                                const Theme& theme, WarningList* warnings) {
    switch (status.kind) {
    case MembershipStatus::Kind::certain_member:
        return {1.0, theme.lightness_dark};
    case MembershipStatus::Kind::uncertain:
        if (variant == CellVariant::plain) {
            return {1.0, theme.lightness_light};
        }
        if (variant == CellVariant::size_color) {
            warn(warnings, "size-color variant has no probability for an undefined-uncertain "
                           "membership; falling back to small-marks styling");
        }
        return {theme.cell_size_min, theme.lightness_light};
    case MembershipStatus::Kind::probability: {
        CellStyle style{1.0, theme.lightness_dark};
        // Side scales with sqrt(p) so mark area stays proportional to p.
        if (variant != CellVariant::plain && theme.cell_encode_size) {
            style.size_fraction = theme.cell_size_min +
                                  std::sqrt(status.p) * (1.0 - theme.cell_size_min);
        }
        if (theme.cell_encode_lightness) {
            style.lightness = lerp(theme.lightness_light, theme.lightness_dark, status.p);
        }
        return style;
    }
    case MembershipStatus::Kind::certain_non_member:
        break;
    }
    throw std::invalid_argument("certain non-members have no cell style");
}

double value_to_lightness(double value, double lo, double hi, const Theme& theme,
                          WarningList* warnings) {
    if (lo > hi) {
        throw std::invalid_argument("value_to_lightness: domain lo > hi");
    }
    if (lo == hi) {
        warn(warnings, "degenerate value domain; using midpoint lightness");
        return 0.5 * (theme.lightness_dark + theme.lightness_light);
    }
    const double t = std::clamp((value - lo) / (hi - lo), 0.0, 1.0);
    return lerp(theme.lightness_light, theme.lightness_dark, t);
}

DashPattern certainty_to_dash(double certainty, const Theme& theme) {
    if (!(certainty >= 0.0 && certainty <= 1.0)) {
        throw std::invalid_argument("certainty must lie in [0,1]");
    }
    return {theme.dash_period, certainty};
}

GrayscaleClass element_value_class(const AttributeValue& value, const AttributeSchema& schema) {
    switch (value.kind) {
    case AttributeValue::Kind::known:
        return GrayscaleClass::known;
    case AttributeValue::Kind::flagged:
        return GrayscaleClass::range_known;
    case AttributeValue::Kind::missing:
        return GrayscaleClass::unknown;
    case AttributeValue::Kind::range: {
        const bool at_lower = value.low <= schema.domain_min;
        const bool at_upper = value.high >= schema.domain_max;
        if (at_lower && at_upper) {
            return GrayscaleClass::unknown; // spans the whole domain
        }
        if (at_lower || at_upper) {
            return GrayscaleClass::threshold_known; // open on one side
        }
        return GrayscaleClass::range_known;
    }
    }
    return GrayscaleClass::unknown;
}

double grayscale_lightness(GrayscaleClass cls, const Theme& theme) {
    switch (cls) {
    case GrayscaleClass::known: return theme.gray_known;
    case GrayscaleClass::range_known: return theme.gray_range_known;
    case GrayscaleClass::threshold_known: return theme.gray_threshold_known;
    case GrayscaleClass::unknown: return theme.gray_unknown;
    }
    return theme.gray_unknown;
}

TextureSpec undefined_uncertainty_texture(const Theme& theme) {
    return {theme.hatch_angle, theme.hatch_spacing, theme.hatch_lightness};
}

} // namespace setvis
