#include "setvis/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <vector>

#include "setvis/numfmt.hpp"

namespace setvis {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::string escape_xml(const std::string& text) {
    std::string out;
    out.reserve(text.size());
    for (char c : text) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        case '\'': out += "&apos;"; break;
        default: out += c; break;
        }
    }
    return out;
}

// Lightness percent to a gray hex color; 0 is black, 100 is white.
std::string gray_hex(double lightness) {
    const long level = std::lround(std::clamp(lightness, 0.0, 100.0) * 255.0 / 100.0);
    char buffer[8];
    std::snprintf(buffer, sizeof(buffer), "#%02lx%02lx%02lx", level, level, level);
    return buffer;
}

// Solid strokes carry no dasharray.  A zero solid fraction still gets a
// minimal 0.5 px tick so boundaries stay findable.
std::string dash_array(const DashPattern& dash) {
    if (dash.solid_fraction >= 1.0) {
        return "";
    }
    double on = dash.period * dash.solid_fraction;
    if (on < 0.5) {
        on = 0.5;
    }
    const double off = dash.period - on;
    return format_number(on) + " " + format_number(off);
}

std::string attr(const std::string& name, const std::string& value) {
    return " " + name + "=\"" + value + "\"";
}

std::string attr(const std::string& name, double value) {
    return attr(name, format_number(value));
}

std::string tag_attrs(const Primitive& p) {
    std::string out = attr("data-role", escape_xml(p.role));
    if (!p.ref.empty()) {
        out += attr("data-ref", escape_xml(p.ref));
    }
    return out;
}

std::string paint_attrs(const Primitive& p, bool shape_can_fill) {
    std::string out;
    if (shape_can_fill) {
        out += attr("fill", p.has_fill ? gray_hex(p.fill_lightness) : std::string("none"));
    }
    if (p.has_stroke) {
        out += attr("stroke", gray_hex(p.stroke_lightness));
        out += attr("stroke-width", p.stroke_width);
        if (p.dash.has_value()) {
            const std::string pattern = dash_array(*p.dash);
            if (!pattern.empty()) {
                out += attr("stroke-dasharray", pattern);
            }
        }
    }
    return out;
}

struct PatternTable {
    std::vector<TextureSpec> patterns;

    size_t id_for(const TextureSpec& spec) {
        for (size_t i = 0; i < patterns.size(); ++i) {
            if (patterns[i] == spec) {
                return i;
            }
        }
        patterns.push_back(spec);
        return patterns.size() - 1;
    }
};

std::string pie_path(const Primitive& p) {
    // Angles run clockwise on screen from 12 o'clock.
    auto point = [&](double a) {
        return std::pair<double, double>{p.x + p.r * std::sin(a), p.y - p.r * std::cos(a)};
    };
    const auto [x0, y0] = point(p.a0);
    const auto [x1, y1] = point(p.a1);
    std::string d = "M " + format_number(p.x) + " " + format_number(p.y);
    d += " L " + format_number(x0) + " " + format_number(y0);
    d += " A " + format_number(p.r) + " " + format_number(p.r) + " 0 ";
    d += (p.a1 - p.a0 > kPi) ? "1 1 " : "0 1 ";
    d += format_number(x1) + " " + format_number(y1);
    d += " Z";
    return d;
}

std::string emit_primitive(const Primitive& p, PatternTable& patterns) {
    switch (p.kind) {
    case Primitive::Kind::line:
        return "<line" + attr("x1", p.x) + attr("y1", p.y) + attr("x2", p.x2) +
               attr("y2", p.y2) + paint_attrs(p, false) + tag_attrs(p) + "/>";
    case Primitive::Kind::circle:
        return "<circle" + attr("cx", p.x) + attr("cy", p.y) + attr("r", p.r) +
               paint_attrs(p, true) + tag_attrs(p) + "/>";
    case Primitive::Kind::rect:
        return "<rect" + attr("x", p.x) + attr("y", p.y) + attr("width", p.w) +
               attr("height", p.h) + paint_attrs(p, true) + tag_attrs(p) + "/>";
    case Primitive::Kind::ellipse_path:
        return "<path" + attr("d", p.path) + paint_attrs(p, true) + tag_attrs(p) + "/>";
    case Primitive::Kind::pie_wedge: {
        if (p.a1 - p.a0 >= 2.0 * kPi - 1e-9) {
            return "<circle" + attr("cx", p.x) + attr("cy", p.y) + attr("r", p.r) +
                   paint_attrs(p, true) + tag_attrs(p) + "/>";
        }
        return "<path" + attr("d", pie_path(p)) + paint_attrs(p, true) + tag_attrs(p) +
               "/>";
    }
    case Primitive::Kind::text:
        return "<text" + attr("x", p.x) + attr("y", p.y) +
               attr("font-size", p.font_size) + attr("font-family", "sans-serif") +
               attr("text-anchor", p.anchor) +
               attr("fill", p.has_fill ? gray_hex(p.fill_lightness)
                                       : std::string("#222222")) +
               tag_attrs(p) + ">" + escape_xml(p.text) + "</text>";
    case Primitive::Kind::hatch_fill: {
        const TextureSpec spec = p.texture.value_or(TextureSpec{});
        const size_t id = patterns.id_for(spec);
        return "<path" + attr("d", p.path) +
               attr("fill", "url(#hatch-" + std::to_string(id) + ")") + tag_attrs(p) +
               "/>";
    }
    }
    return "";
}

std::string emit_legend(const Scene& scene, double base_y, PatternTable& patterns) {
    std::string out = "<g data-role=\"legend\">";
    double y = base_y;
    for (const auto& entry : scene.legend) {
        switch (entry.swatch) {
        case LegendEntry::Swatch::line: {
            std::string line = "<line" + attr("x1", 20.0) + attr("y1", y) +
                               attr("x2", 44.0) + attr("y2", y) +
                               attr("stroke", gray_hex(entry.line.lightness)) +
                               attr("stroke-width", entry.line.width);
            if (entry.dash.has_value()) {
                const std::string pattern = dash_array(*entry.dash);
                if (!pattern.empty()) {
                    line += attr("stroke-dasharray", pattern);
                }
            }
            out += line + " data-role=\"legend\"/>";
            break;
        }
        case LegendEntry::Swatch::rect: {
            const double side = 14.0 * entry.cell.size_fraction;
            out += "<rect" + attr("x", 27.0 - side / 2.0) + attr("y", y - side / 2.0) +
                   attr("width", side) + attr("height", side) +
                   attr("fill", gray_hex(entry.cell.lightness)) +
                   attr("stroke", "#555555") + attr("stroke-width", 0.4) +
                   " data-role=\"legend\"/>";
            break;
        }
        case LegendEntry::Swatch::dot:
            out += "<circle" + attr("cx", 27.0) + attr("cy", y) + attr("r", 5.0) +
                   attr("fill", gray_hex(entry.dot_lightness)) +
                   " data-role=\"legend\"/>";
            break;
        case LegendEntry::Swatch::hatch: {
            const TextureSpec spec = entry.texture.value_or(TextureSpec{});
            const size_t id = patterns.id_for(spec);
            out += "<rect" + attr("x", 16.0) + attr("y", y - 7.0) + attr("width", 22.0) +
                   attr("height", 14.0) +
                   attr("fill", "url(#hatch-" + std::to_string(id) + ")") +
                   attr("stroke", "#555555") + attr("stroke-width", 0.4) +
                   " data-role=\"legend\"/>";
            break;
        }
        }
        out += "<text" + attr("x", 52.0) + attr("y", y + 4.0) + attr("font-size", 11.0) +
               attr("font-family", "sans-serif") + attr("text-anchor", "start") +
               attr("fill", "#222222") + " data-role=\"legend\">" +
               escape_xml(entry.label) + "</text>";
        y += 20.0;
    }
    out += "</g>";
    return out;
}

std::string emit_defs(const PatternTable& patterns) {
    if (patterns.patterns.empty()) {
        return "";
    }
    std::string out = "<defs>";
    for (size_t i = 0; i < patterns.patterns.size(); ++i) {
        const TextureSpec& spec = patterns.patterns[i];
        out += "<pattern id=\"hatch-" + std::to_string(i) + "\"" +
               attr("patternUnits", "userSpaceOnUse") + attr("width", spec.spacing) +
               attr("height", spec.spacing) +
               attr("patternTransform", "rotate(" + format_number(spec.angle) + ")") +
               ">";
        out += "<line" + attr("x1", 0.0) + attr("y1", 0.0) + attr("x2", 0.0) +
               attr("y2", spec.spacing) + attr("stroke", gray_hex(spec.lightness)) +
               attr("stroke-width", 1.0) + "/>";
        out += "</pattern>";
    }
    out += "</defs>";
    return out;
}

} // namespace

SvgDocument render_svg(const Scene& scene, bool legend) {
    const bool with_legend = legend && !scene.legend.empty();
    const double legend_height =
        with_legend ? 16.0 + 20.0 * static_cast<double>(scene.legend.size()) + 4.0 : 0.0;
    const double width = std::max(scene.width, with_legend ? 220.0 : scene.width);
    const double height = scene.height + legend_height;

    PatternTable patterns;
    std::string body;
    for (const auto& p : scene.primitives) {
        body += emit_primitive(p, patterns);
        body += "\n";
    }
    if (with_legend) {
        body += emit_legend(scene, scene.height + 16.0, patterns);
        body += "\n";
    }

    std::string doc = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    doc += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\"" +
           attr("width", width) + attr("height", height) +
           attr("viewBox", "0 0 " + format_number(width) + " " + format_number(height)) +
           ">";
    const std::string defs = emit_defs(patterns);
    if (!defs.empty() || !body.empty()) {
        doc += "\n";
    }
    doc += defs;
    if (!defs.empty()) {
        doc += "\n";
    }
    doc += body;
    doc += "</svg>\n";
    return doc;
}

} // namespace setvis
