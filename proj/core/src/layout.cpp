#include "setvis/layout.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>

#include "setvis/errors.hpp"
#include "setvis/numfmt.hpp"

namespace setvis {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::vector<SetId> sorted_sets(const SetFamily& family) {
    std::vector<SetId> ids;
    for (const auto& s : family.sets) {
        ids.push_back(s.id);
    }
    std::sort(ids.begin(), ids.end());
    return ids;
}

std::vector<ElementId> sorted_elements(const SetFamily& family) {
    std::vector<ElementId> ids;
    for (const auto& e : family.elements) {
        ids.push_back(e.id);
    }
    std::sort(ids.begin(), ids.end());
    return ids;
}

std::string display_label(const SetFamily& family, const SetId& set) {
    const SetDef* def = family.find_set(set);
    return def != nullptr ? def->label : set;
}

std::string element_label(const SetFamily& family, const ElementId& id) {
    const Element* e = family.find_element(id);
    return e != nullptr ? e->label : id;
}

// Platform-stable element id hash for dot plot jitter.
std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char ch : s) {
        h ^= ch;
        h *= 1099511628211ULL;
    }
    return h;
}

void dedupe_warnings(Scene& scene) {
    std::vector<std::string> unique;
    for (auto& w : scene.warnings) {
        if (std::find(unique.begin(), unique.end(), w) == unique.end()) {
            unique.push_back(std::move(w));
        }
    }
    scene.warnings = std::move(unique);
}

Primitive text_primitive(double x, double y, std::string text, std::string anchor,
                         std::string role, std::string ref, double size = 12.0) {
    Primitive p;
    p.kind = Primitive::Kind::text;
    p.role = std::move(role);
    p.ref = std::move(ref);
    p.x = x;
    p.y = y;
    p.text = std::move(text);
    p.anchor = std::move(anchor);
    p.font_size = size;
    return p;
}

Primitive styled_line(double x1, double y1, double x2, double y2, const LineStyle& style,
                      std::string role, std::string ref) {
    Primitive p;
    p.kind = Primitive::Kind::line;
    p.role = std::move(role);
    p.ref = std::move(ref);
    p.x = x1;
    p.y = y1;
    p.x2 = x2;
    p.y2 = y2;
    p.has_stroke = true;
    p.stroke_width = style.width;
    p.stroke_lightness = style.lightness;
    return p;
}

Primitive node_circle(double x, double y, double r, std::string role, std::string ref,
                      const Theme& theme) {
    Primitive p;
    p.kind = Primitive::Kind::circle;
    p.role = std::move(role);
    p.ref = std::move(ref);
    p.x = x;
    p.y = y;
    p.r = r;
    p.has_fill = true;
    p.fill_lightness = 100.0;
    p.has_stroke = true;
    p.stroke_lightness = theme.lightness_dark;
    p.stroke_width = 1.2;
    return p;
}

struct PieSpot {
    double x;
    double y;
    double r;
};

void add_pie(Scene& scene, const PieSpot& spot, std::optional<double> fraction,
             const std::string& role, const SetId& set, const Theme& theme) {
    Primitive outline;
    outline.kind = Primitive::Kind::circle;
    outline.role = "pie-outline";
    outline.ref = set;
    outline.x = spot.x;
    outline.y = spot.y;
    outline.r = spot.r;
    outline.has_fill = true;
    outline.fill_lightness = 100.0;
    outline.has_stroke = true;
    outline.stroke_lightness = 40.0;
    outline.stroke_width = 0.8;
    scene.primitives.push_back(std::move(outline));
    if (!fraction.has_value()) {
        return; // no-data pie stays an empty outline
    }
    Primitive wedge;
    wedge.kind = Primitive::Kind::pie_wedge;
    wedge.role = role;
    wedge.ref = set;
    wedge.x = spot.x;
    wedge.y = spot.y;
    wedge.r = spot.r;
    wedge.a0 = 0.0;
    wedge.a1 = std::clamp(*fraction, 0.0, 1.0) * 2.0 * kPi;
    wedge.has_fill = true;
    wedge.fill_lightness = theme.lightness_dark;
    scene.primitives.push_back(std::move(wedge));
}

} // namespace

Scene layout_bipartite(const SetFamily& family, BipartiteVariant variant,
                       const Theme& theme, bool with_aggregate_pies,
                       const std::optional<AggregateSpec>& spec) {
    check_theme(theme);
    const std::vector<ElementId> elements = sorted_elements(family);
    const std::vector<SetId> sets = sorted_sets(family);

    const double elem_x = 130.0;
    const double set_x = 290.0;
    const double top = 60.0;
    const double row_h = 34.0;
    const double node_r = 7.0;

    Scene scene;
    scene.width = 420.0;
    const size_t rows = std::max(elements.size(), sets.size());
    scene.height = top + row_h * (rows == 0 ? 0 : rows - 1) + 60.0;

    std::map<ElementId, double> elem_y;
    for (size_t i = 0; i < elements.size(); ++i) {
        elem_y[elements[i]] = top + row_h * static_cast<double>(i);
    }
    std::map<SetId, double> set_y;
    for (size_t i = 0; i < sets.size(); ++i) {
        set_y[sets[i]] = top + row_h * static_cast<double>(i);
    }

    const std::vector<ExpandedMembership> expanded = expand_memberships(family);

    BipartiteVariant effective = variant;
    if (variant == BipartiteVariant::probability) {
        const bool any_p = std::any_of(expanded.begin(), expanded.end(), [](const auto& m) {
            return m.status.kind == MembershipStatus::Kind::probability;
        });
        if (!any_p) {
            scene.warnings.push_back(
                "probability variant requested but no probability entries exist; "
                "falling back to full links");
            effective = BipartiteVariant::full_links;
        }
    }

    const LineStyle certain_style =
        membership_line_style(MembershipStatus::certain_member(), theme);
    const LineStyle uncertain_style =
        membership_line_style(MembershipStatus::uncertain(), theme);

    bool any_uncertain = false;
    bool any_probability = false;
    for (const auto& m : expanded) {
        const bool is_certain = m.status.kind == MembershipStatus::Kind::certain_member;
        const bool is_uncertain = m.status.kind == MembershipStatus::Kind::uncertain;
        const bool is_probability = m.status.kind == MembershipStatus::Kind::probability;
        if (!is_certain && !is_uncertain && !is_probability) {
            continue;
        }
        any_uncertain |= is_uncertain;
        any_probability |= is_probability;
        const double y1 = elem_y.at(m.element);
        const double y2 = set_y.at(m.set);
        const std::string ref = m.element + "," + m.set;
        if (is_certain) {
            scene.primitives.push_back(
                styled_line(elem_x, y1, set_x, y2, certain_style, "certain-link", ref));
            continue;
        }
        if (effective == BipartiteVariant::fans) {
            continue; // stubs added per node below
        }
        LineStyle style = uncertain_style;
        if (effective == BipartiteVariant::probability && is_probability) {
            style = membership_line_style(m.status, theme);
        }
        scene.primitives.push_back(
            styled_line(elem_x, y1, set_x, y2, style, "uncertain-link", ref));
    }

    if (effective == BipartiteVariant::fans) {
        // One stub per candidate counterpart, angled toward the far column.
        auto add_fans = [&](bool element_side) {
            std::map<std::string, std::vector<std::string>> candidates;
            for (const auto& m : expanded) {
                if (m.status.kind != MembershipStatus::Kind::uncertain &&
                    m.status.kind != MembershipStatus::Kind::probability) {
                    continue;
                }
                if (element_side) {
                    candidates[m.element].push_back(m.set);
                } else {
                    candidates[m.set].push_back(m.element);
                }
            }
            for (auto& [node, others] : candidates) {
                std::sort(others.begin(), others.end());
                const double cx = element_side ? elem_x : set_x;
                const double cy = element_side ? elem_y.at(node) : set_y.at(node);
                const size_t k = others.size();
                for (size_t i = 0; i < k; ++i) {
                    const double spread = theme.fan_spread * kPi / 180.0;
                    const double angle =
                        k == 1 ? 0.0
                               : -spread + 2.0 * spread * static_cast<double>(i) /
                                               static_cast<double>(k - 1);
                    const double dx = (element_side ? 1.0 : -1.0) * std::cos(angle);
                    const double dy = std::sin(angle);
                    const std::string ref = element_side ? node + "," + others[i]
                                                         : others[i] + "," + node;
                    scene.primitives.push_back(styled_line(
                        cx + node_r * dx, cy + node_r * dy,
                        cx + (node_r + theme.fan_length) * dx,
                        cy + (node_r + theme.fan_length) * dy, uncertain_style,
                        "fan-stub", ref));
                }
            }
        };
        if (theme.fan_sides == FanSides::elements || theme.fan_sides == FanSides::both) {
            add_fans(true);
        }
        if (theme.fan_sides == FanSides::sets || theme.fan_sides == FanSides::both) {
            add_fans(false);
        }
    }

    bool pies_drawn = false;
    if (with_aggregate_pies && spec.has_value()) {
        const std::vector<AggregateCell> cells =
            summary_table(family, spec->attribute, spec->kind, spec->target,
                          spec->value_rule, spec->certainty_rule, AggregateScope::sets);
        const AttributeSchema* schema = family.find_attribute(spec->attribute);
        const double lo = spec->kind == AggregateKind::proportion
                              ? 0.0
                              : (schema != nullptr ? schema->domain_min : 0.0);
        const double hi = spec->kind == AggregateKind::proportion
                              ? 1.0
                              : (schema != nullptr ? schema->domain_max : 1.0);
        for (const auto& cell : cells) {
            const double y = set_y.at(cell.scope);
            std::optional<double> value_share;
            if (cell.value.has_value() && hi > lo) {
                value_share = (*cell.value - lo) / (hi - lo);
            }
            add_pie(scene, {set_x + 26.0, y, 8.0}, value_share, "pie-value", cell.scope,
                    theme);
            add_pie(scene, {set_x + 46.0, y, 8.0}, cell.certainty, "pie-certainty",
                    cell.scope, theme);
        }
        pies_drawn = true;
    }

    for (const auto& id : elements) {
        scene.primitives.push_back(
            node_circle(elem_x, elem_y.at(id), node_r, "element-node", id, theme));
        scene.primitives.push_back(text_primitive(elem_x - 14.0, elem_y.at(id) + 4.0,
                                                  element_label(family, id), "end",
                                                  "label", id));
    }
    const double set_label_x = pies_drawn ? set_x + 62.0 : set_x + 14.0;
    for (const auto& id : sets) {
        scene.primitives.push_back(
            node_circle(set_x, set_y.at(id), node_r, "set-node", id, theme));
        scene.primitives.push_back(text_primitive(set_label_x, set_y.at(id) + 4.0,
                                                  display_label(family, id), "start",
                                                  "label", id));
    }

    LegendEntry certain;
    certain.swatch = LegendEntry::Swatch::line;
    certain.label = "certain membership";
    certain.line = certain_style;
    scene.legend.push_back(certain);
    if (effective == BipartiteVariant::fans) {
        if (any_uncertain || any_probability) {
            LegendEntry fan;
            fan.swatch = LegendEntry::Swatch::line;
            fan.label = "possible membership (fan)";
            fan.line = uncertain_style;
            scene.legend.push_back(fan);
        }
    } else if (effective == BipartiteVariant::probability) {
        if (any_uncertain) {
            LegendEntry uncertain;
            uncertain.swatch = LegendEntry::Swatch::line;
            uncertain.label = "uncertain membership";
            uncertain.line = uncertain_style;
            scene.legend.push_back(uncertain);
        }
        for (double p : {0.25, 0.75}) {
            LegendEntry sample;
            sample.swatch = LegendEntry::Swatch::line;
            sample.label = "membership p = " + format_number(p);
            sample.line = membership_line_style(MembershipStatus::probability(p), theme);
            scene.legend.push_back(sample);
        }
    } else if (any_uncertain || any_probability) {
        LegendEntry uncertain;
        uncertain.swatch = LegendEntry::Swatch::line;
        uncertain.label = "uncertain membership";
        uncertain.line = uncertain_style;
        scene.legend.push_back(uncertain);
    }
    if (pies_drawn) {
        LegendEntry value_pie;
        value_pie.swatch = LegendEntry::Swatch::dot;
        value_pie.label = "pie: value share";
        value_pie.dot_lightness = theme.lightness_dark;
        scene.legend.push_back(value_pie);
        LegendEntry certainty_pie;
        certainty_pie.swatch = LegendEntry::Swatch::dot;
        certainty_pie.label = "pie: certainty share";
        certainty_pie.dot_lightness = theme.lightness_dark;
        scene.legend.push_back(certainty_pie);
    }

    dedupe_warnings(scene);
    return scene;
}

Scene layout_membership_matrix(const SetFamily& family, CellVariant variant,
                               const Theme& theme) {
    check_theme(theme);
    const std::vector<ElementId> elements = sorted_elements(family);
    const std::vector<SetId> sets = sorted_sets(family);

    const double origin_x = 110.0;
    const double origin_y = 70.0;
    const double cell = 26.0;
    const double inner = 22.0;

    Scene scene;
    scene.width = std::max(320.0, origin_x + cell * static_cast<double>(sets.size()) + 60.0);
    scene.height = origin_y + cell * static_cast<double>(elements.size()) + 40.0;

    std::map<ElementId, size_t> row;
    for (size_t i = 0; i < elements.size(); ++i) {
        row[elements[i]] = i;
    }
    std::map<SetId, size_t> col;
    for (size_t i = 0; i < sets.size(); ++i) {
        col[sets[i]] = i;
    }

    // Grid frame under the cells.
    for (size_t i = 0; i <= elements.size(); ++i) {
        Primitive line;
        line.kind = Primitive::Kind::line;
        line.role = "grid";
        line.x = origin_x;
        line.y = origin_y + cell * static_cast<double>(i);
        line.x2 = origin_x + cell * static_cast<double>(sets.size());
        line.y2 = line.y;
        line.has_stroke = true;
        line.stroke_lightness = 85.0;
        line.stroke_width = 0.5;
        scene.primitives.push_back(std::move(line));
    }
    for (size_t i = 0; i <= sets.size(); ++i) {
        Primitive line;
        line.kind = Primitive::Kind::line;
        line.role = "grid";
        line.x = origin_x + cell * static_cast<double>(i);
        line.y = origin_y;
        line.x2 = line.x;
        line.y2 = origin_y + cell * static_cast<double>(elements.size());
        line.has_stroke = true;
        line.stroke_lightness = 85.0;
        line.stroke_width = 0.5;
        scene.primitives.push_back(std::move(line));
    }

    bool any_uncertain = false;
    bool any_probability = false;
    for (const auto& m : expand_memberships(family)) {
        if (m.status.kind == MembershipStatus::Kind::certain_non_member) {
            continue; // non-member cells stay empty
        }
        any_uncertain |= m.status.kind == MembershipStatus::Kind::uncertain;
        any_probability |= m.status.kind == MembershipStatus::Kind::probability;
        const CellStyle style =
            membership_cell_style(m.status, variant, theme, &scene.warnings);
        const double side = inner * style.size_fraction;
        const double cx =
            origin_x + cell * (static_cast<double>(col.at(m.set)) + 0.5);
        const double cy =
            origin_y + cell * (static_cast<double>(row.at(m.element)) + 0.5);
        Primitive mark;
        mark.kind = Primitive::Kind::rect;
        mark.role = m.status.kind == MembershipStatus::Kind::certain_member
                        ? "certain-cell"
                        : "uncertain-cell";
        mark.ref = m.element + "," + m.set;
        mark.x = cx - side / 2.0;
        mark.y = cy - side / 2.0;
        mark.w = side;
        mark.h = side;
        mark.has_fill = true;
        mark.fill_lightness = style.lightness;
        scene.primitives.push_back(std::move(mark));
    }

    for (const auto& id : sets) {
        const double cx = origin_x + cell * (static_cast<double>(col.at(id)) + 0.5);
        scene.primitives.push_back(text_primitive(cx, origin_y - 10.0,
                                                  display_label(family, id), "middle",
                                                  "label", id));
    }
    for (const auto& id : elements) {
        const double cy = origin_y + cell * (static_cast<double>(row.at(id)) + 0.5);
        scene.primitives.push_back(text_primitive(origin_x - 8.0, cy + 4.0,
                                                  element_label(family, id), "end",
                                                  "label", id));
    }

    LegendEntry certain;
    certain.swatch = LegendEntry::Swatch::rect;
    certain.label = "certain member";
    certain.cell = membership_cell_style(MembershipStatus::certain_member(), variant, theme);
    scene.legend.push_back(certain);
    if (any_uncertain) {
        LegendEntry uncertain;
        uncertain.swatch = LegendEntry::Swatch::rect;
        uncertain.label = "uncertain member";
        uncertain.cell = membership_cell_style(MembershipStatus::uncertain(), variant, theme);
        scene.legend.push_back(uncertain);
    }
    if (any_probability) {
        for (double p : {0.25, 0.75}) {
            LegendEntry sample;
            sample.swatch = LegendEntry::Swatch::rect;
            sample.label = "membership p = " + format_number(p);
            sample.cell =
                membership_cell_style(MembershipStatus::probability(p), variant, theme);
            scene.legend.push_back(sample);
        }
    }

    dedupe_warnings(scene);
    return scene;
}

Scene layout_aggregate_matrix(const SetFamily& family, const AggregateSpec& spec,
                              const Theme& theme) {
    check_theme(theme);
    const std::vector<AggregateCell> region_cells =
        summary_table(family, spec.attribute, spec.kind, spec.target, spec.value_rule,
                      spec.certainty_rule, AggregateScope::regions);
    const std::vector<AggregateCell> set_cells =
        summary_table(family, spec.attribute, spec.kind, spec.target, spec.value_rule,
                      spec.certainty_rule, AggregateScope::sets);

    const AttributeSchema* schema = family.find_attribute(spec.attribute);
    const double lo = spec.kind == AggregateKind::proportion
                          ? 0.0
                          : (schema != nullptr ? schema->domain_min : 0.0);
    const double hi = spec.kind == AggregateKind::proportion
                          ? 1.0
                          : (schema != nullptr ? schema->domain_max : 1.0);

    const double origin_x = 150.0;
    const double origin_y = 70.0;
    const double cell_w = 48.0;
    const double cell_h = 26.0;
    const double gap = 10.0; // separates region rows from whole-set rows

    Scene scene;
    const size_t total_rows = region_cells.size() + set_cells.size();
    scene.width = 330.0;
    scene.height = origin_y + cell_h * static_cast<double>(total_rows) + gap + 40.0;

    const std::string header =
        spec.kind == AggregateKind::proportion
            ? spec.attribute + " = " + spec.target
            : "mean " + spec.attribute;
    scene.primitives.push_back(text_primitive(origin_x + cell_w / 2.0, origin_y - 12.0,
                                              header, "middle", "label", spec.attribute));

    bool any_no_data = false;
    double y = origin_y;
    auto add_row = [&](const AggregateCell& cell) {
        scene.primitives.push_back(
            text_primitive(origin_x - 10.0, y + cell_h / 2.0 + 4.0, cell.scope, "end",
                           "label", cell.scope));
        Primitive mark;
        mark.kind = Primitive::Kind::rect;
        mark.role = "agg-cell";
        mark.ref = cell.scope;
        mark.x = origin_x + 2.0;
        mark.y = y + 2.0;
        mark.w = cell_w - 4.0;
        mark.h = cell_h - 4.0;
        mark.has_fill = true;
        if (cell.value.has_value()) {
            mark.fill_lightness =
                value_to_lightness(*cell.value, lo, hi, theme, &scene.warnings);
        } else {
            mark.fill_lightness = 100.0;
            any_no_data = true;
        }
        mark.has_stroke = true;
        mark.stroke_lightness = theme.lightness_dark;
        mark.stroke_width = 1.2;
        mark.dash = certainty_to_dash(cell.certainty, theme);
        scene.primitives.push_back(std::move(mark));
        const std::string value_text =
            cell.value.has_value() ? format_number(*cell.value) : "no data";
        scene.primitives.push_back(text_primitive(origin_x + cell_w + 10.0,
                                                  y + cell_h / 2.0 + 4.0, value_text,
                                                  "start", "value-label", cell.scope));
        y += cell_h;
    };
    for (const auto& cell : region_cells) {
        add_row(cell);
    }
    y += gap;
    for (const auto& cell : set_cells) {
        add_row(cell);
    }

    const std::string unit =
        spec.kind == AggregateKind::proportion ? "proportion" : spec.attribute;
    LegendEntry low;
    low.swatch = LegendEntry::Swatch::rect;
    low.label = unit + " " + format_number(lo);
    low.cell = {1.0, theme.lightness_light};
    scene.legend.push_back(low);
    LegendEntry high;
    high.swatch = LegendEntry::Swatch::rect;
    high.label = unit + " " + format_number(hi);
    high.cell = {1.0, theme.lightness_dark};
    scene.legend.push_back(high);
    if (any_no_data) {
        LegendEntry none;
        none.swatch = LegendEntry::Swatch::rect;
        none.label = "no data";
        none.cell = {1.0, 100.0};
        scene.legend.push_back(none);
    }
    LegendEntry solid;
    solid.swatch = LegendEntry::Swatch::line;
    solid.label = "certainty 1";
    solid.line = {1.2, theme.lightness_dark};
    solid.dash = certainty_to_dash(1.0, theme);
    scene.legend.push_back(solid);
    LegendEntry half;
    half.swatch = LegendEntry::Swatch::line;
    half.label = "certainty 0.5";
    half.line = {1.2, theme.lightness_dark};
    half.dash = certainty_to_dash(0.5, theme);
    scene.legend.push_back(half);

    dedupe_warnings(scene);
    return scene;
}

Scene layout_dotplot(const SetFamily& family, const std::string& attribute,
                     const Theme& theme) {
    check_theme(theme);
    const AttributeSchema* schema = family.find_attribute(attribute);
    if (schema == nullptr) {
        throw std::invalid_argument("unknown attribute '" + attribute + "'");
    }
    if (schema->kind != AttributeSchema::Kind::numeric) {
        throw std::invalid_argument("attribute '" + attribute + "' is not numeric");
    }
    const RegionPartition partition = enumerate_regions(family);
    const std::vector<SetId> sets = sorted_sets(family);

    const double axis_x = 46.0;
    const double col_w = 110.0;
    const double first_col = 90.0;
    const double plot_top = 60.0;
    const double plot_bottom = 340.0;
    const double lane_sep = 356.0;
    const double lane_y = 374.0;
    const double jitter_span = 28.0;

    Scene scene;
    scene.width = axis_x + col_w * static_cast<double>(sets.size()) + 30.0;
    scene.height = 400.0;

    const double lo = schema->domain_min;
    const double hi = schema->domain_max;
    auto value_y = [&](double v) {
        const double t = (v - lo) / (hi - lo);
        return plot_bottom - std::clamp(t, 0.0, 1.0) * (plot_bottom - plot_top);
    };
    auto jitter = [&](const ElementId& id) {
        return (static_cast<double>(fnv1a(id) % 281) / 280.0 - 0.5) * jitter_span;
    };

    // Axis, domain ticks, unknown lane separator.
    Primitive axis;
    axis.kind = Primitive::Kind::line;
    axis.role = "axis";
    axis.x = axis_x;
    axis.y = plot_top;
    axis.x2 = axis_x;
    axis.y2 = plot_bottom;
    axis.has_stroke = true;
    axis.stroke_lightness = 20.0;
    axis.stroke_width = 1.0;
    scene.primitives.push_back(std::move(axis));
    scene.primitives.push_back(text_primitive(axis_x - 6.0, value_y(hi) + 4.0,
                                              format_number(hi), "end", "label",
                                              attribute));
    scene.primitives.push_back(text_primitive(axis_x - 6.0, value_y(lo) + 4.0,
                                              format_number(lo), "end", "label",
                                              attribute));
    Primitive sep;
    sep.kind = Primitive::Kind::line;
    sep.role = "axis";
    sep.x = axis_x;
    sep.y = lane_sep;
    sep.x2 = scene.width - 20.0;
    sep.y2 = lane_sep;
    sep.has_stroke = true;
    sep.stroke_lightness = 75.0;
    sep.stroke_width = 0.8;
    scene.primitives.push_back(std::move(sep));
    scene.primitives.push_back(
        text_primitive(axis_x - 6.0, lane_y + 4.0, "unknown", "end", "label", ""));

    std::map<SetId, std::vector<ElementId>> members;
    for (const auto& region : partition.regions) {
        for (const auto& set : region.signature) {
            auto& list = members[set];
            list.insert(list.end(), region.members.begin(), region.members.end());
        }
    }

    bool seen_class[4] = {false, false, false, false};
    for (size_t i = 0; i < sets.size(); ++i) {
        const double col_x = first_col + col_w * static_cast<double>(i);
        scene.primitives.push_back(text_primitive(col_x, 44.0, display_label(family, sets[i]),
                                                  "middle", "label", sets[i]));
        auto it = members.find(sets[i]);
        if (it == members.end()) {
            continue;
        }
        std::vector<ElementId> list = it->second;
        std::sort(list.begin(), list.end());

        // Extent bars go under the dots.
        for (const auto& id : list) {
            const Element* element = family.find_element(id);
            auto vit = element->attribute_values.find(attribute);
            if (vit == element->attribute_values.end() ||
                vit->second.kind != AttributeValue::Kind::range) {
                continue;
            }
            Primitive extent;
            extent.kind = Primitive::Kind::line;
            extent.role = "extent";
            extent.ref = id + "," + sets[i];
            extent.x = col_x + jitter(id);
            extent.y = value_y(vit->second.high);
            extent.x2 = extent.x;
            extent.y2 = value_y(vit->second.low);
            extent.has_stroke = true;
            extent.stroke_lightness = 85.0;
            extent.stroke_width = 2.0;
            scene.primitives.push_back(std::move(extent));
        }

        for (const auto& id : list) {
            const Element* element = family.find_element(id);
            auto vit = element->attribute_values.find(attribute);
            const AttributeValue value = vit == element->attribute_values.end()
                                             ? AttributeValue::missing()
                                             : vit->second;
            const GrayscaleClass cls = element_value_class(value, *schema);
            seen_class[static_cast<int>(cls)] = true;
            Primitive dot;
            dot.kind = Primitive::Kind::circle;
            dot.role = "dot";
            dot.ref = id + "," + sets[i];
            dot.x = col_x + jitter(id);
            dot.r = 3.5;
            dot.has_fill = true;
            dot.fill_lightness = grayscale_lightness(cls, theme);
            switch (value.kind) {
            case AttributeValue::Kind::known:
            case AttributeValue::Kind::flagged:
                dot.y = value_y(std::get<double>(value.value));
                break;
            case AttributeValue::Kind::range:
                dot.y = value_y((value.low + value.high) / 2.0);
                break;
            case AttributeValue::Kind::missing:
                dot.y = lane_y;
                break;
            }
            scene.primitives.push_back(std::move(dot));
        }
    }

    const char* class_names[4] = {"known", "range known", "threshold known", "unknown"};
    const GrayscaleClass classes[4] = {GrayscaleClass::known, GrayscaleClass::range_known,
                                       GrayscaleClass::threshold_known,
                                       GrayscaleClass::unknown};
    for (int i = 0; i < 4; ++i) {
        if (!seen_class[i]) {
            continue;
        }
        LegendEntry entry;
        entry.swatch = LegendEntry::Swatch::dot;
        entry.label = class_names[i];
        entry.dot_lightness = grayscale_lightness(classes[i], theme);
        scene.legend.push_back(entry);
    }

    dedupe_warnings(scene);
    return scene;
}

} // namespace setvis
