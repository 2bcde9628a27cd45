#include <algorithm>
#include <cmath>
#include <vector>

#include "setvis/errors.hpp"
#include "setvis/layout.hpp"
#include "setvis/numfmt.hpp"

namespace setvis {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kPointTol = 1e-6; // endpoint matching when chaining arcs
constexpr double kSideTol = 1e-7;  // strict inside/outside tests

struct Pt {
    double x;
    double y;
};

Pt point_on(const EulerCircle& c, double theta) {
    return {c.cx + c.r * std::cos(theta), c.cy + c.r * std::sin(theta)};
}

bool same_point(const Pt& a, const Pt& b) {
    return std::abs(a.x - b.x) < kPointTol && std::abs(a.y - b.y) < kPointTol;
}

double distance(double x, double y, const EulerCircle& c) {
    return std::hypot(x - c.cx, y - c.cy);
}

// Both intersection angles of circle a with circle b, as angles on a.
// Templates guarantee transversal intersections.
std::vector<double> intersection_angles(const EulerCircle& a, const EulerCircle& b) {
    const double d = std::hypot(b.cx - a.cx, b.cy - a.cy);
    if (d >= a.r + b.r || d <= std::abs(a.r - b.r)) {
        return {};
    }
    const double along = (d * d + a.r * a.r - b.r * b.r) / (2.0 * d);
    const double base = std::atan2(b.cy - a.cy, b.cx - a.cx);
    const double half = std::acos(std::clamp(along / a.r, -1.0, 1.0));
    return {base - half, base + half};
}

double normalize_angle(double theta) {
    while (theta < 0.0) {
        theta += 2.0 * kPi;
    }
    while (theta >= 2.0 * kPi) {
        theta -= 2.0 * kPi;
    }
    return theta;
}

// One boundary arc candidate: circle index plus angular interval, traversed
// with increasing angle (screen clockwise).
struct Arc {
    int circle;
    double theta_start;
    double theta_end; // theta_start + positive sweep
};

// Membership test for the open region of exactly `signature` (sorted circle
// indices), with the point sitting on circle `on` (skipped).
bool borders_region(const std::vector<EulerCircle>& circles,
                    const std::vector<int>& signature, int on, const Pt& p) {
    for (size_t i = 0; i < circles.size(); ++i) {
        if (static_cast<int>(i) == on) {
            continue;
        }
        const double d = distance(p.x, p.y, circles[i]);
        const bool wanted =
            std::find(signature.begin(), signature.end(), static_cast<int>(i)) !=
            signature.end();
        if (wanted && d > circles[i].r - kSideTol) {
            return false;
        }
        if (!wanted && d < circles[i].r + kSideTol) {
            return false;
        }
    }
    return true;
}

std::vector<Arc> boundary_arcs(const std::vector<EulerCircle>& circles,
                               const std::vector<int>& signature) {
    std::vector<Arc> arcs;
    for (size_t c = 0; c < circles.size(); ++c) {
        std::vector<double> cuts;
        for (size_t o = 0; o < circles.size(); ++o) {
            if (o == c) {
                continue;
            }
            for (double theta : intersection_angles(circles[c], circles[o])) {
                cuts.push_back(normalize_angle(theta));
            }
        }
        if (cuts.empty()) {
            continue; // a cut-free circle cannot contribute a partial arc
        }
        std::sort(cuts.begin(), cuts.end());
        for (size_t i = 0; i < cuts.size(); ++i) {
            const double start = cuts[i];
            const double end =
                i + 1 < cuts.size() ? cuts[i + 1] : cuts[0] + 2.0 * kPi;
            if (end - start < 1e-9) {
                continue;
            }
            // An arc of a signature circle bounds the region from inside; an
            // arc of an outside circle bounds it from outside.  Either way
            // every other circle must agree with the signature at the
            // arc midpoint.
            const Pt mid = point_on(circles[c], (start + end) / 2.0);
            if (borders_region(circles, signature, static_cast<int>(c), mid)) {
                arcs.push_back({static_cast<int>(c), start, end});
            }
        }
    }
    return arcs;
}

std::string arc_command(const EulerCircle& c, double sweep_angle, int sweep_flag,
                        const Pt& to) {
    std::string cmd = "A " + format_number(c.r) + " " + format_number(c.r) + " 0 ";
    cmd += sweep_angle > kPi ? "1 " : "0 ";
    cmd += std::to_string(sweep_flag) + " ";
    cmd += format_number(to.x) + " " + format_number(to.y);
    return cmd;
}

// Chains boundary arcs into one closed loop and emits SVG path data.
// Template regions are simply connected, so one loop consumes every arc.
std::string chain_arcs(const std::vector<EulerCircle>& circles, std::vector<Arc> arcs) {
    std::sort(arcs.begin(), arcs.end(), [](const Arc& a, const Arc& b) {
        if (a.circle != b.circle) {
            return a.circle < b.circle;
        }
        return a.theta_start < b.theta_start;
    });

    std::vector<bool> used(arcs.size(), false);
    const Pt loop_start = point_on(circles[arcs[0].circle], arcs[0].theta_start);
    Pt current = loop_start;
    std::string path = "M " + format_number(current.x) + " " + format_number(current.y);

    bool forward = true;
    size_t index = 0;
    while (true) {
        const Arc& arc = arcs[index];
        used[index] = true;
        const double sweep = arc.theta_end - arc.theta_start;
        const Pt exit = forward ? point_on(circles[arc.circle], arc.theta_end)
                                : point_on(circles[arc.circle], arc.theta_start);
        path += " " + arc_command(circles[arc.circle], sweep, forward ? 1 : 0, exit);
        current = exit;
        if (same_point(current, loop_start)) {
            break;
        }
        bool found = false;
        for (size_t i = 0; i < arcs.size() && !found; ++i) {
            if (used[i]) {
                continue;
            }
            const Pt s = point_on(circles[arcs[i].circle], arcs[i].theta_start);
            const Pt e = point_on(circles[arcs[i].circle], arcs[i].theta_end);
            if (same_point(s, current)) {
                index = i;
                forward = true;
                found = true;
            } else if (same_point(e, current)) {
                index = i;
                forward = false;
                found = true;
            }
        }
        if (!found) {
            break; // numerically impossible for the fixed templates
        }
    }
    path += " Z";
    return path;
}

std::string full_circle_path(const EulerCircle& c) {
    const Pt right = {c.cx + c.r, c.cy};
    const Pt left = {c.cx - c.r, c.cy};
    std::string path = "M " + format_number(right.x) + " " + format_number(right.y);
    path += " " + arc_command(c, kPi, 1, left);
    path += " " + arc_command(c, kPi, 1, right);
    path += " Z";
    return path;
}

bool region_contains_point(const std::vector<EulerCircle>& circles,
                           const std::vector<int>& signature, double x, double y,
                           double margin) {
    for (size_t i = 0; i < circles.size(); ++i) {
        const double d = distance(x, y, circles[i]);
        const bool wanted =
            std::find(signature.begin(), signature.end(), static_cast<int>(i)) !=
            signature.end();
        if (wanted && d > circles[i].r - margin) {
            return false;
        }
        if (!wanted && d < circles[i].r + margin) {
            return false;
        }
    }
    return true;
}

// Deepest interior grid point: maximizes distance to the nearest circle
// boundary.  Grid scan keeps the choice deterministic.
Pt region_anchor(const std::vector<EulerCircle>& circles,
                 const std::vector<int>& signature, double width, double height) {
    Pt best = {0.0, 0.0};
    double best_depth = -1.0;
    for (double y = 2.0; y < height; y += 2.0) {
        for (double x = 2.0; x < width; x += 2.0) {
            if (!region_contains_point(circles, signature, x, y, 0.0)) {
                continue;
            }
            double depth = 1e18;
            for (const auto& c : circles) {
                depth = std::min(depth, std::abs(distance(x, y, c) - c.r));
            }
            if (depth > best_depth + 1e-9) {
                best_depth = depth;
                best = {x, y};
            }
        }
    }
    return best;
}

std::vector<std::vector<int>> signatures_for(int k) {
    std::vector<std::vector<int>> all;
    for (int mask = 1; mask < (1 << k); ++mask) {
        std::vector<int> sig;
        for (int i = 0; i < k; ++i) {
            if (mask & (1 << i)) {
                sig.push_back(i);
            }
        }
        all.push_back(std::move(sig));
    }
    std::sort(all.begin(), all.end()); // sorted-tuple lexicographic order
    return all;
}

} // namespace

EulerTemplate euler_template(int k) {
    if (k < 1 || k > 3) {
        throw UnsupportedSetCountError(
            "euler view supports 1 to 3 sets; got " + std::to_string(k) +
            " (use --view membership-matrix)");
    }
    EulerTemplate tpl;
    tpl.k = k;
    tpl.width = 400.0;
    tpl.height = 400.0;
    if (k == 1) {
        tpl.circles = {{200.0, 200.0, 120.0}};
    } else if (k == 2) {
        tpl.circles = {{150.0, 200.0, 120.0}, {250.0, 200.0, 120.0}};
    } else {
        const double d = 62.0;
        const double spread = d * std::sqrt(3.0) / 2.0;
        tpl.circles = {{200.0, 200.0 - d, 110.0},
                       {200.0 - spread, 200.0 + d / 2.0, 110.0},
                       {200.0 + spread, 200.0 + d / 2.0, 110.0}};
    }

    for (const auto& signature : signatures_for(k)) {
        EulerRegionGeom region;
        region.circles = signature;
        std::vector<Arc> arcs = boundary_arcs(tpl.circles, signature);
        if (arcs.empty()) {
            region.path = full_circle_path(tpl.circles[signature[0]]);
        } else {
            region.path = chain_arcs(tpl.circles, std::move(arcs));
        }
        const Pt anchor = region_anchor(tpl.circles, signature, tpl.width, tpl.height);
        region.anchor_x = anchor.x;
        region.anchor_y = anchor.y;
        tpl.regions.push_back(std::move(region));
    }
    return tpl;
}

bool template_region_contains(const EulerTemplate& tpl, const std::vector<int>& circles,
                              double x, double y, double margin) {
    std::vector<int> signature = circles;
    std::sort(signature.begin(), signature.end());
    return region_contains_point(tpl.circles, signature, x, y, margin);
}

namespace {

std::vector<SetId> sorted_set_ids(const SetFamily& family) {
    std::vector<SetId> ids;
    for (const auto& s : family.sets) {
        ids.push_back(s.id);
    }
    std::sort(ids.begin(), ids.end());
    return ids;
}

std::string join_ids(const std::vector<std::string>& ids) {
    std::string out;
    for (const auto& id : ids) {
        if (!out.empty()) {
            out += ",";
        }
        out += id;
    }
    return out;
}

std::set<SetId> signature_ids(const std::vector<int>& indices,
                              const std::vector<SetId>& ids) {
    std::set<SetId> out;
    for (int i : indices) {
        out.insert(ids[static_cast<size_t>(i)]);
    }
    return out;
}

void add_set_labels(Scene& scene, const EulerTemplate& tpl, const SetFamily& family,
                    const std::vector<SetId>& ids) {
    for (size_t i = 0; i < ids.size(); ++i) {
        const EulerCircle& c = tpl.circles[i];
        const SetDef* def = family.find_set(ids[i]);
        Primitive label;
        label.kind = Primitive::Kind::text;
        label.role = "label";
        label.ref = ids[i];
        label.text = def != nullptr ? def->label : ids[i];
        label.anchor = "middle";
        label.x = c.cx;
        // Bottom-row circles get their label below to avoid the overlap zone.
        if (tpl.k == 3 && i > 0) {
            label.y = c.cy + c.r + 16.0;
        } else {
            label.y = c.cy - c.r - 8.0;
        }
        scene.primitives.push_back(std::move(label));
    }
}

// Grid points inside the region, nearest the anchor first.  Deterministic
// candidate for element dot placement.
std::vector<Pt> dot_slots(const EulerTemplate& tpl, const EulerRegionGeom& region,
                          size_t needed) {
    std::vector<Pt> slots;
    const double margin = 7.0;
    const double step = 6.0;
    for (double y = 2.0; y < tpl.height; y += step) {
        for (double x = 2.0; x < tpl.width; x += step) {
            if (region_contains_point(tpl.circles, region.circles, x, y, margin)) {
                slots.push_back({x, y});
            }
        }
    }
    std::sort(slots.begin(), slots.end(), [&](const Pt& a, const Pt& b) {
        const double da = std::hypot(a.x - region.anchor_x, a.y - region.anchor_y);
        const double db = std::hypot(b.x - region.anchor_x, b.y - region.anchor_y);
        if (std::abs(da - db) > 1e-9) {
            return da < db;
        }
        if (a.y != b.y) {
            return a.y < b.y;
        }
        return a.x < b.x;
    });
    while (slots.size() < needed) {
        slots.push_back({region.anchor_x, region.anchor_y}); // crowded fallback
    }
    return slots;
}

} // namespace

Scene layout_euler(const SetFamily& family, EulerMode mode, const Theme& theme,
                   const std::optional<AggregateSpec>& spec) {
    check_theme(theme);
    const std::vector<SetId> ids = sorted_set_ids(family);
    const EulerTemplate tpl = euler_template(static_cast<int>(ids.size()));
    const RegionPartition partition = enumerate_regions(family);

    std::map<std::set<SetId>, const Region*> occupied;
    for (const auto& region : partition.regions) {
        occupied[region.signature] = &region;
    }

    Scene scene;
    scene.width = tpl.width;
    scene.height = tpl.height;

    if (mode == EulerMode::membership) {
        for (const auto& geom : tpl.regions) {
            const std::set<SetId> sig = signature_ids(geom.circles, ids);
            Primitive fill;
            fill.kind = Primitive::Kind::ellipse_path;
            fill.role = "region:" + signature_label(sig);
            fill.ref = join_ids({sig.begin(), sig.end()});
            fill.path = geom.path;
            fill.has_fill = true;
            fill.fill_lightness = 100.0;
            scene.primitives.push_back(std::move(fill));
        }
        for (size_t i = 0; i < tpl.circles.size(); ++i) {
            Primitive outline;
            outline.kind = Primitive::Kind::circle;
            outline.role = "set-outline";
            outline.ref = ids[i];
            outline.x = tpl.circles[i].cx;
            outline.y = tpl.circles[i].cy;
            outline.r = tpl.circles[i].r;
            outline.has_stroke = true;
            outline.stroke_lightness = theme.lightness_dark;
            outline.stroke_width = 1.4;
            scene.primitives.push_back(std::move(outline));
        }
        for (const auto& geom : tpl.regions) {
            auto it = occupied.find(signature_ids(geom.circles, ids));
            if (it == occupied.end()) {
                continue;
            }
            const std::vector<Pt> slots =
                dot_slots(tpl, geom, it->second->members.size());
            for (size_t m = 0; m < it->second->members.size(); ++m) {
                Primitive dot;
                dot.kind = Primitive::Kind::circle;
                dot.role = "element-dot";
                dot.ref = it->second->members[m];
                dot.x = slots[m].x;
                dot.y = slots[m].y;
                dot.r = 3.5;
                dot.has_fill = true;
                dot.fill_lightness = theme.lightness_dark;
                scene.primitives.push_back(std::move(dot));
            }
        }
        if (!partition.outside.empty()) {
            scene.warnings.push_back(std::to_string(partition.outside.size()) +
                                     " element(s) belong to no set and are not shown");
        }
        add_set_labels(scene, tpl, family, ids);

        LegendEntry dot;
        dot.swatch = LegendEntry::Swatch::dot;
        dot.label = "element";
        dot.dot_lightness = theme.lightness_dark;
        scene.legend.push_back(dot);
        LegendEntry boundary;
        boundary.swatch = LegendEntry::Swatch::line;
        boundary.label = "set boundary";
        boundary.line = {1.4, theme.lightness_dark};
        scene.legend.push_back(boundary);
        return scene;
    }

    if (!spec.has_value()) {
        throw std::invalid_argument("euler aggregate mode requires aggregate settings");
    }
    const AttributeSchema* schema = family.find_attribute(spec->attribute);
    if (schema == nullptr) {
        throw std::invalid_argument("unknown attribute '" + spec->attribute + "'");
    }
    const double domain_lo =
        spec->kind == AggregateKind::proportion ? 0.0 : schema->domain_min;
    const double domain_hi =
        spec->kind == AggregateKind::proportion ? 1.0 : schema->domain_max;

    bool any_no_data = false;
    for (const auto& geom : tpl.regions) {
        const std::set<SetId> sig = signature_ids(geom.circles, ids);
        std::vector<ElementId> members;
        auto it = occupied.find(sig);
        if (it != occupied.end()) {
            members = it->second->members;
        }
        const AggregateCell cell = aggregate_values(
            family, members, signature_label(sig), spec->attribute, spec->kind,
            spec->target, spec->value_rule, spec->certainty_rule);

        Primitive region;
        region.kind = Primitive::Kind::ellipse_path;
        region.role = "region:" + cell.scope;
        region.ref = join_ids({sig.begin(), sig.end()});
        region.path = geom.path;
        region.has_fill = true;
        if (cell.value.has_value()) {
            region.fill_lightness = value_to_lightness(*cell.value, domain_lo, domain_hi,
                                                       theme, &scene.warnings);
        } else {
            region.fill_lightness = 100.0; // no-data style
            any_no_data = true;
        }
        region.has_stroke = true;
        region.stroke_lightness = theme.lightness_dark;
        region.stroke_width = 1.4;
        if (mode == EulerMode::aggregate) {
            region.dash = certainty_to_dash(cell.certainty, theme);
        }
        scene.primitives.push_back(std::move(region));

        if (mode == EulerMode::aggregate_textured) {
            Primitive hatch;
            hatch.kind = Primitive::Kind::hatch_fill;
            hatch.role = "hatch";
            hatch.ref = join_ids({sig.begin(), sig.end()});
            hatch.path = geom.path;
            hatch.texture = undefined_uncertainty_texture(theme);
            scene.primitives.push_back(std::move(hatch));
        }
    }
    add_set_labels(scene, tpl, family, ids);

    if (mode == EulerMode::aggregate_textured) {
        scene.height += 30.0;
        Primitive caption;
        caption.kind = Primitive::Kind::text;
        caption.role = "disclaimer";
        caption.ref = spec->attribute;
        caption.text = "All values of " + spec->attribute + " are uncertain.";
        caption.x = scene.width / 2.0;
        caption.y = scene.height - 12.0;
        caption.anchor = "middle";
        scene.primitives.push_back(std::move(caption));
    }

    const std::string unit =
        spec->kind == AggregateKind::proportion ? "proportion" : spec->attribute;
    LegendEntry low;
    low.swatch = LegendEntry::Swatch::rect;
    low.label = unit + " " + format_number(domain_lo);
    low.cell = {1.0, theme.lightness_light};
    scene.legend.push_back(low);
    LegendEntry high;
    high.swatch = LegendEntry::Swatch::rect;
    high.label = unit + " " + format_number(domain_hi);
    high.cell = {1.0, theme.lightness_dark};
    scene.legend.push_back(high);
    if (any_no_data) {
        LegendEntry none;
        none.swatch = LegendEntry::Swatch::rect;
        none.label = "no data";
        none.cell = {1.0, 100.0};
        scene.legend.push_back(none);
    }
    if (mode == EulerMode::aggregate) {
        LegendEntry solid;
        solid.swatch = LegendEntry::Swatch::line;
        solid.label = "certainty 1";
        solid.line = {1.4, theme.lightness_dark};
        solid.dash = certainty_to_dash(1.0, theme);
        scene.legend.push_back(solid);
        LegendEntry half;
        half.swatch = LegendEntry::Swatch::line;
        half.label = "certainty 0.5";
        half.line = {1.4, theme.lightness_dark};
        half.dash = certainty_to_dash(0.5, theme);
        scene.legend.push_back(half);
    } else {
        LegendEntry hatch;
        hatch.swatch = LegendEntry::Swatch::hatch;
        hatch.label = "values uncertain";
        hatch.texture = undefined_uncertainty_texture(theme);
        scene.legend.push_back(hatch);
    }
    return scene;
}

} // namespace setvis
