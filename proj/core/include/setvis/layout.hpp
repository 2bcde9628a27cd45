#pragma once

#include <optional>
#include <string>
#include <vector>

#include "setvis/aggregate.hpp"
#include "setvis/model.hpp"
#include "setvis/scene.hpp"

namespace setvis {

enum class BipartiteVariant {
    full_links,  // every uncertain pair drawn as a full-length line
    fans,        // uncertain pairs replaced by short fan stubs
    probability, // probability pairs styled by the line encoder
};

enum class EulerMode {
    membership,         // element dots inside region paths
    aggregate,          // region fills by value, outlines by certainty
    aggregate_textured, // certain-style fills plus hatch overlay and disclaimer
};

// Aggregation settings shared by the aggregate views.
struct AggregateSpec {
    std::string attribute;
    AggregateKind kind = AggregateKind::proportion;
    std::string target; // target level for proportions
    ValueRule value_rule = ValueRule::use_given;
    CertaintyRule certainty_rule = CertaintyRule::over_all;
};

Scene layout_bipartite(const SetFamily& family, BipartiteVariant variant,
                       const Theme& theme, bool with_aggregate_pies = false,
                       const std::optional<AggregateSpec>& spec = std::nullopt);

Scene layout_membership_matrix(const SetFamily& family, CellVariant variant,
                               const Theme& theme);

Scene layout_aggregate_matrix(const SetFamily& family, const AggregateSpec& spec,
                              const Theme& theme);

Scene layout_euler(const SetFamily& family, EulerMode mode, const Theme& theme,
                   const std::optional<AggregateSpec>& spec = std::nullopt);

Scene layout_dotplot(const SetFamily& family, const std::string& attribute,
                     const Theme& theme);

// Fixed Euler geometry for k sets.  Regions are listed per signature over
// circle indices, sorted tuples in lexicographic order (2^k - 1 entries).
struct EulerCircle {
    double cx = 0.0;
    double cy = 0.0;
    double r = 0.0;
};

struct EulerRegionGeom {
    std::vector<int> circles; // sorted indices into EulerTemplate::circles
    std::string path;         // closed path, arcs only
    double anchor_x = 0.0;    // deepest interior grid point
    double anchor_y = 0.0;
};

struct EulerTemplate {
    int k = 0;
    double width = 0.0;
    double height = 0.0;
    std::vector<EulerCircle> circles;
    std::vector<EulerRegionGeom> regions;
};

// Throws UnsupportedSetCountError unless 1 <= k <= 3.
EulerTemplate euler_template(int k);

// True when (x, y) lies in the exclusive region of exactly the given circle
// indices, at least margin away from every circle boundary.
bool template_region_contains(const EulerTemplate& tpl, const std::vector<int>& circles,
                              double x, double y, double margin = 0.0);

} // namespace setvis
