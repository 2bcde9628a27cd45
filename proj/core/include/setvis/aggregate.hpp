#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "setvis/model.hpp"

namespace setvis {

// An exclusive Euler region: the elements whose certain membership signature
// is exactly this set combination.
struct Region {
    std::set<SetId> signature;
    std::vector<ElementId> members;
};

// Partition of all elements by signature.  Regions hold only occupied
// signatures, sorted lexicographically by signature; elements in no set land
// in `outside`.
struct RegionPartition {
    std::vector<Region> regions;
    std::vector<ElementId> outside;
};

// Requires certain membership throughout; throws MembershipUncertainError if
// classify() reports anything but U=0 on the membership facet.
RegionPartition enumerate_regions(const SetFamily& family);

// Set cardinality under uncertain membership.  min counts certain members
// only; max adds every uncertain or probabilistic candidate; expected adds
// p per probability entry and 0.5 per undefined Uncertain pair.
struct CardinalityBounds {
    double min = 0.0;
    double max = 0.0;
    double expected = 0.0;
};

CardinalityBounds cardinality(const SetFamily& family, const SetId& set);

enum class ValueRule {
    certain_only, // aggregate over Known values, ignore the rest
    use_given,    // aggregate over Known and Flagged (and Range midpoints)
};

enum class CertaintyRule {
    over_all,   // |Known| / n_total
    over_given, // |Known| / (|Known| + |Flagged|)
};

// One aggregated cell: a scope (region signature or whole set), the
// aggregated value, its certainty, and the count decomposition.
// n_known + n_flagged + n_missing == n_total always holds.
struct AggregateCell {
    std::string scope;
    std::optional<double> value;
    double certainty = 0.0;
    int n_total = 0;
    int n_known = 0;
    int n_flagged = 0;
    int n_missing = 0;
};

enum class AggregateKind {
    proportion, // share of elements matching a categorical target level
    mean,       // mean of a numeric attribute
};

enum class AggregateScope {
    regions, // one cell per occupied region signature
    sets,    // one cell per whole set
};

// Share of members whose categorical value equals target_level.  CertainOnly
// counts hits among Known over |Known|; UseGiven widens both to Flagged.
// nullopt when the denominator is empty.
std::optional<double> aggregate_proportion(const SetFamily& family,
                                           const std::vector<ElementId>& members,
                                           const std::string& attribute,
                                           const std::string& target_level,
                                           ValueRule rule);

// Mean of a numeric attribute.  Range values contribute their midpoint under
// UseGiven and are excluded under CertainOnly.  nullopt when no contributors.
std::optional<double> aggregate_mean(const SetFamily& family,
                                     const std::vector<ElementId>& members,
                                     const std::string& attribute,
                                     ValueRule rule);

// OverAll: |Known| / n_total.  OverGiven: |Known| / (|Known| + |Flagged|).
// Empty denominators yield 0 by convention.
double certainty(const SetFamily& family,
                 const std::vector<ElementId>& members,
                 const std::string& attribute,
                 CertaintyRule rule);

// Builds one AggregateCell over a member list: value per value_rule,
// certainty per certainty_rule, counts always.
AggregateCell aggregate_values(const SetFamily& family,
                               const std::vector<ElementId>& members,
                               const std::string& scope_label,
                               const std::string& attribute,
                               AggregateKind kind,
                               const std::string& target,
                               ValueRule value_rule,
                               CertaintyRule certainty_rule);

// Full table: regions scope walks enumerate_regions output in signature
// order; sets scope walks sets in id order using all certain members.
std::vector<AggregateCell> summary_table(const SetFamily& family,
                                         const std::string& attribute,
                                         AggregateKind kind,
                                         const std::string& target,
                                         ValueRule value_rule,
                                         CertaintyRule certainty_rule,
                                         AggregateScope scope);

std::string signature_label(const std::set<SetId>& signature);

const char* value_rule_name(ValueRule rule);
const char* certainty_rule_name(CertaintyRule rule);

} // namespace setvis
