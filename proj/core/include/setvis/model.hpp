// Data model for set families with three grades of certainty, plus the
// operations that classify a family and expand its membership table.

#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "setvis/errors.hpp"

namespace setvis {

using SetId = std::string;
using ElementId = std::string;

// A concrete attribute value: numeric or a categorical level.
using ScalarValue = std::variant<double, std::string>;

// Membership of one (element, set) pair. A probability must be strictly
// inside (0,1); the endpoints are spelled as the two certain statuses.
struct MembershipStatus {
    enum class Kind { certain_member, certain_non_member, uncertain, probability };

    Kind kind = Kind::certain_non_member;
    double p = 0.0; // meaningful only for Kind::probability

    static MembershipStatus certain_member() { return {Kind::certain_member, 0.0}; }
    static MembershipStatus certain_non_member() { return {Kind::certain_non_member, 0.0}; }
    static MembershipStatus uncertain() { return {Kind::uncertain, 0.0}; }
    static MembershipStatus probability(double p) { return {Kind::probability, p}; }

    bool operator==(const MembershipStatus&) const = default;
};

// One explicit entry of the membership table.
struct Membership {
    ElementId element;
    SetId set;
    MembershipStatus status;

    bool operator==(const Membership&) const = default;
};

// An element attribute value in one of four knowledge states.
//  known:   the value is given and trusted
//  missing: no value at all
//  flagged: a value is given but may be incorrect
//  range:   the value lies in [low, high] (numeric attributes only);
//           open thresholds are written against the schema domain bound
struct AttributeValue {
    enum class Kind { known, missing, flagged, range };

    Kind kind = Kind::missing;
    ScalarValue value; // known / flagged
    double low = 0.0;  // range
    double high = 0.0; // range

    static AttributeValue known(ScalarValue v) { return {Kind::known, std::move(v), 0.0, 0.0}; }
    static AttributeValue missing() { return {Kind::missing, {}, 0.0, 0.0}; }
    static AttributeValue flagged(ScalarValue v) { return {Kind::flagged, std::move(v), 0.0, 0.0}; }
    static AttributeValue range(double low, double high) { return {Kind::range, {}, low, high}; }

    bool operator==(const AttributeValue&) const = default;
};

struct AttributeSchema {
    enum class Kind { numeric, categorical };

    std::string name;
    Kind kind = Kind::numeric;
    double domain_min = 0.0; // numeric
    double domain_max = 0.0; // numeric
    std::vector<std::string> levels; // categorical
    bool uncertain_everywhere = false;

    static AttributeSchema numeric(std::string name, double min, double max) {
        AttributeSchema s;
        s.name = std::move(name);
        s.kind = Kind::numeric;
        s.domain_min = min;
        s.domain_max = max;
        return s;
    }
    static AttributeSchema categorical(std::string name, std::vector<std::string> levels) {
        AttributeSchema s;
        s.name = std::move(name);
        s.kind = Kind::categorical;
        s.levels = std::move(levels);
        return s;
    }

    bool operator==(const AttributeSchema&) const = default;
};

struct SetDef {
    SetId id;
    std::string label;
    // True when the set's roster is wholly unknown. Such a set may still
    // carry explicit non-member or uncertain entries, but never a certain
    // member or a probability.
    bool membership_uncertain = false;

    bool operator==(const SetDef&) const = default;
};

struct Element {
    ElementId id;
    std::string label;
    bool membership_uncertain = false;
    // Keys are schema attribute names; an absent key means missing.
    std::map<std::string, AttributeValue> attribute_values;

    bool operator==(const Element&) const = default;
};

// The whole dataset. Immutable by convention after construction; every
// operation below is a pure function over it.
struct SetFamily {
    std::vector<SetDef> sets;
    std::vector<Element> elements;
    std::vector<Membership> memberships;
    std::vector<AttributeSchema> attributes;
    bool disclaimer_uncertain = false; // dataset-wide undefined uncertainty

    const SetDef* find_set(const SetId& id) const;
    const Element* find_element(const ElementId& id) const;
    const AttributeSchema* find_attribute(const std::string& name) const;
};

// Order-insensitive structural equality: entity lists compare as sets of
// records, not as sequences.
bool structurally_equal(const SetFamily& a, const SetFamily& b);

// Canonical entity ordering used by serialization and by structurally_equal:
// sets and elements by id, attributes by name, memberships by (element, set).
SetFamily canonicalized(SetFamily family);

// The three grades of (un)certainty. The order is meaningful:
// U0 < UBinary < UDefined, more information about the uncertainty dominates.
enum class UncertaintyClass { U0 = 0, UBinary = 1, UDefined = 2 };

const char* uncertainty_symbol(UncertaintyClass c); // "U=0" / "U>0" / "U=p"
const char* uncertainty_name(UncertaintyClass c);   // framework cell names

struct FacetClassification {
    UncertaintyClass membership = UncertaintyClass::U0;
    UncertaintyClass set_attributes = UncertaintyClass::U0;
    UncertaintyClass element_attributes = UncertaintyClass::U0;
    std::vector<std::string> notes;

    bool operator==(const FacetClassification& o) const {
        return membership == o.membership && set_attributes == o.set_attributes &&
               element_attributes == o.element_attributes;
    }
};

struct Violation {
    enum class Code {
        duplicate_set_id,
        duplicate_element_id,
        duplicate_attribute_name,
        unknown_element_ref,
        unknown_set_ref,
        duplicate_membership,
        probability_out_of_range,
        probability_boundary,
        uncertain_set_conflict,
        unknown_attribute_ref,
        attribute_kind_mismatch,
        unknown_level,
        bad_range,
        bad_numeric_domain,
        bad_categorical_levels,
    };

    Code code;
    std::string subject; // offending id, name, or "(element,set)" pair
    std::string message;

    bool operator==(const Violation&) const = default;
};

const char* violation_code_name(Violation::Code code);

// Checks every model invariant. Violations are data, not failures: the
// function never throws on bad input.
std::vector<Violation> validate(const SetFamily& family);

// Throws ValidationError when validate(family) is non-empty.
void require_valid(const SetFamily& family);

// Classifies the three data facets into the framework cells.
// Precondition: validate(family) is empty (throws ValidationError otherwise).
FacetClassification classify(const SetFamily& family);

// One row of the fully expanded membership table.
struct ExpandedMembership {
    ElementId element;
    SetId set;
    MembershipStatus status;

    bool operator==(const ExpandedMembership&) const = default;
};

// Expands explicit entries plus uncertainty flags to one status per
// (element, set) pair, ordered lexicographically by (element id, set id).
// A set that is not flagged uncertain and has no member-indicating entry
// (certain member, probability, or uncertain) is known empty: uncertain
// elements resolve to certain non-members there. Throws
// ExpansionConflictError when a set flagged membership_uncertain carries
// explicit certain-non-member entries for every element, i.e. its declared
// uncertainty contradicts a fully specified empty roster.
std::vector<ExpandedMembership> expand_memberships(const SetFamily& family);

} // namespace setvis
