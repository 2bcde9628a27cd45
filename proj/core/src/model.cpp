#include "setvis/model.hpp"

#include <algorithm>
#include <set>
#include <unordered_map>
#include <unordered_set>

namespace setvis {

namespace {

template <typename T, typename Key>
const T* find_by(const std::vector<T>& items, Key T::* field, const Key& wanted) {
    for (const auto& item : items) {
        if (item.*field == wanted) {
            return &item;
        }
    }
    return nullptr;
}

std::string pair_subject(const ElementId& e, const SetId& s) {
    return "(" + e + "," + s + ")";
}

} // namespace

const SetDef* SetFamily::find_set(const SetId& id) const {
    return find_by(sets, &SetDef::id, id);
}

const Element* SetFamily::find_element(const ElementId& id) const {
    return find_by(elements, &Element::id, id);
}

const AttributeSchema* SetFamily::find_attribute(const std::string& name) const {
    return find_by(attributes, &AttributeSchema::name, name);
}

SetFamily canonicalized(SetFamily family) {
    std::sort(family.sets.begin(), family.sets.end(),
              [](const SetDef& a, const SetDef& b) { return a.id < b.id; });
    std::sort(family.elements.begin(), family.elements.end(),
              [](const Element& a, const Element& b) { return a.id < b.id; });
    std::sort(family.attributes.begin(), family.attributes.end(),
              [](const AttributeSchema& a, const AttributeSchema& b) { return a.name < b.name; });
    std::sort(family.memberships.begin(), family.memberships.end(),
              [](const Membership& a, const Membership& b) {
                  return std::tie(a.element, a.set) < std::tie(b.element, b.set);
              });
    return family;
}

bool structurally_equal(const SetFamily& a, const SetFamily& b) {
    SetFamily ca = canonicalized(a);
    SetFamily cb = canonicalized(b);
    return ca.sets == cb.sets && ca.elements == cb.elements &&
           ca.memberships == cb.memberships && ca.attributes == cb.attributes &&
           ca.disclaimer_uncertain == cb.disclaimer_uncertain;
}

const char* uncertainty_symbol(UncertaintyClass c) {
    switch (c) {
    case UncertaintyClass::U0: return "U=0";
    case UncertaintyClass::UBinary: return "U>0";
    case UncertaintyClass::UDefined: return "U=p";
    }
    return "?";
}

const char* uncertainty_name(UncertaintyClass c) {
    switch (c) {
    case UncertaintyClass::U0: return "certainty";
    case UncertaintyClass::UBinary: return "undefined uncertainty";
    case UncertaintyClass::UDefined: return "defined uncertainty";
    }
    return "?";
}

const char* violation_code_name(Violation::Code code) {
    switch (code) {
    case Violation::Code::duplicate_set_id: return "DuplicateSetId";
    case Violation::Code::duplicate_element_id: return "DuplicateElementId";
    case Violation::Code::duplicate_attribute_name: return "DuplicateAttributeName";
    case Violation::Code::unknown_element_ref: return "UnknownElementRef";
    case Violation::Code::unknown_set_ref: return "UnknownSetRef";
    case Violation::Code::duplicate_membership: return "DuplicateMembership";
    case Violation::Code::probability_out_of_range: return "ProbabilityOutOfRange";
    case Violation::Code::probability_boundary: return "ProbabilityBoundary";
    case Violation::Code::uncertain_set_conflict: return "UncertainSetConflict";
    case Violation::Code::unknown_attribute_ref: return "UnknownAttributeRef";
    case Violation::Code::attribute_kind_mismatch: return "AttributeKindMismatch";
    case Violation::Code::unknown_level: return "UnknownLevel";
    case Violation::Code::bad_range: return "BadRange";
    case Violation::Code::bad_numeric_domain: return "BadNumericDomain";
    case Violation::Code::bad_categorical_levels: return "BadCategoricalLevels";
    }
    return "Unknown";
}

std::vector<Violation> validate(const SetFamily& family) {
    std::vector<Violation> out;
    auto add = [&out](Violation::Code code, std::string subject, std::string message) {
        out.push_back({code, std::move(subject), std::move(message)});
    };

    std::unordered_set<std::string> set_ids;
    for (const auto& s : family.sets) {
        if (!set_ids.insert(s.id).second) {
            add(Violation::Code::duplicate_set_id, s.id, "set id declared more than once");
        }
    }
    std::unordered_set<std::string> element_ids;
    for (const auto& e : family.elements) {
        if (!element_ids.insert(e.id).second) {
            add(Violation::Code::duplicate_element_id, e.id, "element id declared more than once");
        }
    }
    std::unordered_set<std::string> attr_names;
    for (const auto& a : family.attributes) {
        if (!attr_names.insert(a.name).second) {
            add(Violation::Code::duplicate_attribute_name, a.name,
                "attribute name declared more than once");
        }
        if (a.kind == AttributeSchema::Kind::numeric) {
            if (!(a.domain_min < a.domain_max)) {
                add(Violation::Code::bad_numeric_domain, a.name,
                    "numeric domain requires min < max");
            }
        } else {
            if (a.levels.empty()) {
                add(Violation::Code::bad_categorical_levels, a.name, "no levels declared");
            }
            std::unordered_set<std::string> seen;
            for (const auto& level : a.levels) {
                if (!seen.insert(level).second) {
                    add(Violation::Code::bad_categorical_levels, a.name,
                        "duplicate level '" + level + "'");
                }
            }
        }
    }

    std::set<std::pair<ElementId, SetId>> membership_pairs;
    for (const auto& m : family.memberships) {
        const std::string subject = pair_subject(m.element, m.set);
        if (element_ids.count(m.element) == 0) {
            add(Violation::Code::unknown_element_ref, subject,
                "membership references unknown element '" + m.element + "'");
        }
        if (set_ids.count(m.set) == 0) {
            add(Violation::Code::unknown_set_ref, subject,
                "membership references unknown set '" + m.set + "'");
        }
        if (!membership_pairs.insert({m.element, m.set}).second) {
            add(Violation::Code::duplicate_membership, subject,
                "more than one entry for the pair");
        }
        if (m.status.kind == MembershipStatus::Kind::probability) {
            if (m.status.p < 0.0 || m.status.p > 1.0) {
                add(Violation::Code::probability_out_of_range, subject,
                    "probability must lie in (0,1)");
            } else if (m.status.p == 0.0 || m.status.p == 1.0) {
                add(Violation::Code::probability_boundary, subject,
                    "p=0 must be written as non-member, p=1 as certain member");
            }
        }
        const SetDef* set = family.find_set(m.set);
        if (set != nullptr && set->membership_uncertain &&
            (m.status.kind == MembershipStatus::Kind::certain_member ||
             m.status.kind == MembershipStatus::Kind::probability)) {
            add(Violation::Code::uncertain_set_conflict, subject,
                "set '" + m.set + "' has a wholly unknown roster; certain members and "
                "probabilities contradict that");
        }
    }

    for (const auto& e : family.elements) {
        for (const auto& [name, value] : e.attribute_values) {
            const AttributeSchema* schema = family.find_attribute(name);
            const std::string subject = "(" + e.id + "," + name + ")";
            if (schema == nullptr) {
                add(Violation::Code::unknown_attribute_ref, subject,
                    "value for attribute '" + name + "' not in the schema");
                continue;
            }
            const bool numeric = schema->kind == AttributeSchema::Kind::numeric;
            switch (value.kind) {
            case AttributeValue::Kind::known:
            case AttributeValue::Kind::flagged: {
                const bool is_number = std::holds_alternative<double>(value.value);
                if (numeric != is_number) {
                    add(Violation::Code::attribute_kind_mismatch, subject,
                        numeric ? "numeric attribute carries a categorical value"
                                : "categorical attribute carries a numeric value");
                } else if (!numeric) {
                    const auto& level = std::get<std::string>(value.value);
                    if (std::find(schema->levels.begin(), schema->levels.end(), level) ==
                        schema->levels.end()) {
                        add(Violation::Code::unknown_level, subject,
                            "level '" + level + "' not declared for '" + name + "'");
                    }
                }
                break;
            }
            case AttributeValue::Kind::range:
                if (!numeric) {
                    add(Violation::Code::attribute_kind_mismatch, subject,
                        "range values require a numeric attribute");
                } else if (!(value.low <= value.high)) {
                    add(Violation::Code::bad_range, subject, "range requires low <= high");
                }
                break;
            case AttributeValue::Kind::missing:
                break;
            }
        }
    }

    return out;
}

void require_valid(const SetFamily& family) {
    std::vector<Violation> violations = validate(family);
    if (violations.empty()) {
        return;
    }
    std::vector<std::string> summaries;
    summaries.reserve(violations.size());
    for (const auto& v : violations) {
        summaries.push_back(std::string(violation_code_name(v.code)) + " " + v.subject + ": " +
                            v.message);
    }
    std::string what = "family violates " + std::to_string(violations.size()) +
                       " model invariant(s); first: " + summaries.front();
    throw ValidationError(what, std::move(summaries));
}

FacetClassification classify(const SetFamily& family) {
    require_valid(family);

    FacetClassification out;

    bool any_probability = false;
    bool any_uncertain_entry = false;
    for (const auto& m : family.memberships) {
        any_probability |= m.status.kind == MembershipStatus::Kind::probability;
        any_uncertain_entry |= m.status.kind == MembershipStatus::Kind::uncertain;
    }
    bool any_membership_flag = false;
    for (const auto& s : family.sets) {
        any_membership_flag |= s.membership_uncertain;
    }
    for (const auto& e : family.elements) {
        any_membership_flag |= e.membership_uncertain;
    }
    if (any_probability) {
        out.membership = UncertaintyClass::UDefined;
    } else if (any_uncertain_entry || any_membership_flag) {
        out.membership = UncertaintyClass::UBinary;
    }

    // Per-element markers locate the uncertainty, so they classify as
    // defined even without a magnitude. An absent key means missing.
    bool any_located_marker = false;
    for (const auto& e : family.elements) {
        for (const auto& schema : family.attributes) {
            auto it = e.attribute_values.find(schema.name);
            if (it == e.attribute_values.end() ||
                it->second.kind != AttributeValue::Kind::known) {
                any_located_marker = true;
            }
        }
    }
    bool any_blanket_flag = family.disclaimer_uncertain;
    for (const auto& a : family.attributes) {
        any_blanket_flag |= a.uncertain_everywhere;
    }
    if (any_located_marker) {
        out.element_attributes = UncertaintyClass::UDefined;
        if (any_blanket_flag) {
            out.notes.push_back(
                "per-element uncertainty markers and attribute-wide undefined uncertainty "
                "coexist; classified as defined uncertainty");
        }
    } else if (any_blanket_flag) {
        out.element_attributes = UncertaintyClass::UBinary;
    }

    out.set_attributes = std::max(out.membership, out.element_attributes);
    return out;
}

std::vector<ExpandedMembership> expand_memberships(const SetFamily& family) {
    require_valid(family);

    std::map<std::pair<ElementId, SetId>, MembershipStatus> table;
    for (const auto& m : family.memberships) {
        table[{m.element, m.set}] = m.status;
    }

    // A set with no member-indicating entry and no uncertainty flag is
    // known empty; uncertain elements are certain non-members of it.
    std::unordered_map<std::string, bool> known_empty;
    for (const auto& s : family.sets) {
        known_empty[s.id] = !s.membership_uncertain;
    }
    for (const auto& m : family.memberships) {
        if (m.status.kind != MembershipStatus::Kind::certain_non_member) {
            known_empty[m.set] = false;
        }
    }

    for (const auto& s : family.sets) {
        if (!s.membership_uncertain || family.elements.empty()) {
            continue;
        }
        bool all_non_member = true;
        for (const auto& e : family.elements) {
            auto it = table.find({e.id, s.id});
            all_non_member &= it != table.end() &&
                              it->second.kind == MembershipStatus::Kind::certain_non_member;
        }
        if (all_non_member) {
            throw ExpansionConflictError(
                "set '" + s.id + "' is declared membership-uncertain but explicit entries make "
                "every element a certain non-member; resolve the contradiction in the data");
        }
    }

    std::vector<ExpandedMembership> out;
    out.reserve(family.elements.size() * family.sets.size());
    SetFamily sorted = canonicalized(family);
    for (const auto& e : sorted.elements) {
        for (const auto& s : sorted.sets) {
            auto it = table.find({e.id, s.id});
            MembershipStatus status = MembershipStatus::certain_non_member();
            if (it != table.end()) {
                status = it->second;
            } else if (s.membership_uncertain) {
                status = MembershipStatus::uncertain();
            } else if (e.membership_uncertain && !known_empty[s.id]) {
                status = MembershipStatus::uncertain();
            }
            out.push_back({e.id, s.id, status});
        }
    }
    return out;
}

} // namespace setvis
