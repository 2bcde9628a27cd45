#include "setvis/aggregate.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "setvis/errors.hpp"

namespace setvis {

namespace {

const AttributeSchema& find_schema(const SetFamily& family, const std::string& attribute) {
    const AttributeSchema* schema = family.find_attribute(attribute);
    if (schema == nullptr) {
        throw std::invalid_argument("unknown attribute '" + attribute + "'");
    }
    return *schema;
}

const Element& find_member(const SetFamily& family, const ElementId& id) {
    const Element* element = family.find_element(id);
    if (element == nullptr) {
        throw std::invalid_argument("unknown element '" + id + "'");
    }
    return *element;
}

// Missing and absent are the same thing: no value was given.
const AttributeValue* given_value(const Element& element, const std::string& attribute) {
    auto it = element.attribute_values.find(attribute);
    if (it == element.attribute_values.end() ||
        it->second.kind == AttributeValue::Kind::missing) {
        return nullptr;
    }
    return &it->second;
}

struct Counts {
    int n_total = 0;
    int n_known = 0;
    int n_flagged = 0;
    int n_missing = 0;
};

Counts count_values(const SetFamily& family, const std::vector<ElementId>& members,
                    const std::string& attribute) {
    Counts counts;
    counts.n_total = static_cast<int>(members.size());
    for (const auto& id : members) {
        const AttributeValue* value = given_value(find_member(family, id), attribute);
        if (value == nullptr) {
            ++counts.n_missing;
        } else if (value->kind == AttributeValue::Kind::known) {
            ++counts.n_known;
        } else {
            ++counts.n_flagged; // flagged or range: given but not certain
        }
    }
    return counts;
}

} // namespace

RegionPartition enumerate_regions(const SetFamily& family) {
    if (classify(family).membership != UncertaintyClass::U0) {
        throw MembershipUncertainError(
            "cannot enumerate regions: membership is uncertain");
    }

    std::map<ElementId, std::set<SetId>> signatures;
    for (const auto& m : family.memberships) {
        if (m.status.kind == MembershipStatus::Kind::certain_member) {
            signatures[m.element].insert(m.set);
        }
    }

    RegionPartition partition;
    std::map<std::set<SetId>, std::vector<ElementId>> by_signature;
    std::vector<ElementId> ids;
    for (const auto& e : family.elements) {
        ids.push_back(e.id);
    }
    std::sort(ids.begin(), ids.end());
    for (const auto& id : ids) {
        auto it = signatures.find(id);
        if (it == signatures.end()) {
            partition.outside.push_back(id);
        } else {
            by_signature[it->second].push_back(id);
        }
    }
    for (auto& [signature, members] : by_signature) {
        partition.regions.push_back({signature, std::move(members)});
    }
    return partition;
}

CardinalityBounds cardinality(const SetFamily& family, const SetId& set) {
    if (family.find_set(set) == nullptr) {
        throw std::invalid_argument("unknown set '" + set + "'");
    }
    CardinalityBounds bounds;
    for (const auto& entry : expand_memberships(family)) {
        if (entry.set != set) {
            continue;
        }
        switch (entry.status.kind) {
        case MembershipStatus::Kind::certain_member:
            bounds.min += 1.0;
            bounds.max += 1.0;
            bounds.expected += 1.0;
            break;
        case MembershipStatus::Kind::probability:
            bounds.max += 1.0;
            bounds.expected += entry.status.p;
            break;
        case MembershipStatus::Kind::uncertain:
            bounds.max += 1.0;
            bounds.expected += 0.5; // maximum-entropy convention for U>0
            break;
        case MembershipStatus::Kind::certain_non_member:
            break;
        }
    }
    return bounds;
}

std::optional<double> aggregate_proportion(const SetFamily& family,
                                           const std::vector<ElementId>& members,
                                           const std::string& attribute,
                                           const std::string& target_level,
                                           ValueRule rule) {
    const AttributeSchema& schema = find_schema(family, attribute);
    if (schema.kind != AttributeSchema::Kind::categorical) {
        throw std::invalid_argument("attribute '" + attribute + "' is not categorical");
    }
    if (std::find(schema.levels.begin(), schema.levels.end(), target_level) ==
        schema.levels.end()) {
        throw std::invalid_argument("unknown level '" + target_level + "' for attribute '" +
                                    attribute + "'");
    }

    int hits = 0;
    int denominator = 0;
    for (const auto& id : members) {
        const AttributeValue* value = given_value(find_member(family, id), attribute);
        if (value == nullptr) {
            continue;
        }
        const bool contributes = value->kind == AttributeValue::Kind::known ||
                                 (rule == ValueRule::use_given &&
                                  value->kind == AttributeValue::Kind::flagged);
        if (!contributes) {
            continue;
        }
        ++denominator;
        hits += std::get<std::string>(value->value) == target_level ? 1 : 0;
    }
    if (denominator == 0) {
        return std::nullopt;
    }
    return static_cast<double>(hits) / denominator;
}

std::optional<double> aggregate_mean(const SetFamily& family,
                                     const std::vector<ElementId>& members,
                                     const std::string& attribute,
                                     ValueRule rule) {
    const AttributeSchema& schema = find_schema(family, attribute);
    if (schema.kind != AttributeSchema::Kind::numeric) {
        throw std::invalid_argument("attribute '" + attribute + "' is not numeric");
    }

    double sum = 0.0;
    int count = 0;
    for (const auto& id : members) {
        const AttributeValue* value = given_value(find_member(family, id), attribute);
        if (value == nullptr) {
            continue;
        }
        switch (value->kind) {
        case AttributeValue::Kind::known:
            sum += std::get<double>(value->value);
            ++count;
            break;
        case AttributeValue::Kind::flagged:
            if (rule == ValueRule::use_given) {
                sum += std::get<double>(value->value);
                ++count;
            }
            break;
        case AttributeValue::Kind::range:
            if (rule == ValueRule::use_given) {
                sum += (value->low + value->high) / 2.0;
                ++count;
            }
            break;
        case AttributeValue::Kind::missing:
            break;
        }
    }
    if (count == 0) {
        return std::nullopt;
    }
    return sum / count;
}

double certainty(const SetFamily& family, const std::vector<ElementId>& members,
                 const std::string& attribute, CertaintyRule rule) {
    find_schema(family, attribute);
    const Counts counts = count_values(family, members, attribute);
    const int denominator = rule == CertaintyRule::over_all
                                ? counts.n_total
                                : counts.n_known + counts.n_flagged;
    if (denominator == 0) {
        return 0.0;
    }
    return static_cast<double>(counts.n_known) / denominator;
}

AggregateCell aggregate_values(const SetFamily& family,
                               const std::vector<ElementId>& members,
                               const std::string& scope_label,
                               const std::string& attribute,
                               AggregateKind kind,
                               const std::string& target,
                               ValueRule value_rule,
                               CertaintyRule certainty_rule) {
    AggregateCell cell;
    cell.scope = scope_label;
    cell.value = kind == AggregateKind::proportion
                     ? aggregate_proportion(family, members, attribute, target, value_rule)
                     : aggregate_mean(family, members, attribute, value_rule);
    cell.certainty = certainty(family, members, attribute, certainty_rule);
    const Counts counts = count_values(family, members, attribute);
    cell.n_total = counts.n_total;
    cell.n_known = counts.n_known;
    cell.n_flagged = counts.n_flagged;
    cell.n_missing = counts.n_missing;
    return cell;
}

std::vector<AggregateCell> summary_table(const SetFamily& family,
                                         const std::string& attribute,
                                         AggregateKind kind,
                                         const std::string& target,
                                         ValueRule value_rule,
                                         CertaintyRule certainty_rule,
                                         AggregateScope scope) {
    const RegionPartition partition = enumerate_regions(family);
    std::vector<AggregateCell> cells;
    if (scope == AggregateScope::regions) {
        for (const auto& region : partition.regions) {
            cells.push_back(aggregate_values(family, region.members,
                                             signature_label(region.signature), attribute,
                                             kind, target, value_rule, certainty_rule));
        }
        return cells;
    }

    std::vector<SetId> set_ids;
    for (const auto& s : family.sets) {
        set_ids.push_back(s.id);
    }
    std::sort(set_ids.begin(), set_ids.end());
    for (const auto& set_id : set_ids) {
        std::vector<ElementId> members;
        for (const auto& region : partition.regions) {
            if (region.signature.count(set_id) != 0) {
                members.insert(members.end(), region.members.begin(),
                               region.members.end());
            }
        }
        std::sort(members.begin(), members.end());
        cells.push_back(aggregate_values(family, members, set_id, attribute, kind, target,
                                         value_rule, certainty_rule));
    }
    return cells;
}

std::string signature_label(const std::set<SetId>& signature) {
    std::string label = "{";
    bool first = true;
    for (const auto& id : signature) {
        if (!first) {
            label += ",";
        }
        label += id;
        first = false;
    }
    label += "}";
    return label;
}

const char* value_rule_name(ValueRule rule) {
    return rule == ValueRule::certain_only ? "certain-only" : "use-given";
}

const char* certainty_rule_name(CertaintyRule rule) {
    return rule == CertaintyRule::over_all ? "over-all" : "over-given";
}

} // namespace setvis
