#include "fixtures.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <sys/wait.h>

namespace setvis::testing {

namespace {

Element make_element(ElementId id, std::string label, bool uncertain,
                     std::map<std::string, AttributeValue> values) {
    Element e;
    e.id = std::move(id);
    e.label = std::move(label);
    e.membership_uncertain = uncertain;
    e.attribute_values = std::move(values);
    return e;
}

Membership certain(ElementId element, SetId set) {
    return {std::move(element), std::move(set), MembershipStatus::certain_member()};
}

} // namespace

SetFamily enrollment_family() {
    SetFamily f;
    f.sets = {{"B", "Biology", false},
              {"F", "French", false},
              {"H", "History", false},
              {"M", "Math", true}};
    f.attributes = {
        AttributeSchema::categorical("residency", {"domestic", "international"}),
        AttributeSchema::numeric("age", 18.0, 70.0)};
    f.elements = {
        make_element("a", "Alex", false,
                     {{"residency", AttributeValue::known(std::string("domestic"))},
                      {"age", AttributeValue::known(20.0)}}),
        make_element("b", "Ben", false,
                     {{"residency", AttributeValue::known(std::string("international"))},
                      {"age", AttributeValue::known(24.0)}}),
        make_element("c", "Chris", false,
                     {{"residency", AttributeValue::known(std::string("domestic"))},
                      {"age", AttributeValue::known(28.0)}}),
        make_element("d", "Dana", false,
                     {{"residency", AttributeValue::known(std::string("international"))},
                      {"age", AttributeValue::known(22.0)}}),
        make_element("e", "Eva", true,
                     {{"residency", AttributeValue::known(std::string("domestic"))},
                      {"age", AttributeValue::known(30.0)}}),
        make_element("f", "Frank", true,
                     {{"residency", AttributeValue::known(std::string("international"))},
                      {"age", AttributeValue::known(26.0)}})};
    f.memberships = {certain("a", "H"), certain("b", "F"), certain("b", "H"),
                     certain("c", "F"), certain("d", "H")};
    return f;
}

SetFamily five_region_family() {
    SetFamily f;
    f.sets = {{"S1", "S1", false}, {"S2", "S2", false}, {"S3", "S3", false}};
    f.attributes = {AttributeSchema::categorical("residency", {"dom", "int"})};

    struct Row {
        const char* id;
        std::vector<const char*> sets;
        int value; // 0 none, 1 known, 2 flagged
        const char* level;
    };
    const std::vector<Row> rows = {
        {"m01", {"S1"}, 1, "dom"},
        {"m02", {"S1"}, 1, "int"},
        {"m03", {"S1"}, 2, "dom"},
        {"m04", {"S1"}, 2, "dom"},
        {"m05", {"S1"}, 0, ""},
        {"m06", {"S2"}, 1, "int"},
        {"m07", {"S2"}, 2, "dom"},
        {"m08", {"S1", "S2"}, 1, "dom"},
        {"m09", {"S1", "S2"}, 2, "dom"},
        {"m10", {"S1", "S2"}, 0, ""},
        {"m11", {"S1", "S3"}, 1, "dom"},
        {"m12", {"S1", "S3"}, 1, "dom"},
        {"m13", {"S1", "S2", "S3"}, 1, "dom"},
        {"m14", {"S1", "S2", "S3"}, 1, "int"},
        {"m15", {"S1", "S2", "S3"}, 2, "dom"},
        {"m16", {"S1", "S2", "S3"}, 2, "dom"},
    };
    for (const auto& row : rows) {
        std::map<std::string, AttributeValue> values;
        if (row.value == 1) {
            values["residency"] = AttributeValue::known(std::string(row.level));
        } else if (row.value == 2) {
            values["residency"] = AttributeValue::flagged(std::string(row.level));
        } else if (row.id == std::string("m05")) {
            values["residency"] = AttributeValue::missing(); // m10 stays absent
        }
        f.elements.push_back(make_element(row.id, row.id, false, std::move(values)));
        for (const char* set : row.sets) {
            f.memberships.push_back(certain(row.id, set));
        }
    }
    return f;
}

std::vector<ExpectedCell> five_region_expected(ValueRule value_rule,
                                               CertaintyRule certainty_rule) {
    // Counts per region never depend on the rules.
    // Region data: {S1} K[dom,int] F[dom,dom] M1; {S1,S2} K[dom] F[dom] M1;
    // {S1,S2,S3} K[dom,int] F[dom,dom]; {S1,S3} K[dom,dom]; {S2} K[int] F[dom].
    const bool given = value_rule == ValueRule::use_given;
    const bool over_all = certainty_rule == CertaintyRule::over_all;
    std::vector<ExpectedCell> cells;
    cells.push_back({"{S1}", true, given ? 0.25 : 0.5, over_all ? 0.4 : 0.5, 2, 2, 1});
    cells.push_back(
        {"{S1,S2}", true, 0.0, over_all ? 1.0 / 3.0 : 0.5, 1, 1, 1});
    cells.push_back({"{S1,S2,S3}", true, given ? 0.25 : 0.5, 0.5, 2, 2, 0});
    cells.push_back({"{S1,S3}", true, 0.0, 1.0, 2, 0, 0});
    cells.push_back({"{S2}", true, given ? 0.5 : 1.0, 0.5, 1, 1, 0});
    return cells;
}

std::vector<ExpectedCell> five_region_set_expected() {
    // S1 = regions {S1},{S1,S2},{S1,S2,S3},{S1,S3}: 14 members, 7 known
    // (2 int), 5 flagged (0 int), 2 missing.  S2: 9 members, 4 known (2 int),
    // 4 flagged, 1 missing.  S3: 6 members, 4 known (1 int), 2 flagged.
    return {
        {"S1", true, 2.0 / 12.0, 7.0 / 14.0, 7, 5, 2},
        {"S2", true, 2.0 / 8.0, 4.0 / 9.0, 4, 4, 1},
        {"S3", true, 1.0 / 6.0, 4.0 / 6.0, 4, 2, 0},
    };
}

std::vector<ClassifiedFamily> classification_truth_table() {
    auto base = [](bool with_value_attr) {
        SetFamily f;
        f.sets = {{"A", "A", false}};
        f.attributes = {AttributeSchema::numeric("num", 0.0, 100.0)};
        Element x;
        x.id = "x";
        x.label = "x";
        if (with_value_attr) {
            x.attribute_values["num"] = AttributeValue::known(50.0);
        }
        f.elements = {x};
        f.memberships = {{"x", "A", MembershipStatus::certain_member()}};
        return f;
    };
    using U = UncertaintyClass;
    std::vector<ClassifiedFamily> table;

    SetFamily d1 = base(true);
    table.push_back({"all-certain", d1, U::U0, U::U0, U::U0});

    SetFamily d2 = base(true);
    d2.elements.push_back(make_element("y", "y", false,
                                       {{"num", AttributeValue::known(10.0)}}));
    d2.memberships.push_back({"y", "A", MembershipStatus::uncertain()});
    table.push_back({"uncertain-entry", d2, U::UBinary, U::UBinary, U::U0});

    SetFamily d3 = base(true);
    d3.elements.push_back(make_element("y", "y", false,
                                       {{"num", AttributeValue::known(10.0)}}));
    d3.memberships.push_back({"y", "A", MembershipStatus::probability(0.6)});
    table.push_back({"probability-entry", d3, U::UDefined, U::UDefined, U::U0});

    SetFamily d4 = base(true);
    d4.attributes[0].uncertain_everywhere = true;
    table.push_back({"attribute-flag", d4, U::U0, U::UBinary, U::UBinary});

    SetFamily d5 = base(true);
    d5.elements[0].attribute_values["num"] = AttributeValue::missing();
    table.push_back({"missing-value", d5, U::U0, U::UDefined, U::UDefined});

    SetFamily d6 = base(true);
    d6.elements[0].attribute_values["num"] = AttributeValue::missing();
    d6.elements.push_back(make_element("y", "y", false,
                                       {{"num", AttributeValue::known(10.0)}}));
    d6.memberships.push_back({"y", "A", MembershipStatus::uncertain()});
    table.push_back({"uncertain-and-missing", d6, U::UBinary, U::UDefined, U::UDefined});

    SetFamily d7 = base(true);
    d7.attributes[0].uncertain_everywhere = true;
    d7.elements.push_back(make_element("y", "y", false,
                                       {{"num", AttributeValue::known(10.0)}}));
    d7.memberships.push_back({"y", "A", MembershipStatus::probability(0.3)});
    table.push_back({"probability-and-flag", d7, U::UDefined, U::UDefined, U::UBinary});

    SetFamily d8 = base(true);
    d8.disclaimer_uncertain = true;
    d8.elements.push_back(make_element("y", "y", false,
                                       {{"num", AttributeValue::known(10.0)}}));
    d8.memberships.push_back({"y", "A", MembershipStatus::uncertain()});
    table.push_back({"uncertain-and-disclaimer", d8, U::UBinary, U::UBinary, U::UBinary});

    SetFamily d9 = base(true);
    d9.elements[0].attribute_values["num"] = AttributeValue::flagged(40.0);
    d9.elements.push_back(make_element("y", "y", false,
                                       {{"num", AttributeValue::known(10.0)}}));
    d9.memberships.push_back({"y", "A", MembershipStatus::probability(0.8)});
    table.push_back({"probability-and-flagged", d9, U::UDefined, U::UDefined, U::UDefined});

    return table;
}

namespace {

std::string pad2(int i) {
    char buffer[16];
    std::snprintf(buffer, sizeof(buffer), "%02d", i);
    return buffer;
}

} // namespace

SetFamily random_certain_family(std::mt19937& rng) {
    std::uniform_int_distribution<int> set_count(1, 4);
    std::uniform_int_distribution<int> elem_count(1, 50);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_real_distribution<double> num(0.0, 100.0);

    SetFamily f;
    const int n_sets = set_count(rng);
    const int n_elems = elem_count(rng);
    for (int i = 0; i < n_sets; ++i) {
        f.sets.push_back({"S" + std::to_string(i), "S" + std::to_string(i), false});
    }
    f.attributes = {AttributeSchema::categorical("cat", {"x", "y", "z"}),
                    AttributeSchema::numeric("num", 0.0, 100.0)};
    const std::array<const char*, 3> levels = {"x", "y", "z"};
    for (int i = 0; i < n_elems; ++i) {
        const std::string id = "e" + pad2(i);
        std::map<std::string, AttributeValue> values;
        values["cat"] = AttributeValue::known(
            std::string(levels[static_cast<size_t>(3.0 * unit(rng)) % 3]));
        values["num"] = AttributeValue::known(num(rng));
        f.elements.push_back(make_element(id, id, false, std::move(values)));
        for (int s = 0; s < n_sets; ++s) {
            if (unit(rng) < 0.4) {
                f.memberships.push_back(certain(id, "S" + std::to_string(s)));
            }
        }
    }
    return f;
}

SetFamily random_uncertain_family(std::mt19937& rng) {
    std::uniform_int_distribution<int> set_count(1, 4);
    std::uniform_int_distribution<int> elem_count(1, 40);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_real_distribution<double> prob(0.05, 0.95);

    SetFamily f;
    const int n_sets = set_count(rng);
    const int n_elems = elem_count(rng);
    for (int i = 0; i < n_sets; ++i) {
        f.sets.push_back({"S" + std::to_string(i), "S" + std::to_string(i), false});
    }
    f.attributes = {AttributeSchema::numeric("num", 0.0, 100.0)};
    std::vector<int> candidates(static_cast<size_t>(n_sets), 0);
    for (int i = 0; i < n_elems; ++i) {
        const std::string id = "e" + pad2(i);
        f.elements.push_back(make_element(
            id, id, false, {{"num", AttributeValue::known(50.0)}}));
        for (int s = 0; s < n_sets; ++s) {
            const double roll = unit(rng);
            const std::string set_id = "S" + std::to_string(s);
            if (roll < 0.3) {
                f.memberships.push_back(certain(id, set_id));
            } else if (roll < 0.4) {
                f.memberships.push_back(
                    {id, set_id, MembershipStatus::certain_non_member()});
            } else if (roll < 0.55 && candidates[static_cast<size_t>(s)] < 12) {
                f.memberships.push_back({id, set_id, MembershipStatus::uncertain()});
                ++candidates[static_cast<size_t>(s)];
            } else if (roll < 0.75 && candidates[static_cast<size_t>(s)] < 12) {
                f.memberships.push_back(
                    {id, set_id, MembershipStatus::probability(prob(rng))});
                ++candidates[static_cast<size_t>(s)];
            }
        }
    }
    return f;
}

SetFamily random_full_family(std::mt19937& rng) {
    std::uniform_int_distribution<int> set_count(1, 4);
    std::uniform_int_distribution<int> elem_count(1, 30);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_real_distribution<double> prob(0.05, 0.95);
    std::uniform_real_distribution<double> num(0.0, 100.0);

    SetFamily f;
    f.disclaimer_uncertain = unit(rng) < 0.2;
    const int n_sets = set_count(rng);
    const int n_elems = elem_count(rng);
    std::vector<bool> set_uncertain(static_cast<size_t>(n_sets), false);
    for (int i = 0; i < n_sets; ++i) {
        set_uncertain[static_cast<size_t>(i)] = unit(rng) < 0.15;
        f.sets.push_back({"S" + std::to_string(i), "Set " + std::to_string(i),
                          set_uncertain[static_cast<size_t>(i)]});
    }
    f.attributes = {AttributeSchema::categorical("cat", {"x", "y", "z"}),
                    AttributeSchema::numeric("num", 0.0, 100.0)};
    f.attributes[1].uncertain_everywhere = unit(rng) < 0.2;
    const std::array<const char*, 3> levels = {"x", "y", "z"};

    for (int i = 0; i < n_elems; ++i) {
        const std::string id = "e" + pad2(i);
        std::map<std::string, AttributeValue> values;
        const double cat_roll = unit(rng);
        if (cat_roll < 0.5) {
            values["cat"] = AttributeValue::known(
                std::string(levels[static_cast<size_t>(3.0 * unit(rng)) % 3]));
        } else if (cat_roll < 0.7) {
            values["cat"] = AttributeValue::flagged(
                std::string(levels[static_cast<size_t>(3.0 * unit(rng)) % 3]));
        } else if (cat_roll < 0.85) {
            values["cat"] = AttributeValue::missing();
        } // else absent
        const double num_roll = unit(rng);
        if (num_roll < 0.4) {
            values["num"] = AttributeValue::known(num(rng));
        } else if (num_roll < 0.6) {
            values["num"] = AttributeValue::flagged(num(rng));
        } else if (num_roll < 0.8) {
            const double a = num(rng);
            const double b = num(rng);
            values["num"] = AttributeValue::range(std::min(a, b), std::max(a, b));
        } else if (num_roll < 0.9) {
            values["num"] = AttributeValue::missing();
        }
        f.elements.push_back(
            make_element(id, "Element " + std::to_string(i), unit(rng) < 0.15,
                         std::move(values)));
        for (int s = 0; s < n_sets; ++s) {
            const std::string set_id = "S" + std::to_string(s);
            const double roll = unit(rng);
            if (set_uncertain[static_cast<size_t>(s)]) {
                // Only uncertain or non-member entries stay valid here, and a
                // full non-member roster would contradict the set flag.
                if (roll < 0.15) {
                    f.memberships.push_back({id, set_id, MembershipStatus::uncertain()});
                }
                continue;
            }
            if (roll < 0.25) {
                f.memberships.push_back(certain(id, set_id));
            } else if (roll < 0.35) {
                f.memberships.push_back(
                    {id, set_id, MembershipStatus::certain_non_member()});
            } else if (roll < 0.45) {
                f.memberships.push_back({id, set_id, MembershipStatus::uncertain()});
            } else if (roll < 0.6) {
                f.memberships.push_back(
                    {id, set_id, MembershipStatus::probability(prob(rng))});
            }
        }
    }
    return f;
}

std::vector<std::pair<std::string, SetFamily>> roundtrip_corpus() {
    std::vector<std::pair<std::string, SetFamily>> corpus;
    corpus.emplace_back("enrollment", enrollment_family());
    corpus.emplace_back("five-region", five_region_family());
    for (const auto& entry : classification_truth_table()) {
        corpus.emplace_back("truth-" + entry.name, entry.family);
    }
    std::mt19937 rng(424242);
    for (int i = 0; i < 12; ++i) {
        corpus.emplace_back("generated-" + std::to_string(i), random_full_family(rng));
    }
    return corpus;
}

std::map<ElementId, std::set<SetId>> oracle_signatures(const SetFamily& family) {
    std::map<ElementId, std::set<SetId>> signatures;
    for (const auto& e : family.elements) {
        signatures[e.id]; // every element gets a row, possibly empty
    }
    for (const auto& m : family.memberships) {
        if (m.status.kind == MembershipStatus::Kind::certain_member) {
            signatures[m.element].insert(m.set);
        }
    }
    return signatures;
}

CardinalityBounds oracle_cardinality(const SetFamily& family, const SetId& set) {
    int certain_count = 0;
    std::vector<double> candidate_p;
    for (const auto& entry : expand_memberships(family)) {
        if (entry.set != set) {
            continue;
        }
        if (entry.status.kind == MembershipStatus::Kind::certain_member) {
            ++certain_count;
        } else if (entry.status.kind == MembershipStatus::Kind::probability) {
            candidate_p.push_back(entry.status.p);
        } else if (entry.status.kind == MembershipStatus::Kind::uncertain) {
            candidate_p.push_back(0.5);
        }
    }
    const size_t k = candidate_p.size();
    if (k > 20) {
        throw std::runtime_error("oracle_cardinality: too many candidates");
    }
    double expected = 0.0;
    for (std::uint32_t mask = 0; mask < (1u << k); ++mask) {
        double weight = 1.0;
        int inside = 0;
        for (size_t i = 0; i < k; ++i) {
            if (mask & (1u << i)) {
                weight *= candidate_p[i];
                ++inside;
            } else {
                weight *= 1.0 - candidate_p[i];
            }
        }
        expected += weight * (certain_count + inside);
    }
    CardinalityBounds bounds;
    bounds.min = certain_count;
    bounds.max = certain_count + static_cast<double>(k);
    bounds.expected = expected;
    return bounds;
}

namespace {

// Consumes one tag starting at doc[pos] == '<'.  Returns false on malformed
// markup.  Fills element when the tag opens or self-closes an element.
bool consume_tag(const std::string& doc, size_t& pos, std::string& tag_name,
                 std::map<std::string, std::string>& attrs, bool& is_close,
                 bool& is_self_close, bool& is_decl, std::string* error) {
    auto fail = [&](const std::string& what) {
        if (error != nullptr) {
            *error = what + " near byte " + std::to_string(pos);
        }
        return false;
    };
    tag_name.clear();
    attrs.clear();
    is_close = is_self_close = is_decl = false;
    size_t i = pos + 1;
    if (i < doc.size() && doc[i] == '?') {
        const size_t end = doc.find("?>", i);
        if (end == std::string::npos) {
            return fail("unterminated declaration");
        }
        pos = end + 2;
        is_decl = true;
        return true;
    }
    if (i < doc.size() && doc[i] == '/') {
        is_close = true;
        ++i;
    }
    while (i < doc.size() &&
           (std::isalnum(static_cast<unsigned char>(doc[i])) || doc[i] == '-')) {
        tag_name += doc[i++];
    }
    if (tag_name.empty()) {
        return fail("empty tag name");
    }
    while (i < doc.size()) {
        while (i < doc.size() && std::isspace(static_cast<unsigned char>(doc[i]))) {
            ++i;
        }
        if (i >= doc.size()) {
            return fail("unterminated tag");
        }
        if (doc[i] == '/') {
            if (i + 1 >= doc.size() || doc[i + 1] != '>') {
                return fail("stray slash");
            }
            is_self_close = true;
            pos = i + 2;
            return true;
        }
        if (doc[i] == '>') {
            pos = i + 1;
            return true;
        }
        std::string name;
        while (i < doc.size() &&
               (std::isalnum(static_cast<unsigned char>(doc[i])) || doc[i] == '-' ||
                doc[i] == ':')) {
            name += doc[i++];
        }
        if (name.empty() || i >= doc.size() || doc[i] != '=') {
            return fail("malformed attribute");
        }
        ++i;
        if (i >= doc.size() || doc[i] != '"') {
            return fail("attribute value must be quoted");
        }
        ++i;
        std::string value;
        while (i < doc.size() && doc[i] != '"') {
            if (doc[i] == '<') {
                return fail("raw < in attribute value");
            }
            value += doc[i++];
        }
        if (i >= doc.size()) {
            return fail("unterminated attribute value");
        }
        ++i;
        attrs[name] = value;
    }
    return fail("unterminated tag");
}

bool text_ok(const std::string& text) {
    for (size_t i = 0; i < text.size(); ++i) {
        if (text[i] == '<' || text[i] == '>') {
            return false;
        }
        if (text[i] == '&') {
            static const std::array<const char*, 5> entities = {
                "&amp;", "&lt;", "&gt;", "&quot;", "&apos;"};
            bool matched = false;
            for (const char* entity : entities) {
                const size_t len = std::string(entity).size();
                if (text.compare(i, len, entity) == 0) {
                    matched = true;
                    break;
                }
            }
            if (!matched) {
                return false;
            }
        }
    }
    return true;
}

} // namespace

bool xml_well_formed(const std::string& doc, std::string* error) {
    std::vector<std::string> stack;
    size_t pos = 0;
    bool seen_root = false;
    while (pos < doc.size()) {
        if (doc[pos] != '<') {
            const size_t next = doc.find('<', pos);
            const std::string text =
                doc.substr(pos, next == std::string::npos ? std::string::npos
                                                          : next - pos);
            if (!text_ok(text)) {
                if (error != nullptr) {
                    *error = "invalid character data near byte " + std::to_string(pos);
                }
                return false;
            }
            if (!stack.empty()) {
                // character data inside elements is fine
            } else {
                for (char c : text) {
                    if (!std::isspace(static_cast<unsigned char>(c))) {
                        if (error != nullptr) {
                            *error = "content outside root element";
                        }
                        return false;
                    }
                }
            }
            if (next == std::string::npos) {
                break;
            }
            pos = next;
            continue;
        }
        std::string tag;
        std::map<std::string, std::string> attrs;
        bool is_close = false;
        bool is_self = false;
        bool is_decl = false;
        if (!consume_tag(doc, pos, tag, attrs, is_close, is_self, is_decl, error)) {
            return false;
        }
        if (is_decl) {
            continue;
        }
        if (is_close) {
            if (stack.empty() || stack.back() != tag) {
                if (error != nullptr) {
                    *error = "mismatched closing tag </" + tag + ">";
                }
                return false;
            }
            stack.pop_back();
            continue;
        }
        if (stack.empty() && seen_root) {
            if (error != nullptr) {
                *error = "multiple root elements";
            }
            return false;
        }
        seen_root = true;
        if (!is_self) {
            stack.push_back(tag);
        }
    }
    if (!stack.empty()) {
        if (error != nullptr) {
            *error = "unclosed element <" + stack.back() + ">";
        }
        return false;
    }
    return seen_root;
}

std::vector<SvgElement> parse_svg_elements(const std::string& doc) {
    std::vector<SvgElement> elements;
    size_t pos = 0;
    int legend_depth = 0;
    std::vector<bool> legend_stack;
    while (pos < doc.size()) {
        if (doc[pos] != '<') {
            ++pos;
            continue;
        }
        std::string tag;
        std::map<std::string, std::string> attrs;
        bool is_close = false;
        bool is_self = false;
        bool is_decl = false;
        if (!consume_tag(doc, pos, tag, attrs, is_close, is_self, is_decl, nullptr)) {
            throw std::runtime_error("parse_svg_elements: malformed document");
        }
        if (is_decl) {
            continue;
        }
        if (is_close) {
            if (!legend_stack.empty()) {
                if (legend_stack.back()) {
                    --legend_depth;
                }
                legend_stack.pop_back();
            }
            continue;
        }
        SvgElement element;
        element.tag = tag;
        element.attrs = attrs;
        element.in_legend = legend_depth > 0;
        auto role = attrs.find("data-role");
        const bool legend_marker = role != attrs.end() && role->second == "legend";
        if (legend_marker) {
            element.in_legend = true;
        }
        elements.push_back(std::move(element));
        if (!is_self) {
            const bool enters_legend = legend_marker;
            legend_stack.push_back(enters_legend);
            if (enters_legend) {
                ++legend_depth;
            }
        }
    }
    return elements;
}

bool decimals_within_three(const std::string& doc) {
    for (size_t i = 0; i + 1 < doc.size(); ++i) {
        if (doc[i] != '.') {
            continue;
        }
        size_t digits = 0;
        while (i + 1 + digits < doc.size() &&
               std::isdigit(static_cast<unsigned char>(doc[i + 1 + digits]))) {
            ++digits;
        }
        if (digits > 3) {
            return false;
        }
    }
    return true;
}

size_t count_role(const std::string& doc, const std::string& role) {
    const std::string needle = "data-role=\"" + role + "\"";
    size_t count = 0;
    size_t pos = doc.find(needle);
    while (pos != std::string::npos) {
        ++count;
        pos = doc.find(needle, pos + needle.size());
    }
    return count;
}

RunResult run_command(const std::string& command) {
    TempDir scratch;
    const std::string out_path = scratch.file("out");
    const std::string err_path = scratch.file("err");
    const std::string full =
        command + " >" + out_path + " 2>" + err_path;
    const int status = std::system(full.c_str());
    RunResult result;
    if (status == -1) {
        return result;
    }
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    auto slurp = [](const std::string& path) {
        std::ifstream in(path, std::ios::binary);
        std::ostringstream buffer;
        buffer << in.rdbuf();
        return buffer.str();
    };
    result.out = slurp(out_path);
    result.err = slurp(err_path);
    return result;
}

TempDir::TempDir() {
    char pattern[] = "/tmp/setvis-test-XXXXXX";
    char* dir = mkdtemp(pattern);
    if (dir == nullptr) {
        throw std::runtime_error("mkdtemp failed");
    }
    path_ = dir;
}

TempDir::~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot write " + path);
    }
    out << content;
}

} // namespace setvis::testing
