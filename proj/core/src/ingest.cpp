#include "setvis/ingest.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace setvis {

namespace {

using nlohmann::json;

// Tracks the JSON path of the node being read so errors can locate it.
struct Cursor {
    std::string path;
    ParseMode mode;
    std::vector<std::string>* warnings;

    Cursor at(const std::string& key) const { return {path + "/" + key, mode, warnings}; }
    Cursor at(size_t index) const {
        return {path + "/" + std::to_string(index), mode, warnings};
    }

    [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, path); }

    void check_keys(const json& obj, std::initializer_list<const char*> allowed) const {
        for (auto it = obj.begin(); it != obj.end(); ++it) {
            bool ok = false;
            for (const char* key : allowed) {
                ok |= it.key() == key;
            }
            if (ok) {
                continue;
            }
            if (mode == ParseMode::strict) {
                fail("unknown key '" + it.key() + "'");
            }
            warnings->push_back("ignored unknown key '" + it.key() + "' at " + path);
        }
    }

    const json& require(const json& obj, const char* key) const {
        auto it = obj.find(key);
        if (it == obj.end()) {
            fail(std::string("missing required key '") + key + "'");
        }
        return *it;
    }

    json expect_object(const json& node) const {
        if (!node.is_object()) {
            fail("expected an object");
        }
        return node;
    }

    std::string read_string(const json& node) const {
        if (!node.is_string()) {
            fail("expected a string");
        }
        return node.get<std::string>();
    }

    double read_number(const json& node) const {
        if (!node.is_number()) {
            fail("expected a number");
        }
        return node.get<double>();
    }

    bool read_bool(const json& node) const {
        if (!node.is_boolean()) {
            fail("expected a boolean");
        }
        return node.get<bool>();
    }
};

ScalarValue read_scalar(const json& node, const Cursor& c) {
    if (node.is_number()) {
        return node.get<double>();
    }
    if (node.is_string()) {
        return node.get<std::string>();
    }
    c.fail("value must be a number or a string");
}

AttributeValue read_attribute_value(const json& node, const Cursor& c) {
    c.expect_object(node);
    const std::string kind = c.at("kind").read_string(c.require(node, "kind"));
    if (kind == "known") {
        c.check_keys(node, {"kind", "value"});
        return AttributeValue::known(read_scalar(c.require(node, "value"), c.at("value")));
    }
    if (kind == "missing") {
        c.check_keys(node, {"kind"});
        return AttributeValue::missing();
    }
    if (kind == "flagged") {
        c.check_keys(node, {"kind", "value"});
        return AttributeValue::flagged(read_scalar(c.require(node, "value"), c.at("value")));
    }
    if (kind == "range") {
        c.check_keys(node, {"kind", "low", "high"});
        return AttributeValue::range(c.at("low").read_number(c.require(node, "low")),
                                     c.at("high").read_number(c.require(node, "high")));
    }
    c.at("kind").fail("unknown value kind '" + kind + "'");
}

MembershipStatus read_status(const json& entry, const Cursor& c) {
    const std::string status = c.at("status").read_string(c.require(entry, "status"));
    const bool has_p = entry.contains("p");
    if (status == "probability") {
        if (!has_p) {
            c.fail("status 'probability' requires 'p'");
        }
        return MembershipStatus::probability(c.at("p").read_number(entry.at("p")));
    }
    if (has_p) {
        c.at("p").fail("'p' is only allowed with status 'probability'");
    }
    if (status == "certain") {
        return MembershipStatus::certain_member();
    }
    if (status == "non-member") {
        return MembershipStatus::certain_non_member();
    }
    if (status == "uncertain") {
        return MembershipStatus::uncertain();
    }
    c.at("status").fail("unknown status '" + status + "'");
}

SetFamily read_family(const json& doc, const Cursor& root) {
    root.expect_object(doc);
    root.check_keys(doc, {"sets", "elements", "attributes", "memberships",
                          "disclaimer_uncertain"});

    SetFamily family;
    if (doc.contains("disclaimer_uncertain")) {
        family.disclaimer_uncertain =
            root.at("disclaimer_uncertain").read_bool(doc.at("disclaimer_uncertain"));
    }

    const json& sets = root.require(doc, "sets");
    if (!sets.is_array()) {
        root.at("sets").fail("expected an array");
    }
    for (size_t i = 0; i < sets.size(); ++i) {
        Cursor c = root.at("sets").at(i);
        c.expect_object(sets[i]);
        c.check_keys(sets[i], {"id", "label", "membership_uncertain"});
        SetDef s;
        s.id = c.at("id").read_string(c.require(sets[i], "id"));
        s.label = sets[i].contains("label") ? c.at("label").read_string(sets[i].at("label"))
                                           : s.id;
        if (sets[i].contains("membership_uncertain")) {
            s.membership_uncertain =
                c.at("membership_uncertain").read_bool(sets[i].at("membership_uncertain"));
        }
        family.sets.push_back(std::move(s));
    }

    const json& attributes = root.require(doc, "attributes");
    if (!attributes.is_array()) {
        root.at("attributes").fail("expected an array");
    }
    for (size_t i = 0; i < attributes.size(); ++i) {
        Cursor c = root.at("attributes").at(i);
        const json& node = attributes[i];
        c.expect_object(node);
        AttributeSchema a;
        a.name = c.at("name").read_string(c.require(node, "name"));
        const std::string kind = c.at("kind").read_string(c.require(node, "kind"));
        if (kind == "numeric") {
            c.check_keys(node, {"name", "kind", "min", "max", "uncertain_everywhere"});
            a.kind = AttributeSchema::Kind::numeric;
            a.domain_min = c.at("min").read_number(c.require(node, "min"));
            a.domain_max = c.at("max").read_number(c.require(node, "max"));
        } else if (kind == "categorical") {
            c.check_keys(node, {"name", "kind", "levels", "uncertain_everywhere"});
            a.kind = AttributeSchema::Kind::categorical;
            const json& levels = c.require(node, "levels");
            if (!levels.is_array()) {
                c.at("levels").fail("expected an array");
            }
            for (size_t k = 0; k < levels.size(); ++k) {
                a.levels.push_back(c.at("levels").at(k).read_string(levels[k]));
            }
        } else {
            c.at("kind").fail("unknown attribute kind '" + kind + "'");
        }
        if (node.contains("uncertain_everywhere")) {
            a.uncertain_everywhere =
                c.at("uncertain_everywhere").read_bool(node.at("uncertain_everywhere"));
        }
        family.attributes.push_back(std::move(a));
    }

    const json& elements = root.require(doc, "elements");
    if (!elements.is_array()) {
        root.at("elements").fail("expected an array");
    }
    for (size_t i = 0; i < elements.size(); ++i) {
        Cursor c = root.at("elements").at(i);
        const json& node = elements[i];
        c.expect_object(node);
        c.check_keys(node, {"id", "label", "membership_uncertain", "values"});
        Element e;
        e.id = c.at("id").read_string(c.require(node, "id"));
        e.label = node.contains("label") ? c.at("label").read_string(node.at("label")) : e.id;
        if (node.contains("membership_uncertain")) {
            e.membership_uncertain =
                c.at("membership_uncertain").read_bool(node.at("membership_uncertain"));
        }
        if (node.contains("values")) {
            const json& values = node.at("values");
            Cursor vc = c.at("values");
            vc.expect_object(values);
            for (auto it = values.begin(); it != values.end(); ++it) {
                e.attribute_values[it.key()] = read_attribute_value(*it, vc.at(it.key()));
            }
        }
        family.elements.push_back(std::move(e));
    }

    const json& memberships = root.require(doc, "memberships");
    if (!memberships.is_array()) {
        root.at("memberships").fail("expected an array");
    }
    for (size_t i = 0; i < memberships.size(); ++i) {
        Cursor c = root.at("memberships").at(i);
        const json& node = memberships[i];
        c.expect_object(node);
        c.check_keys(node, {"element", "set", "status", "p"});
        Membership m;
        m.element = c.at("element").read_string(c.require(node, "element"));
        m.set = c.at("set").read_string(c.require(node, "set"));
        m.status = read_status(node, c);
        family.memberships.push_back(std::move(m));
    }

    return family;
}

json scalar_to_json(const ScalarValue& v) {
    if (std::holds_alternative<double>(v)) {
        return std::get<double>(v);
    }
    return std::get<std::string>(v);
}

json value_to_json(const AttributeValue& v) {
    json node;
    switch (v.kind) {
    case AttributeValue::Kind::known:
        node["kind"] = "known";
        node["value"] = scalar_to_json(v.value);
        break;
    case AttributeValue::Kind::missing:
        node["kind"] = "missing";
        break;
    case AttributeValue::Kind::flagged:
        node["kind"] = "flagged";
        node["value"] = scalar_to_json(v.value);
        break;
    case AttributeValue::Kind::range:
        node["kind"] = "range";
        node["low"] = v.low;
        node["high"] = v.high;
        break;
    }
    return node;
}

} // namespace

ParseResult parse_document(const std::string& document, ParseMode mode) {
    ParseResult result;
    json doc;
    try {
        doc = json::parse(document);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("malformed JSON: ") + e.what(),
                         "byte " + std::to_string(e.byte));
    }
    Cursor root{"", mode, &result.warnings};
    result.family = read_family(doc, root);
    return result;
}

ParseResult parse(const std::string& document, ParseMode mode) {
    ParseResult result = parse_document(document, mode);
    require_valid(result.family);
    return result;
}

std::string serialize(const SetFamily& family) {
    const SetFamily f = canonicalized(family);
    json doc;
    doc["disclaimer_uncertain"] = f.disclaimer_uncertain;

    doc["sets"] = json::array();
    for (const auto& s : f.sets) {
        doc["sets"].push_back(
            {{"id", s.id}, {"label", s.label}, {"membership_uncertain", s.membership_uncertain}});
    }

    doc["attributes"] = json::array();
    for (const auto& a : f.attributes) {
        json node;
        node["name"] = a.name;
        node["uncertain_everywhere"] = a.uncertain_everywhere;
        if (a.kind == AttributeSchema::Kind::numeric) {
            node["kind"] = "numeric";
            node["min"] = a.domain_min;
            node["max"] = a.domain_max;
        } else {
            node["kind"] = "categorical";
            node["levels"] = a.levels;
        }
        doc["attributes"].push_back(std::move(node));
    }

    doc["elements"] = json::array();
    for (const auto& e : f.elements) {
        json node;
        node["id"] = e.id;
        node["label"] = e.label;
        node["membership_uncertain"] = e.membership_uncertain;
        node["values"] = json::object();
        for (const auto& [name, value] : e.attribute_values) {
            node["values"][name] = value_to_json(value);
        }
        doc["elements"].push_back(std::move(node));
    }

    doc["memberships"] = json::array();
    for (const auto& m : f.memberships) {
        json node;
        node["element"] = m.element;
        node["set"] = m.set;
        switch (m.status.kind) {
        case MembershipStatus::Kind::certain_member: node["status"] = "certain"; break;
        case MembershipStatus::Kind::certain_non_member: node["status"] = "non-member"; break;
        case MembershipStatus::Kind::uncertain: node["status"] = "uncertain"; break;
        case MembershipStatus::Kind::probability:
            node["status"] = "probability";
            node["p"] = m.status.p;
            break;
        }
        doc["memberships"].push_back(std::move(node));
    }

    return doc.dump(2) + "\n";
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ParseError("cannot open file '" + path + "'", "");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

Theme parse_theme(const std::string& document, ParseMode mode) {
    json doc;
    try {
        doc = json::parse(document);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("malformed theme JSON: ") + e.what(),
                         "byte " + std::to_string(e.byte));
    }
    std::vector<std::string> warnings;
    Cursor root{"", mode, &warnings};
    root.expect_object(doc);
    root.check_keys(doc, {"line_width_min", "line_width_max", "lightness_dark",
                          "lightness_light", "cell_size_min", "dash_period", "gray_known",
                          "gray_range_known", "gray_threshold_known", "gray_unknown",
                          "hatch_angle", "hatch_spacing", "hatch_lightness", "fan_length",
                          "fan_spread", "fan_sides", "line_encode_width",
                          "line_encode_lightness", "cell_encode_size",
                          "cell_encode_lightness"});

    Theme theme;
    auto number = [&](const char* key, double& target) {
        if (doc.contains(key)) {
            target = root.at(key).read_number(doc.at(key));
        }
    };
    auto boolean = [&](const char* key, bool& target) {
        if (doc.contains(key)) {
            target = root.at(key).read_bool(doc.at(key));
        }
    };
    number("line_width_min", theme.line_width_min);
    number("line_width_max", theme.line_width_max);
    number("lightness_dark", theme.lightness_dark);
    number("lightness_light", theme.lightness_light);
    number("cell_size_min", theme.cell_size_min);
    number("dash_period", theme.dash_period);
    number("gray_known", theme.gray_known);
    number("gray_range_known", theme.gray_range_known);
    number("gray_threshold_known", theme.gray_threshold_known);
    number("gray_unknown", theme.gray_unknown);
    number("hatch_angle", theme.hatch_angle);
    number("hatch_spacing", theme.hatch_spacing);
    number("hatch_lightness", theme.hatch_lightness);
    number("fan_length", theme.fan_length);
    number("fan_spread", theme.fan_spread);
    boolean("line_encode_width", theme.line_encode_width);
    boolean("line_encode_lightness", theme.line_encode_lightness);
    boolean("cell_encode_size", theme.cell_encode_size);
    boolean("cell_encode_lightness", theme.cell_encode_lightness);
    if (doc.contains("fan_sides")) {
        const std::string sides = root.at("fan_sides").read_string(doc.at("fan_sides"));
        if (sides == "elements") {
            theme.fan_sides = FanSides::elements;
        } else if (sides == "sets") {
            theme.fan_sides = FanSides::sets;
        } else if (sides == "both") {
            theme.fan_sides = FanSides::both;
        } else {
            root.at("fan_sides").fail("unknown fan_sides '" + sides + "'");
        }
    }
    check_theme(theme);
    return theme;
}

} // namespace setvis
