// Parsing and canonical serialization of set-family datasets (UTF-8 JSON),
// plus theme-file loading.

#pragma once

#include <string>
#include <vector>

#include "setvis/encode.hpp"
#include "setvis/model.hpp"

namespace setvis {

enum class ParseMode { strict, lenient };

struct ParseResult {
    SetFamily family;
    std::vector<std::string> warnings; // lenient-mode findings, empty in strict mode
};

// Shape-level parse: syntax plus schema structure. Does not run validate();
// the returned family may still break model invariants. Throws ParseError.
ParseResult parse_document(const std::string& document, ParseMode mode = ParseMode::strict);

// Full parse: parse_document followed by require_valid. Throws ParseError
// or ValidationError.
ParseResult parse(const std::string& document, ParseMode mode = ParseMode::strict);

// Canonical form: object keys sorted, sets/elements by id, attributes by
// name, memberships by (element, set), all defaults written out. Equal
// families serialize to identical bytes regardless of input list order.
std::string serialize(const SetFamily& family);

// Reads a whole file; throws ParseError when it cannot be opened.
std::string read_file(const std::string& path);

// Theme document: a JSON object overriding Theme fields, all keys optional.
Theme parse_theme(const std::string& document, ParseMode mode = ParseMode::strict);

} // namespace setvis
