// Exception types shared across the library.

#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace setvis {

// Base class for all library errors that stem from the data rather than
// from caller bugs (those use std::invalid_argument / std::logic_error).
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed document: syntax or schema shape. `context` is a JSON-path-like
// locator of the offending node ("" when unknown, e.g. syntax errors).
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::string context)
        : Error(context.empty() ? what : what + " (at " + context + ")"),
          context_(std::move(context)) {}
    const std::string& context() const { return context_; }

private:
    std::string context_;
};

// A well-formed document whose family breaks model invariants. Carries the
// violation summaries so callers can report all of them, not just the first.
class ValidationError : public Error {
public:
    ValidationError(const std::string& what, std::vector<std::string> violations)
        : Error(what), violations_(std::move(violations)) {}
    const std::vector<std::string>& violations() const { return violations_; }

private:
    std::vector<std::string> violations_;
};

// Membership expansion contradiction, e.g. a set declared wholly uncertain
// whose explicit entries mark every element a certain non-member.
class ExpansionConflictError : public Error {
public:
    explicit ExpansionConflictError(const std::string& what) : Error(what) {}
};

// Aggregation over a family whose membership facet is not certain.
class MembershipUncertainError : public Error {
public:
    explicit MembershipUncertainError(const std::string& what) : Error(what) {}
};

// Euler layout beyond the fixed template limit.
class UnsupportedSetCountError : public Error {
public:
    explicit UnsupportedSetCountError(const std::string& what) : Error(what) {}
};

} // namespace setvis
