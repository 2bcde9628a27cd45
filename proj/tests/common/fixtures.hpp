// Shared datasets, hand-derived oracles, and output inspection helpers.
// Expected values here were computed by hand before the implementation and
// must not be regenerated from library output.

#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "setvis/aggregate.hpp"
#include "setvis/model.hpp"

namespace setvis::testing {

// Toy course database: four sets (one empty, one wholly uncertain), six
// elements (two wholly uncertain), five certain memberships, two fully
// known attributes.
SetFamily enrollment_family();

// Three sets, sixteen elements, all memberships certain, categorical
// attribute "residency" with levels {dom, int}; regions {S1}, {S1,S2},
// {S1,S2,S3}, {S1,S3}, {S2} carry a fixed mix of known/flagged/missing.
SetFamily five_region_family();

// Hand-computed aggregate expectations for five_region_family.
struct ExpectedCell {
    std::string scope;
    bool has_value;
    double value;      // exact rational, encoded as double
    double certainty;
    int n_known;
    int n_flagged;
    int n_missing;
};

// Region rows in signature order for one rule pairing.
std::vector<ExpectedCell> five_region_expected(ValueRule value_rule,
                                               CertaintyRule certainty_rule);
// Whole-set rows (S1, S2, S3) under UseGiven + OverAll.
std::vector<ExpectedCell> five_region_set_expected();

// Classification truth table: nine families, one per reachable class
// combination, with their intended facet assignments.
struct ClassifiedFamily {
    std::string name;
    SetFamily family;
    UncertaintyClass membership;
    UncertaintyClass set_attributes;
    UncertaintyClass element_attributes;
};
std::vector<ClassifiedFamily> classification_truth_table();

// Random generators (fixed seeds at the call sites keep runs reproducible).
SetFamily random_certain_family(std::mt19937& rng);   // certain membership, Known values
SetFamily random_uncertain_family(std::mt19937& rng); // <= 12 uncertain candidates per set
SetFamily random_full_family(std::mt19937& rng);      // every status and value kind

// Round-trip corpus: named families covering all value kinds and statuses.
std::vector<std::pair<std::string, SetFamily>> roundtrip_corpus();

// Independent oracles.
// Brute force: certain-membership signature per element.
std::map<ElementId, std::set<SetId>> oracle_signatures(const SetFamily& family);
// Exhaustive enumeration over all membership outcomes of one set.
CardinalityBounds oracle_cardinality(const SetFamily& family, const SetId& set);

// SVG output inspection.
struct SvgElement {
    std::string tag;
    std::map<std::string, std::string> attrs;
    bool in_legend = false;
};
// Parses the emitted subset of XML; fails the check on malformed markup.
bool xml_well_formed(const std::string& doc, std::string* error = nullptr);
std::vector<SvgElement> parse_svg_elements(const std::string& doc);
// True when no number in the document has more than three decimals.
bool decimals_within_three(const std::string& doc);
size_t count_role(const std::string& doc, const std::string& role);

// Process runner for CLI tests.
struct RunResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};
RunResult run_command(const std::string& command);

// Scratch directory removed on destruction.
class TempDir {
public:
    TempDir();
    ~TempDir();
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;
    const std::string& path() const { return path_; }
    std::string file(const std::string& name) const { return path_ + "/" + name; }

private:
    std::string path_;
};

void write_file(const std::string& path, const std::string& content);

} // namespace setvis::testing
