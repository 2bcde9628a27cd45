#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "setvis/aggregate.hpp"
#include "setvis/errors.hpp"
#include "setvis/ingest.hpp"
#include "setvis/layout.hpp"
#include "setvis/model.hpp"
#include "setvis/numfmt.hpp"
#include "setvis/render.hpp"

namespace {

using namespace setvis;

void print_warnings(const std::vector<std::string>& warnings) {
    for (const auto& w : warnings) {
        std::cerr << "warning: " << w << "\n";
    }
}

SetFamily load_family(const std::string& path) {
    ParseResult result = parse(read_file(path), ParseMode::strict);
    print_warnings(result.warnings);
    return std::move(result.family);
}

Theme load_theme(const std::string& path) {
    if (path.empty()) {
        return {};
    }
    return parse_theme(read_file(path), ParseMode::strict);
}

int run_validate(const std::string& path) {
    ParseResult result = parse_document(read_file(path), ParseMode::strict);
    print_warnings(result.warnings);
    const std::vector<Violation> violations = validate(result.family);
    if (violations.empty()) {
        std::cout << "valid\n";
        return 0;
    }
    for (const auto& v : violations) {
        std::cout << violation_code_name(v.code) << "\t" << v.subject << "\t" << v.message
                  << "\n";
    }
    return 1;
}

int run_classify(const std::string& path) {
    const SetFamily family = load_family(path);
    const FacetClassification facets = classify(family);
    auto line = [](const char* facet, UncertaintyClass cls) {
        std::cout << facet << ": " << uncertainty_symbol(cls) << " ("
                  << uncertainty_name(cls) << ")\n";
    };
    line("membership", facets.membership);
    line("set attributes", facets.set_attributes);
    line("element attributes", facets.element_attributes);
    for (const auto& note : facets.notes) {
        std::cout << "note: " << note << "\n";
    }
    return 0;
}

struct AggregateFlags {
    std::string attribute;
    std::string kind = "proportion";
    std::string target;
    std::string value_rule = "use-given";
    std::string certainty_rule = "over-all";
};

AggregateSpec to_spec(const AggregateFlags& flags) {
    AggregateSpec spec;
    spec.attribute = flags.attribute;
    spec.kind =
        flags.kind == "mean" ? AggregateKind::mean : AggregateKind::proportion;
    spec.target = flags.target;
    spec.value_rule = flags.value_rule == "certain-only" ? ValueRule::certain_only
                                                         : ValueRule::use_given;
    spec.certainty_rule = flags.certainty_rule == "over-given"
                              ? CertaintyRule::over_given
                              : CertaintyRule::over_all;
    return spec;
}

int run_aggregate(const std::string& path, const AggregateFlags& flags,
                  const std::string& scope) {
    const SetFamily family = load_family(path);
    const AggregateSpec spec = to_spec(flags);
    const std::vector<AggregateCell> cells = summary_table(
        family, spec.attribute, spec.kind, spec.target, spec.value_rule,
        spec.certainty_rule,
        scope == "sets" ? AggregateScope::sets : AggregateScope::regions);
    std::cout << "scope\tvalue\tcertainty\tn_known\tn_flagged\tn_missing\n";
    for (const auto& cell : cells) {
        std::cout << cell.scope << "\t"
                  << (cell.value.has_value() ? format_number(*cell.value) : "undefined")
                  << "\t" << format_number(cell.certainty) << "\t" << cell.n_known << "\t"
                  << cell.n_flagged << "\t" << cell.n_missing << "\n";
    }
    return 0;
}

struct RenderFlags {
    std::string view;
    std::string variant;
    AggregateFlags aggregate;
    std::string theme_path;
    std::string legend = "on";
    std::string output;
};

int run_render(const std::string& path, const RenderFlags& flags) {
    const SetFamily family = load_family(path);
    const Theme theme = load_theme(flags.theme_path);
    std::optional<AggregateSpec> spec;
    if (!flags.aggregate.attribute.empty()) {
        spec = to_spec(flags.aggregate);
    }

    Scene scene;
    if (flags.view == "bipartite") {
        BipartiteVariant variant = BipartiteVariant::full_links;
        if (flags.variant == "fans") {
            variant = BipartiteVariant::fans;
        } else if (flags.variant == "probability") {
            variant = BipartiteVariant::probability;
        }
        scene = layout_bipartite(family, variant, theme, spec.has_value(), spec);
    } else if (flags.view == "membership-matrix") {
        CellVariant variant = CellVariant::plain;
        if (flags.variant == "small-marks") {
            variant = CellVariant::small_marks;
        } else if (flags.variant == "size-color") {
            variant = CellVariant::size_color;
        }
        scene = layout_membership_matrix(family, variant, theme);
    } else if (flags.view == "aggregate-matrix") {
        scene = layout_aggregate_matrix(family, *spec, theme);
    } else if (flags.view == "euler") {
        EulerMode mode = EulerMode::membership;
        if (spec.has_value()) {
            // Blanket-flagged element attributes have no per-value signal;
            // the textured mode plus disclaimer caption covers that case.
            mode = classify(family).element_attributes == UncertaintyClass::UBinary
                       ? EulerMode::aggregate_textured
                       : EulerMode::aggregate;
        }
        scene = layout_euler(family, mode, theme, spec);
    } else {
        scene = layout_dotplot(family, flags.aggregate.attribute, theme);
    }

    print_warnings(scene.warnings);
    const SvgDocument svg = render_svg(scene, flags.legend != "off");
    if (flags.output.empty()) {
        std::cout << svg;
    } else {
        std::ofstream out(flags.output, std::ios::binary);
        if (!out) {
            throw Error("cannot write to '" + flags.output + "'");
        }
        out << svg;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Uncertainty-aware set visualization"};
    app.require_subcommand(1);

    std::string validate_path;
    CLI::App* validate_cmd =
        app.add_subcommand("validate", "Check a dataset and list violations");
    validate_cmd->add_option("file", validate_path, "dataset file")->required();

    std::string classify_path;
    CLI::App* classify_cmd =
        app.add_subcommand("classify", "Report the uncertainty class per facet");
    classify_cmd->add_option("file", classify_path, "dataset file")->required();

    std::string aggregate_path;
    std::string aggregate_scope = "regions";
    AggregateFlags aggregate_flags;
    CLI::App* aggregate_cmd =
        app.add_subcommand("aggregate", "Print the aggregate table for an attribute");
    aggregate_cmd->add_option("file", aggregate_path, "dataset file")->required();
    aggregate_cmd->add_option("--attribute", aggregate_flags.attribute, "attribute name")
        ->required();
    aggregate_cmd->add_option("--kind", aggregate_flags.kind, "aggregate kind")
        ->check(CLI::IsMember({"proportion", "mean"}));
    aggregate_cmd->add_option("--target", aggregate_flags.target,
                              "target level for proportions");
    aggregate_cmd->add_option("--value-rule", aggregate_flags.value_rule, "value rule")
        ->check(CLI::IsMember({"certain-only", "use-given"}));
    aggregate_cmd
        ->add_option("--certainty-rule", aggregate_flags.certainty_rule, "certainty rule")
        ->check(CLI::IsMember({"over-all", "over-given"}));
    aggregate_cmd->add_option("--scope", aggregate_scope, "aggregation scope")
        ->check(CLI::IsMember({"regions", "sets"}));

    std::string render_path;
    RenderFlags render_flags;
    CLI::App* render_cmd = app.add_subcommand("render", "Render a dataset view as SVG");
    render_cmd->add_option("file", render_path, "dataset file")->required();
    render_cmd->add_option("--view", render_flags.view, "view family")
        ->required()
        ->check(CLI::IsMember(
            {"bipartite", "membership-matrix", "aggregate-matrix", "euler", "dotplot"}));
    render_cmd->add_option("--variant", render_flags.variant, "view variant")
        ->check(CLI::IsMember(
            {"full-links", "fans", "probability", "plain", "small-marks", "size-color"}));
    render_cmd->add_option("--attribute", render_flags.aggregate.attribute,
                           "attribute for aggregate and dot plot views");
    render_cmd->add_option("--kind", render_flags.aggregate.kind, "aggregate kind")
        ->check(CLI::IsMember({"proportion", "mean"}));
    render_cmd->add_option("--target", render_flags.aggregate.target,
                           "target level for proportions");
    render_cmd
        ->add_option("--value-rule", render_flags.aggregate.value_rule, "value rule")
        ->check(CLI::IsMember({"certain-only", "use-given"}));
    render_cmd
        ->add_option("--certainty-rule", render_flags.aggregate.certainty_rule,
                     "certainty rule")
        ->check(CLI::IsMember({"over-all", "over-given"}));
    render_cmd->add_option("--theme", render_flags.theme_path, "theme file");
    render_cmd->add_option("--legend", render_flags.legend, "legend on or off")
        ->check(CLI::IsMember({"on", "off"}));
    render_cmd->add_option("-o,--output", render_flags.output,
                           "output path (default: stdout)");

    try {
        app.parse(argc, argv);

        // Cross-flag checks that CLI11 cannot express stay usage errors.
        auto usage_error = [&](const std::string& message) {
            std::cerr << "error: " << message << "\n";
            return 2;
        };
        if (aggregate_cmd->parsed() && aggregate_flags.kind == "proportion" &&
            aggregate_flags.target.empty()) {
            return usage_error("--kind proportion requires --target");
        }
        if (render_cmd->parsed()) {
            const std::string& view = render_flags.view;
            const std::string& variant = render_flags.variant;
            const bool bipartite_variant = variant == "full-links" || variant == "fans" ||
                                           variant == "probability";
            const bool matrix_variant = variant == "plain" || variant == "small-marks" ||
                                        variant == "size-color";
            if (!variant.empty() && view == "bipartite" && !bipartite_variant) {
                return usage_error("--variant " + variant + " does not apply to " + view);
            }
            if (!variant.empty() && view == "membership-matrix" && !matrix_variant) {
                return usage_error("--variant " + variant + " does not apply to " + view);
            }
            if (!variant.empty() && view != "bipartite" && view != "membership-matrix") {
                return usage_error("--variant does not apply to " + view);
            }
            const bool needs_attribute =
                view == "aggregate-matrix" || view == "dotplot";
            if (needs_attribute && render_flags.aggregate.attribute.empty()) {
                return usage_error("--view " + view + " requires --attribute");
            }
            const bool aggregating =
                !render_flags.aggregate.attribute.empty() && view != "dotplot";
            if (aggregating && render_flags.aggregate.kind == "proportion" &&
                render_flags.aggregate.target.empty()) {
                return usage_error("--kind proportion requires --target");
            }
        }

        if (validate_cmd->parsed()) {
            return run_validate(validate_path);
        }
        if (classify_cmd->parsed()) {
            return run_classify(classify_path);
        }
        if (aggregate_cmd->parsed()) {
            return run_aggregate(aggregate_path, aggregate_flags, aggregate_scope);
        }
        return run_render(render_path, render_flags);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        for (const auto& v : e.violations()) {
            std::cerr << "  " << v << "\n";
        }
        return 1;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
