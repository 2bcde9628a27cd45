// Microbenchmarks for the hot paths: expansion, aggregation, template
// geometry, and scene rendering.

#include <benchmark/benchmark.h>

#include <random>
#include <string>

#include "setvis/aggregate.hpp"
#include "setvis/layout.hpp"
#include "setvis/model.hpp"
#include "setvis/render.hpp"

namespace {

using namespace setvis;

// n elements spread over three sets, every third one uncertain.
SetFamily synthetic_family(int n_elements) {
    SetFamily f;
    f.sets = {{"S1", "S1", false}, {"S2", "S2", false}, {"S3", "S3", false}};
    f.attributes = {AttributeSchema::categorical("cat", {"x", "y"}),
                    AttributeSchema::numeric("num", 0.0, 100.0)};
    std::mt19937 rng(99);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int i = 0; i < n_elements; ++i) {
        Element e;
        e.id = "e" + std::to_string(100000 + i);
        e.label = e.id;
        e.membership_uncertain = i % 3 == 0;
        e.attribute_values["cat"] = AttributeValue::known(i % 2 == 0 ? "x" : "y");
        e.attribute_values["num"] = AttributeValue::known(100.0 * unit(rng));
        f.elements.push_back(std::move(e));
        for (int s = 0; s < 3; ++s) {
            if (unit(rng) < 0.4) {
                f.memberships.push_back({"e" + std::to_string(100000 + i),
                                         "S" + std::to_string(s + 1),
                                         MembershipStatus::certain_member()});
            }
        }
    }
    return f;
}

SetFamily certain_family(int n_elements) {
    SetFamily f = synthetic_family(n_elements);
    for (auto& e : f.elements) {
        e.membership_uncertain = false;
    }
    return f;
}

void BM_ExpandMemberships(benchmark::State& state) {
    const SetFamily f = synthetic_family(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(expand_memberships(f));
    }
}
BENCHMARK(BM_ExpandMemberships)->Arg(100)->Arg(1000);

void BM_SummaryTable(benchmark::State& state) {
    const SetFamily f = certain_family(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(summary_table(f, "cat", AggregateKind::proportion, "x",
                                               ValueRule::use_given,
                                               CertaintyRule::over_all,
                                               AggregateScope::regions));
    }
}
BENCHMARK(BM_SummaryTable)->Arg(100)->Arg(1000);

void BM_EulerTemplate(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(euler_template(3));
    }
}
BENCHMARK(BM_EulerTemplate);

void BM_RenderBipartite(benchmark::State& state) {
    const SetFamily f = synthetic_family(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            render_svg(layout_bipartite(f, BipartiteVariant::full_links, {}), true));
    }
}
BENCHMARK(BM_RenderBipartite)->Arg(100)->Arg(500);

} // namespace

BENCHMARK_MAIN();
