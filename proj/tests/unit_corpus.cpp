#include "doctest.h"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "framecheck/cli.hpp"
#include "framecheck/corpus.hpp"
#include "framecheck/errors.hpp"
#include "framecheck/fixtures.hpp"
#include "framecheck/scene_io.hpp"
#include "framecheck/span_table.hpp"
#include "support.hpp"

using namespace framecheck;

namespace {

struct CliRun {
    int code;
    std::string out;
    std::string err;
};

CliRun cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

SceneDigest digest(std::string id, std::vector<TestId> failed) {
    SceneDigest d;
    d.id = std::move(id);
    d.pass = failed.empty();
    d.failed = std::move(failed);
    return d;
}

const std::string kTable = FRAMECHECK_REPO_DATA "/fixture_span_table.json";

}  // namespace

TEST_CASE("shipped span table file equals the built-in fixture table") {
    CHECK(load_span_table(kTable) == fixture_span_table());
    CHECK(parse_span_table(serialize_span_table(fixture_span_table())) == fixture_span_table());
}

TEST_CASE("aggregation") {
    SUBCASE("three passing scenes") {
        auto r = aggregate_corpus({digest("a", {}), digest("b", {}), digest("c", {})});
        CHECK(r.pass_rate == 1.0);
        for (double rate : r.per_test_failure_rate) CHECK(rate == 0.0);
        CHECK(r.cofailure_patterns.empty());
    }
    SUBCASE("span plus deflection core") {
        auto r = aggregate_corpus({digest("a", {TestId::T2, TestId::T5})});
        REQUIRE(r.cofailure_patterns.size() == 1);
        CHECK(r.cofailure_patterns[0].tests == std::vector<TestId>{TestId::T2, TestId::T5});
        CHECK(r.per_test_failure_rate[1] == 1.0);
        CHECK(r.per_test_failure_rate[4] == 1.0);
    }
    SUBCASE("input order does not matter") {
        std::vector<SceneDigest> ds{digest("c", {TestId::T10}), digest("a", {}), digest("b", {TestId::T1, TestId::T9}),
                                    digest("d", {TestId::T10})};
        auto one = corpus_jsonl(aggregate_corpus(ds));
        std::reverse(ds.begin(), ds.end());
        CHECK(corpus_jsonl(aggregate_corpus(ds)) == one);
        auto r = aggregate_corpus(ds);
        REQUIRE(r.cofailure_patterns.size() == 2);
        CHECK(r.cofailure_patterns[0].count == 2);
        std::size_t total = 0;
        for (const auto& p : r.cofailure_patterns) total += p.count;
        CHECK(total == r.evaluated - r.passed);
    }
}

TEST_CASE("LoD mapping") {
    SuiteReport r;
    CHECK(lod_map(r).empty());
    r.results[9].pass = false;
    auto f = lod_map(r);
    REQUIRE(f.size() == 1);
    CHECK(f[0].requirement == LodRequirement::InterfaceDefinition);

    SuiteReport two;
    two.results[0].pass = false;
    two.results[3].pass = false;
    auto g = lod_map(two);
    REQUIRE(g.size() == 2);
    CHECK(g[0].requirement == LodRequirement::LoadPathIntegrity);
    CHECK(g[1].requirement == LodRequirement::AccurateGeometry);

    std::array<int, 4> per{};
    for (TestId id : kAllTests) ++per[static_cast<std::size_t>(lod_requirement(id))];
    CHECK(per == std::array<int, 4>{3, 2, 2, 3});
}

TEST_CASE("corpus over files") {
    fctest::TempDir dir("corpus");
    Scene valid = generate_gable(FixtureSpec{});
    save_scene(valid, dir.path() / "valid.json");
    save_scene(apply_mutation(valid, parse_mutation("remove_ridge")), dir.path() / "noridge.json");
    auto collar = canonical_targets(valid, MutationKind::FloatMember).front();
    save_scene(apply_mutation(valid, {MutationKind::FloatMember, collar, 1.0}), dir.path() / "float.json");

    auto r = run_corpus(dir.path(), fixture_span_table(), ValidationParams{}, 2);
    CHECK(r.evaluated == 3);
    CHECK(r.passed == 1);
    CHECK(r.pass_rate == doctest::Approx(1.0 / 3.0));
    REQUIRE(r.cofailure_patterns.size() == 2);
    CHECK(r.cofailure_patterns[0].tests == std::vector<TestId>{TestId::T1, TestId::T9});
    CHECK(r.cofailure_patterns[1].tests == std::vector<TestId>{TestId::T10});

    std::ofstream(dir.path() / "broken.json") << "{ not json";
    auto with_bad = run_corpus(dir.path(), fixture_span_table(), ValidationParams{}, 1);
    CHECK(with_bad.unreadable == 1);
    CHECK(with_bad.evaluated == 3);

    SpanTable empty;
    auto gap = run_corpus(dir.path(), empty, ValidationParams{}, 1);
    CHECK(gap.not_evaluable == 3);

    fctest::TempDir none("empty");
    CHECK_THROWS_AS(run_corpus(none.path(), fixture_span_table(), ValidationParams{}, 1), ConfigError);
}

TEST_CASE("cli exit codes") {
    fctest::TempDir dir("cli");
    const auto scene = (dir.path() / "fixture.json").string();
    const auto mutant = (dir.path() / "noridge.json").string();

    auto gen = cli({"gen-fixture", "--width", "7", "--depth", "5", "--stories", "1", "-o", scene});
    REQUIRE(gen.code == 0);
    CHECK(cli({"gen-fixture", "--width", "7", "--depth", "5", "--stories", "1", "--mutate", "remove_ridge", "-o",
               mutant})
              .code == 0);

    CHECK(cli({"validate", scene, "--span-table", kTable}).code == 0);
    auto bad = cli({"validate", mutant, "--span-table", kTable});
    CHECK(bad.code == 1);
    CHECK(bad.out.find("Rafter") != std::string::npos);

    unsetenv("FRAMECHECK_SPAN_TABLE");
    CHECK(cli({"validate", scene}).code == 2);
    setenv("FRAMECHECK_SPAN_TABLE", kTable.c_str(), 1);
    CHECK(cli({"validate", scene}).code == 0);
    unsetenv("FRAMECHECK_SPAN_TABLE");

    auto json = cli({"validate", scene, "--span-table", kTable, "--json"});
    CHECK(json.out.find("\"schema_version\":1") != std::string::npos);

    CHECK(cli({"validate", (dir.path() / "missing.json").string(), "--span-table", kTable}).code == 2);
    CHECK(cli({"frobnicate"}).code == 2);
    CHECK(cli({}).code == 2);

    CHECK(cli({"score", "--reference", scene, "--generated", scene, "--render-views", "--span-table", kTable}).code ==
          0);
    CHECK(cli({"score", "--reference", scene, "--generated", mutant, "--render-views", "--span-table", kTable}).code ==
          1);

    const std::string plan = FRAMECHECK_TEST_DATA "/plan_gable.json";
    CHECK(cli({"plan-check", plan, "--lot-width", "7", "--lot-depth", "5", "--stories", "1", "--roof", "gable"}).code ==
          0);
    CHECK(cli({"plan-check", plan, "--lot-width", "7.5", "--lot-depth", "5", "--stories", "1", "--roof", "gable"})
              .code == 1);

    CHECK(cli({"corpus", dir.path().string(), "--span-table", kTable, "--json"}).code == 1);
    CHECK(cli({"validate", scene, "--span-table", kTable, "--param", "grid_cell=-1"}).code == 2);
}
