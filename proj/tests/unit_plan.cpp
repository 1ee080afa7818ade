#include "doctest.h"

#include <fstream>
#include <sstream>

#include "framecheck/errors.hpp"
#include "framecheck/plan.hpp"
#include "framecheck/scene_io.hpp"

using namespace framecheck;

namespace {

std::string valid_text() { return read_text_file(FRAMECHECK_TEST_DATA "/plan_gable.json"); }

PlanContext context() { return {7.0, 5.0, 1, RoofType::Gable}; }

std::string replace(std::string text, const std::string& from, const std::string& to) {
    const auto at = text.find(from);
    REQUIRE(at != std::string::npos);
    return text.replace(at, from.size(), to);
}

PlanStep step(long id, std::vector<long> deps, std::string phase = "floor") {
    PlanStep s;
    s.step = id;
    s.section = "main";
    s.phase = std::move(phase);
    s.depends_on = std::move(deps);
    return s;
}

}  // namespace

TEST_CASE("valid plan is accepted") {
    PlanDocument plan = parse_plan(valid_text());
    auto report = check_plan(plan, context());
    CHECK(report.accepted());
    CHECK(report.warnings.empty());
    CHECK(topo_order(plan).order == std::vector<long>{1, 2, 3, 4, 5});
}

TEST_CASE("lot size must match to two decimals") {
    auto text = replace(valid_text(), "\"width\": 7.00", "\"width\": 7.01");
    auto report = check_plan(parse_plan(text), context());
    CHECK_FALSE(report.accepted());
    CHECK(report.has(PlanIssueKind::LotSizeMismatch));

    auto close = replace(replace(valid_text(), "\"width\": 7.00", "\"width\": 7.004"), "\"area\": 35.00",
                         "\"area\": 35.02");
    CHECK_FALSE(check_plan(parse_plan(close), context()).has(PlanIssueKind::LotSizeMismatch));
}

TEST_CASE("member types must come from the taxonomy") {
    auto text = replace(valid_text(), "\"type\": \"Stud\"", "\"type\": \"vertical_member\"");
    auto report = check_plan(parse_plan(text), context());
    CHECK(report.has(PlanIssueKind::UnknownMemberType));
    CHECK(report.violations.front().step == 4);
}

TEST_CASE("dependency cycles are rejected") {
    PlanDocument plan;
    plan.construction_order = {step(1, {2}), step(2, {1})};
    auto topo = topo_order(plan);
    CHECK_FALSE(topo.acyclic());
    CHECK(topo.cycle == std::vector<long>{1, 2});
    CHECK(check_plan(plan, context()).has(PlanIssueKind::DependencyCycle));
}

TEST_CASE("topological order breaks ties by step id") {
    PlanDocument chain;
    chain.construction_order = {step(3, {2}), step(2, {1}), step(1, {})};
    CHECK(topo_order(chain).order == std::vector<long>{1, 2, 3});

    PlanDocument pair;
    pair.construction_order = {step(2, {}), step(1, {})};
    CHECK(topo_order(pair).order == std::vector<long>{1, 2});

    PlanDocument diamond;
    diamond.construction_order = {step(4, {2, 3}), step(3, {1}), step(2, {1}), step(1, {})};
    CHECK(topo_order(diamond).order == std::vector<long>{1, 2, 3, 4});

    PlanDocument self;
    self.construction_order = {step(1, {}), step(2, {2})};
    CHECK(topo_order(self).cycle == std::vector<long>{2});

    PlanDocument dup;
    dup.construction_order = {step(1, {}), step(1, {})};
    CHECK_THROWS_AS(topo_order(dup), ValidationError);
}

TEST_CASE("other structural violations") {
    SUBCASE("unknown dependency") {
        auto text = replace(valid_text(), "\"depends_on\": [3]", "\"depends_on\": [9]");
        CHECK(check_plan(parse_plan(text), context()).has(PlanIssueKind::UnknownDependency));
    }
    SUBCASE("bounds larger than the lot") {
        auto text = replace(valid_text(), "\"x_max\": 7.0", "\"x_max\": 7.5");
        CHECK(check_plan(parse_plan(text), context()).has(PlanIssueKind::BoundsOutsideLot));
    }
    SUBCASE("bounds translated inside a lot-sized rectangle are fine") {
        auto text = replace(valid_text(), "\"y_min\": -5.0, \"y_max\": 0.0", "\"y_min\": 10.0, \"y_max\": 15.0");
        CHECK(check_plan(parse_plan(text), context()).accepted());
    }
    SUBCASE("negative count") {
        auto text = replace(valid_text(), "\"count\": 12", "\"count\": -1");
        CHECK(check_plan(parse_plan(text), context()).has(PlanIssueKind::NegativeCount));
    }
    SUBCASE("unknown section") {
        auto text = replace(valid_text(), "\"step\": 3, \"section\": \"main\"", "\"step\": 3, \"section\": \"wing\"");
        CHECK(check_plan(parse_plan(text), context()).has(PlanIssueKind::UnknownSection));
    }
}

TEST_CASE("advisories warn without rejecting") {
    SUBCASE("phase order") {
        auto text = replace(valid_text(), "\"step\": 1, \"section\": \"main\", \"phase\": \"foundation\"",
                            "\"step\": 1, \"section\": \"main\", \"phase\": \"roof\"");
        auto report = check_plan(parse_plan(text), context());
        CHECK(report.accepted());
        CHECK(report.has(PlanIssueKind::PhaseOrder));
    }
    SUBCASE("context mismatch") {
        auto report = check_plan(parse_plan(valid_text()), {7.0, 5.0, 2, RoofType::Hip});
        CHECK(report.accepted());
        CHECK(report.has(PlanIssueKind::ContextMismatch));
    }
}

TEST_CASE("malformed plans are parse errors") {
    CHECK_THROWS_AS(parse_plan("{"), ParseError);
    CHECK_THROWS_AS(parse_plan(R"({"analysis": 3})"), ParseError);
    CHECK(plan_issue_name(PlanIssueKind::LotSizeMismatch) == "lot_size_mismatch");
    CHECK(is_warning(PlanIssueKind::PhaseOrder));
    CHECK_FALSE(is_warning(PlanIssueKind::DependencyCycle));
}
