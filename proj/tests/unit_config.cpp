#include "doctest.h"

#include <fstream>

#include "framecheck/config.hpp"
#include "framecheck/errors.hpp"
#include "support.hpp"

using namespace framecheck;

TEST_CASE("defaults match the published thresholds") {
    RunConfig c;
    CHECK(c.validation.contact.contact_tolerance_eps == 0.05);
    CHECK(c.validation.contact.ground_height == 0.1);
    CHECK(c.validation.span_tolerance_tau == 0.03);
    CHECK(c.validation.coverage_min_rho == 0.70);
    CHECK(c.validation.gap_max_gamma == 0.20);
    CHECK(c.fidelity.visual_threshold_tau == 0.6);
    CHECK(c.fidelity.visual_pass_rule == VisualPassRule::AllViews);
    CHECK_NOTHROW(c.check());
}

TEST_CASE("config documents and overrides") {
    RunConfig c;
    apply_config_document(c, R"({"grid_cell": 0.5, "contact": {"ground_height": 0.2}, "visual_pass_rule": "mean",
                                 "spacing_standards": [0.3, 0.6]})");
    CHECK(c.validation.grid_cell == 0.5);
    CHECK(c.validation.contact.ground_height == 0.2);
    CHECK(c.fidelity.visual_pass_rule == VisualPassRule::Mean);
    CHECK(c.validation.spacing_standards == std::vector<double>{0.3, 0.6});

    apply_param_override(c, "contact.contact_tolerance_eps=0.02");
    CHECK(c.validation.contact.contact_tolerance_eps == 0.02);
    apply_param_override(c, "w_C=0.25");
    apply_param_override(c, "w_V=0.25");
    apply_param_override(c, "w_M=0.5");
    CHECK_NOTHROW(c.check());

    CHECK_THROWS_AS(apply_config_document(c, R"({"no_such_key": 1})"), ConfigError);
    CHECK_THROWS_AS(apply_param_override(c, "missing_equals"), ConfigError);
    RunConfig bad;
    apply_param_override(bad, "coverage_min_rho=1.5");
    CHECK_THROWS_AS(bad.check(), ConfigError);
}

TEST_CASE("span table path resolves against the config file") {
    fctest::TempDir dir("cfg");
    std::ofstream(dir.path() / "run.json") << R"({"span_table": "tables/t.json"})";
    RunConfig c;
    apply_config_file(c, dir.path() / "run.json");
    REQUIRE(c.span_table.has_value());
    CHECK(*c.span_table == dir.path() / "tables/t.json");
}
