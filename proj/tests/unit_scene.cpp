#include "doctest.h"

#include "framecheck/errors.hpp"
#include "framecheck/fixtures.hpp"
#include "framecheck/scene.hpp"
#include "framecheck/scene_io.hpp"
#include "support.hpp"

using namespace framecheck;
using fctest::make_member;
using fctest::make_scene;

TEST_CASE("classify_member uses the longest taxonomy prefix") {
    CHECK(classify_member("Sill_front") == Category::Sill);
    CHECK_FALSE(classify_member("beam_001").has_value());
    CHECK(classify_member("GableStud_07") == Category::GableStud);
    CHECK(classify_member("Stud_07") == Category::Stud);
    CHECK(classify_member("SolePlate_1") == Category::SolePlate);
    CHECK(classify_member("BeamPost_01") == Category::BeamPost);
    CHECK(classify_member("Post_01") == Category::Post);
}

TEST_CASE("every taxonomy prefix classifies to itself with any suffix") {
    for (Category c : all_categories()) {
        const std::string prefix(category_name(c));
        CHECK(classify_member(prefix) == c);
        CHECK(classify_member(prefix + "_x9") == c);
        CHECK(category_from_string(prefix) == c);
    }
    CHECK(all_categories().size() == kCategoryCount);
}

TEST_CASE("phases follow the build order") {
    CHECK(phase_of(Category::Sill) == Phase::Foundation);
    CHECK(phase_of(Category::Joist) == Phase::Floor);
    CHECK(phase_of(Category::Stud) == Phase::Walls);
    CHECK(phase_of(Category::Collar) == Phase::Roof);
}

TEST_CASE("parse_scene reads members and meta") {
    SUBCASE("empty member list") {
        Scene s = parse_scene(R"({"members": []})");
        CHECK(s.members.empty());
        CHECK_FALSE(s.meta.has_value());
    }
    SUBCASE("single stud") {
        Scene s = parse_scene(R"({"members": [{"name": "Stud_a", "min": [0,0,0], "max": [0.04,0.09,2.4]}]})");
        REQUIRE(s.members.size() == 1);
        CHECK(s.members[0].category == Category::Stud);
        CHECK(s.members[0].box.max.z == doctest::Approx(2.4));
    }
    SUBCASE("meta block") {
        Scene s = parse_scene(
            R"({"meta": {"lot_width": 7, "lot_depth": 5, "stories": 2, "roof_type": "gable", "style": "cabin"},
                "members": []})");
        REQUIRE(s.meta.has_value());
        CHECK(s.meta->stories == 2);
        CHECK(s.meta->roof_type == RoofType::Gable);
        CHECK(s.meta->style_tag == "cabin");
    }
}

TEST_CASE("parse_scene rejects invariant breaches") {
    CHECK_THROWS_AS(parse_scene(R"({"members": [{"name": "Joist_1", "min": [0,0,0], "max": [1,1,1]},
                                                {"name": "Joist_1", "min": [0,0,0], "max": [1,1,1]}]})"),
                    ValidationError);
    CHECK_THROWS_AS(parse_scene(R"({"members": [{"name": "beam_001", "min": [0,0,0], "max": [1,1,1]}]})"),
                    ValidationError);
    CHECK_THROWS_AS(parse_scene(R"({"members": [{"name": "Stud_1", "min": [1,0,0], "max": [0,1,1]}]})"),
                    ValidationError);
    CHECK_THROWS_AS(
        parse_scene(R"({"members": [{"name": "Stud_1", "category": "Joist", "min": [0,0,0], "max": [1,1,1]}]})"),
        ValidationError);
}

TEST_CASE("stored category is accepted for names without a prefix") {
    Scene s = parse_scene(R"({"members": [{"name": "m1", "category": "Joist", "min": [0,0,0], "max": [1,1,1]}]})");
    CHECK(s.members[0].category == Category::Joist);
}

TEST_CASE("malformed JSON reports line and column") {
    try {
        parse_scene("{\n  \"members\": [\n    {\"name\": ,}\n  ]\n}");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line() == 3);
        CHECK(e.column() > 0);
    }
    CHECK_THROWS_AS(parse_scene(R"({"members": 3})"), ParseError);
    CHECK_THROWS_AS(parse_scene("[]"), ParseError);
}

TEST_CASE("serialize then parse is the identity") {
    SUBCASE("empty scene") {
        Scene s;
        CHECK(parse_scene(serialize_scene(s)) == s);
    }
    SUBCASE("order is preserved") {
        Scene s = make_scene({make_member("Stud_b", {1, 0, 0}, {1.038, 0.089, 2.4}),
                              make_member("Stud_a", {0, 0, 0}, {0.038, 0.089, 2.4})});
        Scene back = parse_scene(serialize_scene(s));
        CHECK(back == s);
        CHECK(back.members[0].name == "Stud_b");
    }
    SUBCASE("generated fixture is bit-stable") {
        Scene s = generate_gable(FixtureSpec{});
        const std::string once = serialize_scene(s);
        CHECK(parse_scene(once) == s);
        CHECK(serialize_scene(parse_scene(once)) == once);
    }
}

TEST_CASE("member_span is the longest horizontal extent") {
    CHECK(member_span(make_member("Joist_1", {0, 0, 0}, {4.0, 0.038, 0.235})) == doctest::Approx(4.0));
    CHECK(member_span(make_member("Joist_2", {0, 0, 0}, {0.038, 3.5, 0.235})) == doctest::Approx(3.5));
    CHECK(member_span(make_member("Post_1", {0, 0, 0}, {1, 1, 1})) == doctest::Approx(1.0));
}
