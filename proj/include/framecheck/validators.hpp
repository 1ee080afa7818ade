#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "framecheck/contact.hpp"
#include "framecheck/params.hpp"
#include "framecheck/scene.hpp"
#include "framecheck/span_table.hpp"

namespace framecheck {

enum class TestId { T1 = 1, T2, T3, T4, T5, T6, T7, T8, T9, T10 };

inline constexpr std::array<TestId, 10> kAllTests{TestId::T1, TestId::T2, TestId::T3, TestId::T4, TestId::T5,
                                                  TestId::T6, TestId::T7, TestId::T8, TestId::T9, TestId::T10};

inline int test_number(TestId id) { return static_cast<int>(id); }
std::string test_label(TestId id);  // "T7"
std::string_view test_title(TestId id);  // "Gap Detection"
std::optional<TestId> test_from_label(std::string_view label);

struct Quantity {
    double value = 0.0;
    std::string unit;  ///< "m", "mm", "m^4", "count", or "" for ratios
};

/// One reportable defect. `message` is the rendered feedback line.
struct Violation {
    TestId test = TestId::T1;
    std::string subject;
    std::string relation;
    Quantity limit;
    std::string quantity;
    Quantity measured;
    std::vector<std::string> members;
    std::string tag;
    std::vector<std::array<double, 2>> cells;  ///< gap-cell centres (T7), capped
    std::string message;
};

/// Renders "<subject> <relation> <limit>; detected <quantity> <measured> between <members>".
std::string render_violation(const Violation& v);

/// Compact decimal form used in feedback: "3.0", "4.326", "0.007528".
std::string format_number(double value);
std::string format_quantity(const Quantity& q);

struct TestResult {
    TestId id = TestId::T1;
    bool pass = true;
    std::vector<Violation> violations;
    std::optional<double> metric;  ///< rho (T6), gamma (T7), tsi (T9)
};

struct SuiteReport {
    std::array<TestResult, 10> results;
    double tsi = 1.0;
    bool overall_pass = true;

    const TestResult& result(TestId id) const { return results[static_cast<std::size_t>(test_number(id) - 1)]; }
    bool passed(TestId id) const { return result(id).pass; }
    std::vector<TestId> failed_tests() const;
    std::vector<Violation> violations() const;
};

// --- cross-section helpers shared by T2, T4 and the fixture generator ---

/// Declared section when present, otherwise the two smallest box extents; mm.
LumberSize member_section_mm(const Member& m);
/// Closest entry of the set by Euclidean distance in mm (ties: first listed).
LumberSize nearest_lumber(const LumberSize& section, const std::vector<LumberSize>& set);
/// First set entry within the width/depth tolerances, if any.
std::optional<LumberSize> match_standard(const LumberSize& section, const ValidationParams& p);

struct DeflectionCheck {
    double width_b = 0.0;   ///< m
    double height_h = 0.0;  ///< m
    double span_L = 0.0;    ///< m
    double inertia_I = 0.0; ///< m^4
    double deflection = 0.0;
    double limit = 0.0;     ///< (1 + tau_delta) * L / 360
    bool degenerate = false;
    bool pass = true;
};

/// Mid-span deflection 5wL^4/(384EI) of a simply supported joist and its L/360 limit.
DeflectionCheck joist_deflection(const Member& joist, const ValidationParams& p);

struct CoverageGrid {
    double origin_x = 0.0;
    double origin_y = 0.0;
    double cell = 1.0;
    std::size_t footprint_cells = 0;
    std::size_t covered_cells = 0;
    std::vector<std::array<double, 2>> gap_cells;  ///< centres of footprint cells not covered

    double rho() const;
    double gamma() const;
};

/// Footprint/roof coverage grid shared by T6 and T7.
CoverageGrid coverage_grid(const Scene& scene, const ValidationParams& p);

/// Floor/sill classes that define the footprint.
bool is_footprint_category(Category c);

// --- the ten tests ---

TestResult t1_load_path(const Scene& scene, const ValidationParams& p);
TestResult t1_load_path(const Scene& scene, const SupportState& support);
/// Throws ConfigError when a joist or rafter section has no table entry.
TestResult t2_span_limits(const Scene& scene, const SpanTable& table, const ValidationParams& p);
TestResult t3_oc_spacing(const Scene& scene, const ValidationParams& p);
TestResult t4_standard_dimensions(const Scene& scene, const ValidationParams& p);
TestResult t5_deflection(const Scene& scene, const ValidationParams& p);
TestResult t6_roof_coverage(const Scene& scene, const ValidationParams& p);
TestResult t6_roof_coverage(const CoverageGrid& grid, const ValidationParams& p);
TestResult t7_gap_detection(const Scene& scene, const ValidationParams& p);
TestResult t7_gap_detection(const CoverageGrid& grid, const ValidationParams& p);
TestResult t8_cantilever(const Scene& scene, const ValidationParams& p);
TestResult t9_stability(const Scene& scene, const ValidationParams& p);
TestResult t9_stability(const Scene& scene, const SupportState& support);
TestResult t10_dual_end(const Scene& scene, const ValidationParams& p);

/// Runs T1..T10 in id order. A span-table gap propagates as ConfigError:
/// the scene is not evaluable, which is distinct from failing.
SuiteReport run_suite(const Scene& scene, const SpanTable& table, const ValidationParams& p);

/// One line per violation ordered by test id then member name; "" when clean.
std::string format_feedback(const SuiteReport& report);
std::string format_feedback(std::vector<Violation> violations);

}  // namespace framecheck
