#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "framecheck/scene.hpp"

namespace framecheck {

struct LotSize {
    double width = 0.0;
    double depth = 0.0;
    double area = 0.0;
};

struct PlanAnalysis {
    std::string description;
    int stories = 0;
    std::vector<std::string> sections;
    std::string roof_type;
    std::string complexity;
    LotSize lot_size;
};

struct SectionBounds {
    double x_min = 0.0;
    double x_max = 0.0;
    double y_min = 0.0;
    double y_max = 0.0;
    double z_base = 0.0;
};

struct PlanSection {
    std::string name;
    SectionBounds bounds;
    int stories = 0;
    std::vector<std::string> systems;
    std::vector<std::string> dependencies;
};

struct StepMembers {
    std::string type;
    long count = 0;
};

struct PlanStep {
    long step = 0;
    std::string section;
    std::string phase;
    std::string step_type;
    std::vector<StepMembers> members;
    std::vector<long> depends_on;
};

struct PlanDocument {
    PlanAnalysis analysis;
    std::vector<PlanSection> sections;
    std::vector<PlanStep> construction_order;
    std::vector<std::pair<std::string, long>> expected_member_counts;  ///< document order
};

/// The externally known facts a plan must agree with.
struct PlanContext {
    double lot_width = 0.0;
    double lot_depth = 0.0;
    int stories = 1;
    RoofType roof_type = RoofType::Gable;
};

/// Throws ParseError (with line/column for malformed JSON) when the document
/// does not follow the schema's shape.
PlanDocument parse_plan(std::string_view document);
PlanDocument load_plan(const std::filesystem::path& path);

enum class PlanIssueKind {
    LotSizeMismatch,
    UnknownMemberType,
    DependencyCycle,
    UnknownDependency,
    DuplicateStep,
    BoundsOutsideLot,
    InvalidBounds,
    UnknownSection,
    InvalidValue,
    NegativeCount,
    // warnings
    PhaseOrder,
    ContextMismatch,
};

std::string_view plan_issue_name(PlanIssueKind k);  // "lot_size_mismatch"
bool is_warning(PlanIssueKind k);

struct PlanIssue {
    PlanIssueKind kind;
    std::optional<long> step;
    std::string message;
};

struct PlanReport {
    std::vector<PlanIssue> violations;
    std::vector<PlanIssue> warnings;

    bool accepted() const { return violations.empty(); }
    bool has(PlanIssueKind k) const;
};

PlanReport check_plan(const PlanDocument& plan, const PlanContext& ctx);

struct TopoResult {
    /// Full order when acyclic; empty otherwise.
    std::vector<long> order;
    /// Shortest cycle, starting at its smallest step id, each entry depending on
    /// the next (a self-dependency is a one-step cycle); empty when acyclic.
    std::vector<long> cycle;

    bool acyclic() const { return cycle.empty(); }
};

/// Kahn's algorithm with ties broken by ascending step id. References to
/// unknown steps are ignored here (check_plan reports them). Throws
/// ValidationError on duplicate step ids.
TopoResult topo_order(const PlanDocument& plan);

}  // namespace framecheck
