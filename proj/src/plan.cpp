#include "framecheck/plan.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <map>
#include <queue>
#include <set>

#include <fmt/format.h>
#include <json.hpp>

#include "framecheck/errors.hpp"
#include "framecheck/scene_io.hpp"
#include "framecheck/validators.hpp"

namespace framecheck {

using nlohmann::ordered_json;

namespace {

constexpr double kTwoDecimals = 0.005;
constexpr std::array<std::string_view, 4> kPhases{"foundation", "floor", "walls", "roof"};

const ordered_json& field(const ordered_json& obj, const char* key, const std::string& ctx) {
    if (!obj.is_object()) throw ParseError(fmt::format("{}: expected an object", ctx));
    auto it = obj.find(key);
    if (it == obj.end()) throw ParseError(fmt::format("{}: missing '{}'", ctx, key));
    return *it;
}

double number(const ordered_json& obj, const char* key, const std::string& ctx) {
    const auto& v = field(obj, key, ctx);
    if (!v.is_number()) throw ParseError(fmt::format("{}.{}: expected a number", ctx, key));
    return v.get<double>();
}

long integer(const ordered_json& v, const std::string& ctx) {
    if (v.is_number_integer()) return v.get<long>();
    if (v.is_number_float()) {
        const double d = v.get<double>();
        if (std::floor(d) == d && std::abs(d) < 1e15) return static_cast<long>(d);
    }
    throw ParseError(fmt::format("{}: expected an integer", ctx));
}

long integer(const ordered_json& obj, const char* key, const std::string& ctx) {
    return integer(field(obj, key, ctx), fmt::format("{}.{}", ctx, key));
}

std::string text(const ordered_json& obj, const char* key, const std::string& ctx, bool required = true) {
    if (!obj.contains(key) && !required) return {};
    const auto& v = field(obj, key, ctx);
    if (!v.is_string()) throw ParseError(fmt::format("{}.{}: expected a string", ctx, key));
    return v.get<std::string>();
}

std::vector<std::string> strings(const ordered_json& obj, const char* key, const std::string& ctx) {
    std::vector<std::string> out;
    if (!obj.contains(key)) return out;
    const auto& v = obj.at(key);
    if (!v.is_array()) throw ParseError(fmt::format("{}.{}: expected an array", ctx, key));
    for (const auto& s : v) {
        if (!s.is_string()) throw ParseError(fmt::format("{}.{}: expected strings", ctx, key));
        out.push_back(s.get<std::string>());
    }
    return out;
}

std::optional<int> phase_rank(std::string_view phase) {
    for (std::size_t i = 0; i < kPhases.size(); ++i) {
        if (kPhases[i] == phase) return static_cast<int>(i);
    }
    return std::nullopt;
}

constexpr std::array<std::string_view, 12> kIssueNames{
    "lot_size_mismatch",  "unknown_member_type", "dependency_cycle", "unknown_dependency",
    "duplicate_step",     "bounds_outside_lot",  "invalid_bounds",   "unknown_section",
    "invalid_value",      "negative_count",      "phase_order",      "context_mismatch",
};

}  // namespace

std::string_view plan_issue_name(PlanIssueKind k) { return kIssueNames[static_cast<std::size_t>(k)]; }

bool is_warning(PlanIssueKind k) { return k == PlanIssueKind::PhaseOrder || k == PlanIssueKind::ContextMismatch; }

bool PlanReport::has(PlanIssueKind k) const {
    const auto& list = is_warning(k) ? warnings : violations;
    return std::any_of(list.begin(), list.end(), [k](const PlanIssue& i) { return i.kind == k; });
}

PlanDocument parse_plan(std::string_view document) {
    ordered_json root;
    try {
        root = ordered_json::parse(document.begin(), document.end());
    } catch (const ordered_json::parse_error& e) {
        const std::size_t offset = e.byte > 0 ? e.byte - 1 : 0;
        auto [line, column] = line_column(document, offset);
        throw ParseError(fmt::format("malformed plan document at line {}, column {}", line, column), line, column);
    }
    if (!root.is_object()) throw ParseError("plan document must be a JSON object");

    PlanDocument plan;
    const auto& a = field(root, "analysis", "plan");
    plan.analysis.description = text(a, "description", "analysis", false);
    plan.analysis.stories = a.contains("stories") ? static_cast<int>(integer(a, "stories", "analysis")) : 0;
    plan.analysis.sections = strings(a, "sections", "analysis");
    plan.analysis.roof_type = text(a, "roof_type", "analysis", false);
    plan.analysis.complexity = text(a, "complexity", "analysis", false);
    const auto& lot = field(a, "lot_size", "analysis");
    plan.analysis.lot_size = {number(lot, "width", "lot_size"), number(lot, "depth", "lot_size"),
                              number(lot, "area", "lot_size")};

    if (root.contains("sections")) {
        const auto& secs = root["sections"];
        if (!secs.is_array()) throw ParseError("'sections' must be an array");
        for (std::size_t i = 0; i < secs.size(); ++i) {
            const std::string ctx = fmt::format("sections[{}]", i);
            PlanSection s;
            s.name = text(secs[i], "name", ctx);
            const auto& b = field(secs[i], "bounds", ctx);
            const std::string bctx = ctx + ".bounds";
            s.bounds = {number(b, "x_min", bctx), number(b, "x_max", bctx), number(b, "y_min", bctx),
                        number(b, "y_max", bctx), b.contains("z_base") ? number(b, "z_base", bctx) : 0.0};
            s.stories = secs[i].contains("stories") ? static_cast<int>(integer(secs[i], "stories", ctx)) : 0;
            s.systems = strings(secs[i], "systems", ctx);
            s.dependencies = strings(secs[i], "dependencies", ctx);
            plan.sections.push_back(std::move(s));
        }
    }

    const auto& order = field(root, "construction_order", "plan");
    if (!order.is_array()) throw ParseError("'construction_order' must be an array");
    for (std::size_t i = 0; i < order.size(); ++i) {
        const std::string ctx = fmt::format("construction_order[{}]", i);
        PlanStep st;
        st.step = integer(order[i], "step", ctx);
        st.section = text(order[i], "section", ctx, false);
        st.phase = text(order[i], "phase", ctx);
        st.step_type = text(order[i], "step_type", ctx, false);
        if (order[i].contains("members")) {
            const auto& ms = order[i]["members"];
            if (!ms.is_array()) throw ParseError(ctx + ".members: expected an array");
            for (std::size_t k = 0; k < ms.size(); ++k) {
                const std::string mctx = fmt::format("{}.members[{}]", ctx, k);
                st.members.push_back({text(ms[k], "type", mctx), integer(ms[k], "count", mctx)});
            }
        }
        if (order[i].contains("depends_on")) {
            const auto& deps = order[i]["depends_on"];
            if (!deps.is_array()) throw ParseError(ctx + ".depends_on: expected an array");
            for (std::size_t k = 0; k < deps.size(); ++k) {
                st.depends_on.push_back(integer(deps[k], fmt::format("{}.depends_on[{}]", ctx, k)));
            }
        }
        plan.construction_order.push_back(std::move(st));
    }

    if (root.contains("expected_member_counts")) {
        const auto& counts = root["expected_member_counts"];
        if (!counts.is_object()) throw ParseError("'expected_member_counts' must be an object");
        for (const auto& [k, v] : counts.items()) {
            plan.expected_member_counts.emplace_back(k, integer(v, "expected_member_counts." + k));
        }
    }
    return plan;
}

PlanDocument load_plan(const std::filesystem::path& path) { return parse_plan(read_text_file(path)); }

TopoResult topo_order(const PlanDocument& plan) {
    std::vector<long> ids;
    for (const PlanStep& s : plan.construction_order) ids.push_back(s.step);
    std::sort(ids.begin(), ids.end());
    if (std::adjacent_find(ids.begin(), ids.end()) != ids.end()) {
        throw ValidationError("construction_order has duplicate step ids");
    }
    auto index_of = [&](long id) -> std::optional<std::size_t> {
        auto it = std::lower_bound(ids.begin(), ids.end(), id);
        if (it == ids.end() || *it != id) return std::nullopt;
        return static_cast<std::size_t>(it - ids.begin());
    };

    // Edge dep -> step: the dependency comes first.
    const std::size_t n = ids.size();
    std::vector<std::set<std::size_t>> next(n);
    std::vector<std::set<std::size_t>> deps(n);
    for (const PlanStep& s : plan.construction_order) {
        const std::size_t v = *index_of(s.step);
        for (long d : s.depends_on) {
            if (auto u = index_of(d)) {
                next[*u].insert(v);
                deps[v].insert(*u);
            }
        }
    }

    TopoResult out;
    std::vector<std::size_t> indegree(n);
    std::priority_queue<std::size_t, std::vector<std::size_t>, std::greater<>> ready;
    for (std::size_t v = 0; v < n; ++v) {
        indegree[v] = deps[v].size();
        if (indegree[v] == 0) ready.push(v);
    }
    while (!ready.empty()) {
        const std::size_t u = ready.top();
        ready.pop();
        out.order.push_back(ids[u]);
        for (std::size_t v : next[u]) {
            if (--indegree[v] == 0) ready.push(v);
        }
    }
    if (out.order.size() == n) return out;
    out.order.clear();

    // Shortest cycle: BFS over "depends on" edges from each start, smallest start wins ties.
    std::vector<std::size_t> best;
    for (std::size_t s = 0; s < n; ++s) {
        if (indegree[s] == 0) continue;  // already emitted, cannot be on a cycle
        std::vector<long> parent(n, -1);
        std::vector<bool> seen(n, false);
        std::deque<std::size_t> queue{s};
        seen[s] = true;
        std::optional<std::size_t> closing;
        while (!queue.empty() && !closing) {
            const std::size_t u = queue.front();
            queue.pop_front();
            for (std::size_t v : deps[u]) {
                if (v == s) {
                    closing = u;
                    break;
                }
                if (!seen[v]) {
                    seen[v] = true;
                    parent[v] = static_cast<long>(u);
                    queue.push_back(v);
                }
            }
        }
        if (!closing) continue;
        std::vector<std::size_t> path;
        for (long u = static_cast<long>(*closing); u != -1; u = parent[static_cast<std::size_t>(u)]) {
            path.push_back(static_cast<std::size_t>(u));
        }
        std::reverse(path.begin(), path.end());  // s, ..., closing; each depends on the next, closing on s
        if (best.empty() || path.size() < best.size()) best = std::move(path);
    }
    for (std::size_t v : best) out.cycle.push_back(ids[v]);
    return out;
}

PlanReport check_plan(const PlanDocument& plan, const PlanContext& ctx) {
    PlanReport report;
    auto add = [&](PlanIssueKind k, std::string message, std::optional<long> step = std::nullopt) {
        (is_warning(k) ? report.warnings : report.violations).push_back({k, step, std::move(message)});
    };

    // (i) lot size against the injected values, two decimals.
    const LotSize& lot = plan.analysis.lot_size;
    if (!(std::abs(lot.width - ctx.lot_width) < kTwoDecimals)) {
        add(PlanIssueKind::LotSizeMismatch, fmt::format("lot_size.width {} differs from {}", format_number(lot.width),
                                                        format_number(ctx.lot_width)));
    }
    if (!(std::abs(lot.depth - ctx.lot_depth) < kTwoDecimals)) {
        add(PlanIssueKind::LotSizeMismatch, fmt::format("lot_size.depth {} differs from {}", format_number(lot.depth),
                                                        format_number(ctx.lot_depth)));
    }
    if (!(std::abs(lot.area - lot.width * lot.depth) < kTwoDecimals)) {
        add(PlanIssueKind::LotSizeMismatch, fmt::format("lot_size.area {} is not width x depth = {}",
                                                        format_number(lot.area), format_number(lot.width * lot.depth)));
    }

    // Context agreement is advisory.
    if (plan.analysis.stories != 0 && plan.analysis.stories != ctx.stories) {
        add(PlanIssueKind::ContextMismatch,
            fmt::format("analysis.stories {} differs from {}", plan.analysis.stories, ctx.stories));
    }
    if (!plan.analysis.roof_type.empty()) {
        const auto roof = roof_type_from_string(plan.analysis.roof_type);
        if (!roof) {
            add(PlanIssueKind::InvalidValue, fmt::format("analysis.roof_type '{}' is not gable, hip, gambrel or shed",
                                                         plan.analysis.roof_type));
        } else if (*roof != ctx.roof_type) {
            add(PlanIssueKind::ContextMismatch, fmt::format("analysis.roof_type '{}' differs from '{}'",
                                                            plan.analysis.roof_type, roof_type_name(ctx.roof_type)));
        }
    }
    if (!plan.analysis.complexity.empty() && plan.analysis.complexity != "simple" &&
        plan.analysis.complexity != "moderate" && plan.analysis.complexity != "complex") {
        add(PlanIssueKind::InvalidValue, fmt::format("analysis.complexity '{}' is not simple, moderate or complex",
                                                     plan.analysis.complexity));
    }

    // Sections: names and bounds.
    std::set<std::string> section_names;
    for (const PlanSection& s : plan.sections) section_names.insert(s.name);
    for (const PlanSection& s : plan.sections) {
        for (const std::string& d : s.dependencies) {
            if (!section_names.count(d)) {
                add(PlanIssueKind::UnknownSection, fmt::format("section '{}' depends on unknown section '{}'", s.name, d));
            }
        }
        for (const std::string& sys : s.systems) {
            if (!phase_rank(sys)) add(PlanIssueKind::InvalidValue, fmt::format("section '{}': unknown system '{}'", s.name, sys));
        }
        if (!(s.bounds.x_min <= s.bounds.x_max) || !(s.bounds.y_min <= s.bounds.y_max)) {
            add(PlanIssueKind::InvalidBounds, fmt::format("section '{}': bounds min exceeds max", s.name));
        }
    }
    if (!plan.sections.empty()) {
        // (iv) translation-free: the union of all bounds must fit a lot-sized rectangle.
        double x_lo = std::numeric_limits<double>::infinity(), y_lo = x_lo;
        double x_hi = -x_lo, y_hi = -x_lo;
        for (const PlanSection& s : plan.sections) {
            x_lo = std::min({x_lo, s.bounds.x_min, s.bounds.x_max});
            x_hi = std::max({x_hi, s.bounds.x_min, s.bounds.x_max});
            y_lo = std::min({y_lo, s.bounds.y_min, s.bounds.y_max});
            y_hi = std::max({y_hi, s.bounds.y_min, s.bounds.y_max});
        }
        if (x_hi - x_lo >= ctx.lot_width + kTwoDecimals) {
            add(PlanIssueKind::BoundsOutsideLot, fmt::format("sections span {} m in x, lot width is {} m",
                                                             format_number(x_hi - x_lo), format_number(ctx.lot_width)));
        }
        if (y_hi - y_lo >= ctx.lot_depth + kTwoDecimals) {
            add(PlanIssueKind::BoundsOutsideLot, fmt::format("sections span {} m in y, lot depth is {} m",
                                                             format_number(y_hi - y_lo), format_number(ctx.lot_depth)));
        }
    }

    // Steps: ids, taxonomy, counts, references.
    std::set<long> ids;
    bool duplicates = false;
    for (const PlanStep& st : plan.construction_order) {
        if (!ids.insert(st.step).second) {
            duplicates = true;
            add(PlanIssueKind::DuplicateStep, fmt::format("step {} appears more than once", st.step), st.step);
        }
    }
    for (const PlanStep& st : plan.construction_order) {
        if (!phase_rank(st.phase)) {
            add(PlanIssueKind::InvalidValue, fmt::format("step {}: unknown phase '{}'", st.step, st.phase), st.step);
        }
        if (!st.step_type.empty() && st.step_type != "critical" && st.step_type != "safe") {
            add(PlanIssueKind::InvalidValue, fmt::format("step {}: step_type '{}' is not critical or safe", st.step,
                                                         st.step_type),
                st.step);
        }
        if (!st.section.empty() && !plan.sections.empty() && !section_names.count(st.section)) {
            add(PlanIssueKind::UnknownSection, fmt::format("step {}: unknown section '{}'", st.step, st.section), st.step);
        }
        for (const StepMembers& m : st.members) {
            if (!category_from_string(m.type)) {
                add(PlanIssueKind::UnknownMemberType,
                    fmt::format("step {}: member type '{}' is not in the taxonomy", st.step, m.type), st.step);
            }
            if (m.count < 0) {
                add(PlanIssueKind::NegativeCount, fmt::format("step {}: negative count for '{}'", st.step, m.type),
                    st.step);
            }
        }
        for (long d : st.depends_on) {
            if (!ids.count(d)) {
                add(PlanIssueKind::UnknownDependency, fmt::format("step {} depends on unknown step {}", st.step, d),
                    st.step);
            }
        }
    }
    for (const auto& [type, count] : plan.expected_member_counts) {
        if (!category_from_string(type)) {
            add(PlanIssueKind::UnknownMemberType,
                fmt::format("expected_member_counts: '{}' is not in the taxonomy", type));
        }
        if (count < 0) add(PlanIssueKind::NegativeCount, fmt::format("expected_member_counts: negative count for '{}'", type));
    }

    // (iii) DAG.
    if (!duplicates) {
        const TopoResult topo = topo_order(plan);
        if (!topo.acyclic()) {
            std::string chain;
            for (long id : topo.cycle) chain += fmt::format("{} -> ", id);
            chain += fmt::format("{}", topo.cycle.front());
            add(PlanIssueKind::DependencyCycle, fmt::format("depends_on cycle: {}", chain), topo.cycle.front());
        } else {
            // Phase advisory: within a section every earlier-phase step must be an
            // ancestor of every later-phase step, so any topological order is monotone.
            std::map<long, const PlanStep*> by_id;
            for (const PlanStep& st : plan.construction_order) by_id[st.step] = &st;
            std::map<long, std::set<long>> ancestors;
            for (long id : topo.order) {
                auto& anc = ancestors[id];
                for (long d : by_id[id]->depends_on) {
                    if (!by_id.count(d)) continue;
                    anc.insert(d);
                    anc.insert(ancestors[d].begin(), ancestors[d].end());
                }
            }
            for (long later : topo.order) {
                const PlanStep& b = *by_id[later];
                const auto rb = phase_rank(b.phase);
                for (long earlier : topo.order) {
                    const PlanStep& a = *by_id[earlier];
                    const auto ra = phase_rank(a.phase);
                    if (a.section != b.section || !ra || !rb || !(*ra < *rb) || ancestors[later].count(earlier)) continue;
                    add(PlanIssueKind::PhaseOrder,
                        fmt::format("step {} ({}) does not depend on step {} ({}) in section '{}'", later, b.phase,
                                    earlier, a.phase, b.section),
                        later);
                }
            }
        }
    }
    return report;
}

}  // namespace framecheck
