#include "framecheck/validators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <fmt/format.h>

#include "framecheck/errors.hpp"

namespace framecheck {

namespace {

constexpr std::array<std::string_view, 10> kTitles{
    "Load Path",          "Span Limits",        "O.C. Spacing",  "Std. Dimensions", "Deflection L/360",
    "Roof Coverage",      "Gap Detection",      "Cantilever Limits", "Stability Score", "Dual-End Connection",
};

// Cells count as occupied only with positive-area overlap beyond this slack.
constexpr double kOverlapSlack = 1e-9;
constexpr std::size_t kMaxGapCells = 32;

Violation make_violation(TestId test, std::string subject, std::string relation, Quantity limit, std::string quantity,
                         Quantity measured, std::vector<std::string> members = {}, std::string tag = {}) {
    Violation v;
    v.test = test;
    v.subject = std::move(subject);
    v.relation = std::move(relation);
    v.limit = std::move(limit);
    v.quantity = std::move(quantity);
    v.measured = std::move(measured);
    v.members = std::move(members);
    v.tag = std::move(tag);
    v.message = render_violation(v);
    return v;
}

TestResult finish(TestId id, std::vector<Violation> violations, std::optional<double> metric = std::nullopt) {
    TestResult r;
    r.id = id;
    r.pass = violations.empty();
    r.violations = std::move(violations);
    r.metric = metric;
    return r;
}

std::string join_members(const std::vector<std::string>& names) {
    if (names.empty()) return {};
    if (names.size() == 1) return " at " + names.front();
    std::string out = " between ";
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (i > 0) out += (i + 1 == names.size()) ? " and " : ", ";
        out += names[i];
    }
    return out;
}

// Long horizontal axis of a box: 0 (x) when dx >= dy, else 1 (y).
int long_axis(const Box3& b) { return b.extent(0) >= b.extent(1) ? 0 : 1; }

double interval_gap(double a_lo, double a_hi, double b_lo, double b_hi) {
    return std::max(0.0, std::max(a_lo, b_lo) - std::min(a_hi, b_hi));
}

}  // namespace

std::string test_label(TestId id) { return fmt::format("T{}", test_number(id)); }

std::string_view test_title(TestId id) { return kTitles[static_cast<std::size_t>(test_number(id) - 1)]; }

std::optional<TestId> test_from_label(std::string_view label) {
    for (TestId id : kAllTests) {
        if (test_label(id) == label) return id;
    }
    return std::nullopt;
}

std::string format_number(double value) {
    if (!std::isfinite(value)) return value > 0 ? "inf" : (value < 0 ? "-inf" : "nan");
    std::string s = fmt::format("{:.4g}", value);
    if (s.find_first_of(".e") == std::string::npos) s += ".0";
    return s;
}

std::string format_quantity(const Quantity& q) {
    if (q.unit == "count") return fmt::format("{}", static_cast<long long>(std::llround(q.value)));
    if (q.unit.empty()) return format_number(q.value);
    return format_number(q.value) + " " + q.unit;
}

std::string render_violation(const Violation& v) {
    std::string line = fmt::format("{} {} {}; detected {} {}", v.subject, v.relation, format_quantity(v.limit),
                                   v.quantity, format_quantity(v.measured));
    line += join_members(v.members);
    if (!v.tag.empty()) line += " (" + v.tag + ")";
    return line;
}

std::vector<TestId> SuiteReport::failed_tests() const {
    std::vector<TestId> out;
    for (TestId id : kAllTests) {
        if (!passed(id)) out.push_back(id);
    }
    return out;
}

std::vector<Violation> SuiteReport::violations() const {
    std::vector<Violation> out;
    for (const auto& r : results) out.insert(out.end(), r.violations.begin(), r.violations.end());
    return out;
}

// ---------------------------------------------------------------------------
// Cross-sections

LumberSize member_section_mm(const Member& m) {
    if (m.section) {
        const double a = m.section->width * 1000.0;
        const double b = m.section->depth * 1000.0;
        return {std::min(a, b), std::max(a, b)};
    }
    const auto e = m.box.sorted_extents();
    return {e[0] * 1000.0, e[1] * 1000.0};
}

LumberSize nearest_lumber(const LumberSize& section, const std::vector<LumberSize>& set) {
    if (set.empty()) throw ConfigError("lumber set is empty");
    LumberSize best = set.front();
    double best_d = std::numeric_limits<double>::infinity();
    for (const LumberSize& s : set) {
        const double d = std::hypot(section.width_mm - s.width_mm, section.depth_mm - s.depth_mm);
        if (d < best_d) {
            best_d = d;
            best = s;
        }
    }
    return best;
}

std::optional<LumberSize> match_standard(const LumberSize& section, const ValidationParams& p) {
    for (const LumberSize& s : p.lumber_set_Lambda) {
        if (std::abs(section.width_mm - s.width_mm) < p.lumber_tol_w &&
            std::abs(section.depth_mm - s.depth_mm) < p.lumber_tol_d) {
            return s;
        }
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// T1 / T9

TestResult t1_load_path(const Scene& scene, const SupportState& support) {
    std::vector<Violation> out;
    for (std::size_t i = 0; i < scene.members.size(); ++i) {
        if (support.supported[i]) continue;
        out.push_back(make_violation(TestId::T1, "Load path support", "below", {1, "count"}, "support", {0, "count"},
                                     {scene.members[i].name}, "no grounded load path"));
    }
    return finish(TestId::T1, std::move(out));
}

TestResult t1_load_path(const Scene& scene, const ValidationParams& p) {
    return t1_load_path(scene, compute_support(scene, p.contact));
}

TestResult t9_stability(const Scene& scene, const SupportState& support) {
    std::vector<Violation> out;
    // Exact count comparison, no floating tolerance.
    if (support.supported_count != scene.members.size()) {
        const std::size_t missing = scene.members.size() - support.supported_count;
        out.push_back(make_violation(TestId::T9, "Topological stability index", "below", {1.0, ""}, "index",
                                     {support.tsi, ""}, {},
                                     fmt::format("{} of {} members unsupported", missing, scene.members.size())));
    }
    return finish(TestId::T9, std::move(out), support.tsi);
}

TestResult t9_stability(const Scene& scene, const ValidationParams& p) {
    return t9_stability(scene, compute_support(scene, p.contact));
}

// ---------------------------------------------------------------------------
// T2

TestResult t2_span_limits(const Scene& scene, const SpanTable& table, const ValidationParams& p) {
    const bool purlin_present = std::any_of(scene.members.begin(), scene.members.end(),
                                            [](const Member& m) { return m.category == Category::Purlin; });
    std::vector<Violation> out;
    for (const Member& m : scene.members) {
        if (m.category != Category::Joist && m.category != Category::Rafter) continue;
        const bool joist = m.category == Category::Joist;
        const LumberSize nominal = nearest_lumber(member_section_mm(m), p.lumber_set_Lambda);
        const auto key = span_key(nominal);
        const auto allowable = table.allowable(joist ? SpanKind::Joist : SpanKind::Rafter, key);
        if (!allowable) {
            throw ConfigError(fmt::format("member '{}': section {} mm has no {} entry in the span table", m.name,
                                          span_key_string(key), joist ? "joist" : "rafter"));
        }
        const double span = member_span(m);
        const double effective = (!joist && purlin_present) ? span / 2.0 : span;
        const double limit = (1.0 + p.span_tolerance_tau) * *allowable;
        if (effective > limit) {
            out.push_back(make_violation(TestId::T2, joist ? "Joist span" : "Rafter effective span", "exceeds",
                                         {limit, "m"}, "span", {effective, "m"}, {m.name},
                                         fmt::format("{} allowable {} m", span_key_string(key), format_number(*allowable))));
        }
    }
    return finish(TestId::T2, std::move(out));
}

// ---------------------------------------------------------------------------
// T3

TestResult t3_oc_spacing(const Scene& scene, const ValidationParams& p) {
    struct Entry {
        std::size_t index;
        double z_lo, z_hi, position;
    };
    std::array<std::vector<Entry>, 2> by_direction;
    for (std::size_t i = 0; i < scene.members.size(); ++i) {
        const Member& m = scene.members[i];
        if (m.category != Category::Joist) continue;
        const int axis = long_axis(m.box);
        const Vec3 c = m.box.center();
        by_direction[axis].push_back({i, m.box.min.z, m.box.max.z, axis == 0 ? c.y : c.x});
    }

    std::string standards;
    for (double s : p.spacing_standards) standards += (standards.empty() ? "" : "/") + format_number(s);

    std::vector<Violation> out;
    for (auto& joists : by_direction) {
        std::sort(joists.begin(), joists.end(), [&](const Entry& a, const Entry& b) {
            if (a.z_lo != b.z_lo) return a.z_lo < b.z_lo;
            return scene.members[a.index].name < scene.members[b.index].name;
        });
        // Groups are connected components of overlapping vertical intervals.
        std::size_t start = 0;
        while (start < joists.size()) {
            std::size_t end = start + 1;
            double reach = joists[start].z_hi;
            while (end < joists.size() && joists[end].z_lo <= reach) {
                reach = std::max(reach, joists[end].z_hi);
                ++end;
            }
            std::vector<Entry> group(joists.begin() + static_cast<std::ptrdiff_t>(start),
                                     joists.begin() + static_cast<std::ptrdiff_t>(end));
            std::sort(group.begin(), group.end(), [&](const Entry& a, const Entry& b) {
                if (a.position != b.position) return a.position < b.position;
                return scene.members[a.index].name < scene.members[b.index].name;
            });
            for (std::size_t k = 0; k + 1 < group.size(); ++k) {
                const double s = group[k + 1].position - group[k].position;
                if (s <= p.spacing_exempt_below) continue;
                double deviation = std::numeric_limits<double>::infinity();
                for (double standard : p.spacing_standards) deviation = std::min(deviation, std::abs(s - standard));
                if (deviation < p.spacing_tolerance) continue;
                out.push_back(make_violation(
                    TestId::T3, fmt::format("Joist spacing deviation from {} m", standards), "reaches",
                    {p.spacing_tolerance, "m"}, "deviation", {deviation, "m"},
                    {scene.members[group[k].index].name, scene.members[group[k + 1].index].name},
                    fmt::format("spacing {} m", format_number(s))));
            }
            start = end;
        }
    }
    return finish(TestId::T3, std::move(out));
}

// ---------------------------------------------------------------------------
// T4

TestResult t4_standard_dimensions(const Scene& scene, const ValidationParams& p) {
    std::vector<Violation> out;
    for (const Member& m : scene.members) {
        const LumberSize section = member_section_mm(m);
        const std::string dims = fmt::format("{}x{} mm", format_number(section.width_mm), format_number(section.depth_mm));

        if (!match_standard(section, p)) {
            // Report against the closest pair in tolerance-normalised distance.
            const LumberSize* best = nullptr;
            double best_score = std::numeric_limits<double>::infinity();
            for (const LumberSize& s : p.lumber_set_Lambda) {
                const double score = std::max(std::abs(section.width_mm - s.width_mm) / p.lumber_tol_w,
                                              std::abs(section.depth_mm - s.depth_mm) / p.lumber_tol_d);
                if (score < best_score) {
                    best_score = score;
                    best = &s;
                }
            }
            const double dw = best ? std::abs(section.width_mm - best->width_mm) : 0.0;
            const double dd = best ? std::abs(section.depth_mm - best->depth_mm) : 0.0;
            const bool width_bad = dw >= p.lumber_tol_w;
            const std::string nominal =
                best ? fmt::format("{}x{}", format_number(best->width_mm), format_number(best->depth_mm)) : "?";
            out.push_back(make_violation(TestId::T4,
                                         fmt::format("Cross-section {} {} vs standard {}", dims,
                                                     width_bad ? "width" : "depth", nominal),
                                         "deviation reaches",
                                         {width_bad ? p.lumber_tol_w : p.lumber_tol_d, "mm"}, "deviation",
                                         {width_bad ? dw : dd, "mm"}, {m.name}));
            continue;
        }

        if (m.section) {
            // A declared section must fit the box it claims to describe.
            const auto e = m.box.sorted_extents();
            const double thin = e[0] * 1000.0;
            const double room = e[1] * 1000.0;
            const double dw = std::abs(section.width_mm - thin);
            if (dw >= p.lumber_tol_w) {
                out.push_back(make_violation(TestId::T4, "Declared section width vs box thickness", "differs by at least",
                                             {p.lumber_tol_w, "mm"}, "difference", {dw, "mm"}, {m.name}));
            } else if (section.depth_mm >= room + p.lumber_tol_d) {
                out.push_back(make_violation(TestId::T4, "Declared section depth vs box", "overruns by at least",
                                             {p.lumber_tol_d, "mm"}, "overrun", {section.depth_mm - room, "mm"},
                                             {m.name}));
            }
        }
    }
    return finish(TestId::T4, std::move(out));
}

// ---------------------------------------------------------------------------
// T5

DeflectionCheck joist_deflection(const Member& joist, const ValidationParams& p) {
    DeflectionCheck c;
    c.width_b = std::min(joist.box.extent(Axis::X), joist.box.extent(Axis::Y));
    c.height_h = joist.box.extent(Axis::Z);
    c.span_L = member_span(joist);
    c.limit = (1.0 + p.deflection_tolerance_tau_delta) * c.span_L / 360.0;
    if (!(c.width_b > 0.0) || !(c.height_h > 0.0)) {
        c.degenerate = true;
        c.deflection = std::numeric_limits<double>::infinity();
        c.pass = false;
        return c;
    }
    c.inertia_I = c.width_b * c.height_h * c.height_h * c.height_h / 12.0;
    const double L2 = c.span_L * c.span_L;
    c.deflection = 5.0 * p.deflection_load_w * L2 * L2 / (384.0 * p.elastic_modulus_E * c.inertia_I);
    c.pass = c.deflection <= c.limit;
    return c;
}

TestResult t5_deflection(const Scene& scene, const ValidationParams& p) {
    std::vector<Violation> out;
    for (const Member& m : scene.members) {
        if (m.category != Category::Joist) continue;
        const DeflectionCheck c = joist_deflection(m, p);
        if (c.degenerate) {
            out.push_back(make_violation(TestId::T5, "Joist moment of inertia", "must exceed", {0.0, "m^4"}, "inertia",
                                         {0.0, "m^4"}, {m.name}, "degenerate section"));
        } else if (!c.pass) {
            out.push_back(make_violation(TestId::T5, "Joist mid-span deflection", "exceeds", {c.limit, "m"},
                                         "deflection", {c.deflection, "m"}, {m.name},
                                         fmt::format("span {} m", format_number(c.span_L))));
        }
    }
    return finish(TestId::T5, std::move(out));
}

// ---------------------------------------------------------------------------
// T6 / T7

bool is_footprint_category(Category c) {
    switch (c) {
        case Category::Sill:
        case Category::Rim:
        case Category::Joist:
        case Category::CenterBeam:
        case Category::SolePlate: return true;
        default: return false;
    }
}

double CoverageGrid::rho() const {
    return footprint_cells == 0 ? 1.0 : static_cast<double>(covered_cells) / static_cast<double>(footprint_cells);
}

double CoverageGrid::gamma() const {
    return footprint_cells == 0
               ? 0.0
               : static_cast<double>(footprint_cells - covered_cells) / static_cast<double>(footprint_cells);
}

CoverageGrid coverage_grid(const Scene& scene, const ValidationParams& p) {
    CoverageGrid g;
    g.cell = p.grid_cell;

    double x_lo = std::numeric_limits<double>::infinity();
    double y_lo = x_lo;
    double x_hi = -x_lo;
    double y_hi = -x_lo;
    for (const Member& m : scene.members) {
        if (!is_footprint_category(m.category)) continue;
        x_lo = std::min(x_lo, m.box.min.x);
        y_lo = std::min(y_lo, m.box.min.y);
        x_hi = std::max(x_hi, m.box.max.x);
        y_hi = std::max(y_hi, m.box.max.y);
    }
    if (!(x_lo <= x_hi)) return g;  // no footprint members

    // Cells are anchored at the footprint's minimum corner.
    g.origin_x = x_lo;
    g.origin_y = y_lo;
    const auto nx = static_cast<std::size_t>(std::max(1.0, std::ceil((x_hi - x_lo) / g.cell)));
    const auto ny = static_cast<std::size_t>(std::max(1.0, std::ceil((y_hi - y_lo) / g.cell)));
    std::vector<unsigned char> footprint(nx * ny, 0);
    std::vector<unsigned char> covered(nx * ny, 0);

    auto mark = [&](std::vector<unsigned char>& grid, double ax, double ay, double bx, double by) {
        // Cell i spans [origin + i*cell, origin + (i+1)*cell]; positive-area overlap only.
        auto range = [&](double lo, double hi, double origin, std::size_t n) {
            long first = static_cast<long>(std::floor((lo - origin) / g.cell)) - 1;
            long last = static_cast<long>(std::ceil((hi - origin) / g.cell)) + 1;
            first = std::max(first, 0L);
            last = std::min(last, static_cast<long>(n) - 1);
            std::pair<long, long> out{1, 0};
            for (long i = first; i <= last; ++i) {
                const double c_lo = origin + static_cast<double>(i) * g.cell;
                const double c_hi = c_lo + g.cell;
                if (lo < c_hi - kOverlapSlack && hi > c_lo + kOverlapSlack) {
                    if (out.first > out.second) out.first = i;
                    out.second = i;
                }
            }
            return out;
        };
        const auto [i0, i1] = range(ax, bx, g.origin_x, nx);
        const auto [j0, j1] = range(ay, by, g.origin_y, ny);
        for (long j = j0; j <= j1; ++j) {
            for (long i = i0; i <= i1; ++i) grid[static_cast<std::size_t>(j) * nx + static_cast<std::size_t>(i)] = 1;
        }
    };

    for (const Member& m : scene.members) {
        if (is_footprint_category(m.category)) mark(footprint, m.box.min.x, m.box.min.y, m.box.max.x, m.box.max.y);
    }
    const double mu = p.rafter_margin_mu;
    for (const Member& m : scene.members) {
        if (m.category != Category::Rafter) continue;
        mark(covered, m.box.min.x - mu, m.box.min.y - mu, m.box.max.x + mu, m.box.max.y + mu);
    }

    for (std::size_t j = 0; j < ny; ++j) {
        for (std::size_t i = 0; i < nx; ++i) {
            const std::size_t k = j * nx + i;
            if (!footprint[k]) continue;
            ++g.footprint_cells;
            if (covered[k]) {
                ++g.covered_cells;
            } else {
                g.gap_cells.push_back({g.origin_x + (static_cast<double>(i) + 0.5) * g.cell,
                                       g.origin_y + (static_cast<double>(j) + 0.5) * g.cell});
            }
        }
    }
    return g;
}

TestResult t6_roof_coverage(const CoverageGrid& grid, const ValidationParams& p) {
    const double rho = grid.rho();
    std::vector<Violation> out;
    if (rho < p.coverage_min_rho) {
        out.push_back(make_violation(TestId::T6, "Roof coverage ratio", "below", {p.coverage_min_rho, ""}, "ratio",
                                     {rho, ""}, {},
                                     fmt::format("{} of {} footprint cells under rafters", grid.covered_cells,
                                                 grid.footprint_cells)));
    }
    return finish(TestId::T6, std::move(out), rho);
}

TestResult t6_roof_coverage(const Scene& scene, const ValidationParams& p) {
    return t6_roof_coverage(coverage_grid(scene, p), p);
}

TestResult t7_gap_detection(const CoverageGrid& grid, const ValidationParams& p) {
    const double gamma = grid.gamma();
    std::vector<Violation> out;
    if (gamma > p.gap_max_gamma) {
        Violation v = make_violation(TestId::T7, "Roof gap ratio", "exceeds", {p.gap_max_gamma, ""}, "ratio",
                                     {gamma, ""}, {},
                                     fmt::format("{} uncovered footprint cells", grid.footprint_cells - grid.covered_cells));
        v.cells.assign(grid.gap_cells.begin(),
                       grid.gap_cells.begin() + static_cast<std::ptrdiff_t>(std::min(kMaxGapCells, grid.gap_cells.size())));
        out.push_back(std::move(v));
    }
    return finish(TestId::T7, std::move(out), gamma);
}

TestResult t7_gap_detection(const Scene& scene, const ValidationParams& p) {
    return t7_gap_detection(coverage_grid(scene, p), p);
}

// ---------------------------------------------------------------------------
// T8

TestResult t8_cantilever(const Scene& scene, const ValidationParams& p) {
    std::vector<std::size_t> supports;
    for (std::size_t i = 0; i < scene.members.size(); ++i) {
        if (is_grounded(scene.members[i].box, p.contact)) supports.push_back(i);
    }

    std::vector<Violation> out;
    for (std::size_t s = 0; s < scene.members.size(); ++s) {
        const Member& sill = scene.members[s];
        if (sill.category != Category::Sill || !(sill.box.min.z > p.elevated_sill_z)) continue;

        struct Nearby {
            std::size_t index;
            double distance;
            double along;
        };
        const int axis = long_axis(sill.box);
        std::vector<Nearby> nearby;
        double nearest = std::numeric_limits<double>::infinity();
        std::size_t nearest_index = 0;
        for (std::size_t i : supports) {
            if (i == s) continue;
            const Box3& b = scene.members[i].box;
            const double d = std::hypot(axis_gap(b, sill.box, 0), axis_gap(b, sill.box, 1));
            if (d < nearest) {
                nearest = d;
                nearest_index = i;
            }
            if (d <= p.cantilever_max_c) nearby.push_back({i, d, b.center()[axis]});
        }

        const double length = member_span(sill);
        if (length > p.cantilever_spacing_c_sp) {
            if (nearby.size() < 2) {
                out.push_back(make_violation(TestId::T8, "Elevated sill nearby supports", "below", {2, "count"},
                                             "supports", {static_cast<double>(nearby.size()), "count"}, {sill.name},
                                             fmt::format("length {} m", format_number(length))));
                continue;
            }
            std::sort(nearby.begin(), nearby.end(), [&](const Nearby& a, const Nearby& b) {
                if (a.along != b.along) return a.along < b.along;
                return scene.members[a.index].name < scene.members[b.index].name;
            });
            double worst = -1.0;
            std::size_t at = 0;
            for (std::size_t k = 0; k + 1 < nearby.size(); ++k) {
                const double gap = nearby[k + 1].along - nearby[k].along;
                if (gap > worst) {
                    worst = gap;
                    at = k;
                }
            }
            if (worst > p.cantilever_spacing_c_sp) {
                const Member& a = scene.members[nearby[at].index];
                const Member& b = scene.members[nearby[at + 1].index];
                out.push_back(make_violation(TestId::T8, fmt::format("{} gap", category_name(a.category)), "exceeds",
                                             {p.cantilever_spacing_c_sp, "m"}, "spacing", {worst, "m"},
                                             {a.name, b.name}, fmt::format("under {}", sill.name)));
            }
        } else if (!std::isfinite(nearest)) {
            out.push_back(make_violation(TestId::T8, "Elevated sill ground supports", "below", {1, "count"}, "supports",
                                         {0, "count"}, {sill.name}));
        } else if (nearest > p.cantilever_max_c) {
            out.push_back(make_violation(TestId::T8, "Elevated sill nearest support distance", "exceeds",
                                         {p.cantilever_max_c, "m"}, "distance", {nearest, "m"},
                                         {sill.name, scene.members[nearest_index].name}));
        }
    }
    return finish(TestId::T8, std::move(out));
}

// ---------------------------------------------------------------------------
// T10

TestResult t10_dual_end(const Scene& scene, const ValidationParams& p) {
    const double tol = p.zone_tolerance_eps_c;
    std::vector<Violation> out;
    for (std::size_t i = 0; i < scene.members.size(); ++i) {
        const Member& m = scene.members[i];
        const bool rafter = m.category == Category::Rafter;
        if (!rafter && m.category != Category::Stud) continue;
        const double h = m.box.extent(Axis::Z);
        if (h < p.min_dualend_height) continue;

        const double bot_lo = m.box.min.z;
        const double bot_hi = m.box.min.z + p.zone_fraction_alpha * h;
        const double top_lo = m.box.max.z - p.zone_fraction_alpha * h;
        const double top_hi = m.box.max.z;
        bool bottom = false;
        bool top = false;
        for (std::size_t j = 0; j < scene.members.size() && !(bottom && top); ++j) {
            if (j == i) continue;
            const Box3& o = scene.members[j].box;
            if (axis_gap(o, m.box, 0) > tol || axis_gap(o, m.box, 1) > tol) continue;
            if (!bottom && interval_gap(o.min.z, o.max.z, bot_lo, bot_hi) <= tol) bottom = true;
            if (!top && interval_gap(o.min.z, o.max.z, top_lo, top_hi) <= tol) top = true;
        }

        const std::string_view kind = category_name(m.category);
        if (!bottom) {
            out.push_back(make_violation(TestId::T10, fmt::format("{} bottom-zone connections", kind), "below",
                                         {1, "count"}, "connections", {0, "count"}, {m.name},
                                         rafter ? "free end" : "floating column"));
        }
        if (!top) {
            out.push_back(make_violation(TestId::T10, fmt::format("{} top-zone connections", kind), "below",
                                         {1, "count"}, "connections", {0, "count"}, {m.name},
                                         rafter ? "hinge failure" : "free end"));
        }
    }
    return finish(TestId::T10, std::move(out));
}

// ---------------------------------------------------------------------------

SuiteReport run_suite(const Scene& scene, const SpanTable& table, const ValidationParams& p) {
    const SupportState support = compute_support(scene, p.contact);
    const CoverageGrid grid = coverage_grid(scene, p);

    SuiteReport report;
    report.results = {
        t1_load_path(scene, support),   t2_span_limits(scene, table, p), t3_oc_spacing(scene, p),
        t4_standard_dimensions(scene, p), t5_deflection(scene, p),       t6_roof_coverage(grid, p),
        t7_gap_detection(grid, p),      t8_cantilever(scene, p),         t9_stability(scene, support),
        t10_dual_end(scene, p),
    };
    report.tsi = support.tsi;
    report.overall_pass = std::all_of(report.results.begin(), report.results.end(),
                                      [](const TestResult& r) { return r.pass; });
    return report;
}

std::string format_feedback(std::vector<Violation> violations) {
    std::stable_sort(violations.begin(), violations.end(), [](const Violation& a, const Violation& b) {
        if (a.test != b.test) return a.test < b.test;
        const std::string& ma = a.members.empty() ? std::string{} : a.members.front();
        const std::string& mb = b.members.empty() ? std::string{} : b.members.front();
        if (ma != mb) return ma < mb;
        return a.message < b.message;
    });
    std::string text;
    for (const Violation& v : violations) {
        text += v.message;
        text += '\n';
    }
    return text;
}

std::string format_feedback(const SuiteReport& report) { return format_feedback(report.violations()); }

}  // namespace framecheck
