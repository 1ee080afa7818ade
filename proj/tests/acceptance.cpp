// Acceptance gate: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <fmt/core.h>

#include "framecheck/cli.hpp"
#include "framecheck/contact.hpp"
#include "framecheck/corpus.hpp"
#include "framecheck/fidelity.hpp"
#include "framecheck/fixtures.hpp"
#include "framecheck/plan.hpp"
#include "framecheck/render.hpp"
#include "framecheck/scene_io.hpp"
#include "framecheck/validators.hpp"
#include "support.hpp"

using namespace framecheck;
using fctest::make_member;
using fctest::make_scene;

namespace {

struct Outcome {
    bool ok = false;
    std::string detail;
};

using Rng = std::mt19937_64;

double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }
int uniform_int(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

FixtureSpec random_spec(Rng& rng) {
    FixtureSpec s;
    s.width = uniform(rng, 2.0, 14.0);
    s.depth = uniform(rng, 2.0, 9.5);
    s.stories = uniform_int(rng, 1, 3);
    s.roof_pitch_ratio = uniform(rng, 0.4, 1.0);
    return s;
}

std::string describe(const FixtureSpec& s) {
    return fmt::format("{:.3f}x{:.3f} m, {} stories, pitch {:.3f}", s.width, s.depth, s.stories, s.roof_pitch_ratio);
}

// 1 ---------------------------------------------------------------------------

Outcome suite_soundness() {
    Rng rng(1001);
    const ValidationParams p;
    const auto start = std::chrono::steady_clock::now();
    int passed = 0;
    std::string first_failure;
    for (int i = 0; i < 200; ++i) {
        const FixtureSpec spec = random_spec(rng);
        const SuiteReport r = run_suite(generate_gable(spec), fixture_span_table(), p);
        if (r.overall_pass) {
            ++passed;
        } else if (first_failure.empty()) {
            first_failure = describe(spec);
        }
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::string detail = fmt::format("{}/200 fixtures pass all ten tests in {:.2f} s (budget 10 s)", passed, seconds);
    if (!first_failure.empty()) detail += "; first failure " + first_failure;
    return {passed == 200 && seconds <= 10.0, detail};
}

// 2 ---------------------------------------------------------------------------

Outcome mutation_kill_matrix() {
    Rng rng(2002);
    const ValidationParams p;
    int missed = 0;
    int outside = 0;
    std::vector<std::string> cells;
    std::string first_problem;
    for (MutationKind kind : kAllMutations) {
        const MutationProfile profile = mutation_profile(kind);
        const std::set<TestId> closure(profile.closure.begin(), profile.closure.end());
        int killed = 0;
        for (int i = 0; i < 20; ++i) {
            const Scene fixture = generate_gable(random_spec(rng));
            const auto targets = canonical_targets(fixture, kind);
            const auto pick = std::uniform_int_distribution<std::size_t>(0, targets.size() - 1)(rng);
            Mutation m{kind, targets[pick], std::nullopt};
            if (profile.max_magnitude > 0) m.magnitude = uniform(rng, profile.min_magnitude, profile.max_magnitude);
            const SuiteReport r = run_suite(apply_mutation(fixture, m), fixture_span_table(), p);

            bool all_targets = true;
            for (TestId id : profile.targets) {
                if (r.passed(id)) {
                    all_targets = false;
                    ++missed;
                    if (first_problem.empty()) {
                        first_problem = fmt::format("{} on {} did not fail {}", mutation_name(kind), m.target,
                                                    test_label(id));
                    }
                }
            }
            for (TestId id : r.failed_tests()) {
                if (!closure.count(id)) {
                    ++outside;
                    if (first_problem.empty()) {
                        first_problem = fmt::format("{} on {} also failed {}", mutation_name(kind), m.target,
                                                    test_label(id));
                    }
                }
            }
            if (all_targets) ++killed;
        }
        cells.push_back(fmt::format("{} {}/20", mutation_name(kind), killed));
    }
    std::string detail = fmt::format("{} missed targets, {} failures outside closure; ", missed, outside);
    for (std::size_t i = 0; i < cells.size(); ++i) detail += (i ? ", " : "") + cells[i];
    if (!first_problem.empty()) detail += "; first problem: " + first_problem;
    return {missed == 0 && outside == 0, detail};
}

// 3 ---------------------------------------------------------------------------

// Independent statement of the contact relation: the intervals, each widened
// by eps, intersect on every axis.
bool oracle_contact(const Box3& a, const Box3& b, double eps) {
    for (int k = 0; k < 3; ++k) {
        if (a.min[k] > b.max[k] + eps || b.min[k] > a.max[k] + eps) return false;
    }
    return true;
}

std::vector<bool> oracle_supported(const Scene& s, const ContactParams& p) {
    const std::size_t n = s.members.size();
    // Transitive closure of the contact graph (Warshall), then reachability from the ground set.
    std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            reach[i][j] = i == j || oracle_contact(s.members[i].box, s.members[j].box, p.contact_tolerance_eps);
        }
    }
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t i = 0; i < n; ++i) {
            if (!reach[i][k]) continue;
            for (std::size_t j = 0; j < n; ++j) {
                if (reach[k][j]) reach[i][j] = true;
            }
        }
    }
    std::vector<bool> out(n, false);
    for (std::size_t g = 0; g < n; ++g) {
        if (!(s.members[g].box.min.z < p.ground_height)) continue;
        for (std::size_t j = 0; j < n; ++j) {
            if (reach[g][j]) out[j] = true;
        }
    }
    return out;
}

Scene random_block_scene(Rng& rng, int n) {
    std::vector<Member> ms;
    for (int i = 0; i < n; ++i) {
        Vec3 lo{uniform(rng, 0.0, 3.0), uniform(rng, 0.0, 3.0), uniform(rng, 0.0, 3.0)};
        Vec3 hi{lo.x + uniform(rng, 0.05, 1.5), lo.y + uniform(rng, 0.05, 1.5), lo.z + uniform(rng, 0.05, 1.0)};
        // Some members sit exactly on, or just inside the tolerance of, an earlier one.
        if (i > 0 && uniform(rng, 0, 1) < 0.4) {
            const Box3& other = ms[static_cast<std::size_t>(uniform_int(rng, 0, i - 1))].box;
            const double h = hi.z - lo.z;
            lo.z = other.max.z + (uniform(rng, 0, 1) < 0.5 ? 0.0 : uniform(rng, 0.0, 0.08));
            hi.z = lo.z + h;
        }
        ms.push_back(make_member("Stud_" + std::to_string(i), lo, hi));
    }
    return make_scene(ms);
}

Outcome support_oracle() {
    Rng rng(3003);
    const ContactParams p;
    int mismatches = 0;
    int partial = 0;
    for (int trial = 0; trial < 500; ++trial) {
        const Scene s = random_block_scene(rng, uniform_int(rng, 0, 12));
        const SupportState st = compute_support(s, p);
        const std::vector<bool> expected = oracle_supported(s, p);
        if (st.supported != expected) ++mismatches;
        const auto count = static_cast<std::size_t>(std::count(expected.begin(), expected.end(), true));
        if (count != st.supported_count) ++mismatches;
        if (count > 0 && count < expected.size()) ++partial;
    }
    return {mismatches == 0,
            fmt::format("500 scenes of 0-12 members, {} mismatches ({} with partial support)", mismatches, partial)};
}

// 4 ---------------------------------------------------------------------------

double exhaustive_match(const Scene& ref, const Scene& gen, double delta) {
    const std::size_t n = ref.members.size();
    const std::size_t m = gen.members.size();
    auto centre = [](const Member& x) {
        return Vec3{(x.box.min.x + x.box.max.x) * 0.5, (x.box.min.y + x.box.max.y) * 0.5,
                    (x.box.min.z + x.box.max.z) * 0.5};
    };
    std::vector<std::vector<double>> d(n, std::vector<double>(m));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            const Vec3 a = centre(ref.members[i]);
            const Vec3 b = centre(gen.members[j]);
            d[i][j] = std::sqrt((a.x - b.x) * (a.x - b.x) + (a.y - b.y) * (a.y - b.y) + (a.z - b.z) * (a.z - b.z));
        }
    }
    // Permute the larger side; its first min(n, m) entries pair with the smaller side.
    const bool ref_small = n <= m;
    std::vector<std::size_t> perm(ref_small ? m : n);
    std::iota(perm.begin(), perm.end(), 0);
    const std::size_t k = std::min(n, m);
    double best = std::numeric_limits<double>::infinity();
    std::size_t best_within = 0;
    do {
        double cost = 0;
        std::size_t within = 0;
        for (std::size_t t = 0; t < k; ++t) {
            const double c = ref_small ? d[t][perm[t]] : d[perm[t]][t];
            cost += c;
            if (c <= delta) ++within;
        }
        if (cost < best) {
            best = cost;
            best_within = within;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return static_cast<double>(best_within) / static_cast<double>(n);
}

Scene random_centroids(Rng& rng, int n) {
    std::vector<Member> ms;
    for (int i = 0; i < n; ++i) {
        const Vec3 c{uniform(rng, 0, 1.5), uniform(rng, 0, 1.5), uniform(rng, 0, 1.5)};
        ms.push_back(make_member("Post_" + std::to_string(i), {c.x - 0.07, c.y - 0.07, c.z - 0.5},
                                 {c.x + 0.07, c.y + 0.07, c.z + 0.5}));
    }
    return make_scene(ms);
}

Outcome hungarian_oracle() {
    Rng rng(4004);
    const FidelityParams p;
    int mismatches = 0;
    int fractional = 0;
    for (int trial = 0; trial < 300; ++trial) {
        const Scene ref = random_centroids(rng, uniform_int(rng, 1, 7));
        Scene gen = random_centroids(rng, uniform_int(rng, 1, 7));
        // Pull part of the generated set near reference centroids so matches fall both sides of delta.
        for (std::size_t j = 0; j < gen.members.size() && j < ref.members.size(); ++j) {
            if (uniform(rng, 0, 1) < 0.6) {
                const Vec3 c = ref.members[j].box.center();
                const Vec3 off{uniform(rng, -0.25, 0.25), uniform(rng, -0.25, 0.25), uniform(rng, -0.25, 0.25)};
                const Vec3 g = gen.members[j].box.center();
                gen.members[j].box = gen.members[j].box.translated({c.x + off.x - g.x, c.y + off.y - g.y, c.z + off.z - g.z});
            }
        }
        const double got = hungarian_match(ref, gen, p);
        const double want = exhaustive_match(ref, gen, p.match_tolerance_delta);
        if (got != want) ++mismatches;
        if (want > 0 && want < 1) ++fractional;
    }
    return {mismatches == 0,
            fmt::format("300 instances of 1-7 members per side, {} mismatches ({} with 0 < M < 1)", mismatches,
                        fractional)};
}

// 5 ---------------------------------------------------------------------------

Outcome deflection_formula() {
    const ValidationParams p;
    bool ok = true;
    std::string detail;
    for (const auto& [length, expect_pass] : {std::pair{3.5, true}, std::pair{4.5, false}}) {
        const Member joist = make_member("Joist_1", {0, 0, 0}, {length, 0.038, 0.235});
        const DeflectionCheck c = joist_deflection(joist, p);

        const double b = 0.038, h = 0.235, w = 1900.0, e = 12e9;
        const double inertia = b * h * h * h / 12.0;
        const double expected = 5.0 * w * std::pow(length, 4) / (384.0 * e * inertia);
        const double limit = 1.08 * length / 360.0;
        const double rel = std::abs(c.deflection - expected) / expected;

        const bool suite_pass = t5_deflection(make_scene({joist}), p).pass;
        const bool case_ok = rel < 1e-12 && c.pass == expect_pass && suite_pass == expect_pass &&
                             (expected <= limit) == expect_pass && std::abs(c.limit - limit) < 1e-15;
        ok = ok && case_ok;
        detail += fmt::format("{}L={} m: delta {:.5f} m vs {:.5f} limit, rel err {:.1e}, {}", detail.empty() ? "" : "; ",
                              length, c.deflection, c.limit, rel, c.pass ? "pass" : "fail");
    }
    return {ok, detail};
}

// 6 ---------------------------------------------------------------------------

// `mask` foreground pixels on both images; `hits` of them differ by 1.0 in red.
double anchor_mse_score(int mask, int hits, double* mse_out) {
    const FidelityParams p;
    std::vector<RasterView> gen, ref;
    for (ViewId v : kAllViews) {
        RasterView a(v, kScoringSize, kScoringSize), b(v, kScoringSize, kScoringSize);
        for (int i = 0; i < mask; ++i) {
            const int x = i % kScoringSize, y = i / kScoringSize;
            const bool hit = i < hits;
            a.set(x, y, hit ? 1.0f : 0.25f, 0.5f, 0.75f, 1.0f);
            b.set(x, y, hit ? 0.0f : 0.25f, 0.5f, 0.75f, 1.0f);
        }
        gen.push_back(std::move(a));
        ref.push_back(std::move(b));
    }
    *mse_out = masked_mse(gen[0], ref[0], p);
    const VisualScores vs = visual_scores(gen, ref, p);
    for (double s : vs.per_view) {
        if (s != vs.per_view[0]) return -1.0;
    }
    return vs.per_view[0];
}

Outcome visual_anchors() {
    struct Anchor {
        int mask, hits;
        double mse, score;
    };
    const std::vector<Anchor> anchors{{10, 0, 0.0, 1.0},  {10, 1, 0.1, 0.0},  {20, 1, 0.05, 0.5},
                                      {40, 1, 0.025, 0.75}, {40, 3, 0.075, 0.25}, {5, 1, 0.2, 0.0}};
    bool ok = true;
    std::string detail;
    for (const Anchor& a : anchors) {
        double mse = 0;
        const double s = anchor_mse_score(a.mask, a.hits, &mse);
        const bool good = std::abs(mse - a.mse) <= 1e-9 && std::abs(s - a.score) <= 1e-9;
        ok = ok && good;
        detail += fmt::format("{}MSE {} -> S {}", detail.empty() ? "" : ", ", format_number(mse), format_number(s));
    }
    return {ok, detail};
}

// 7 ---------------------------------------------------------------------------

Outcome metric_identities() {
    Rng rng(7007);
    const FidelityParams p;
    std::vector<FixtureSpec> specs{FixtureSpec{}};
    for (int i = 0; i < 11; ++i) specs.push_back(random_spec(rng));
    int ok_count = 0;
    std::string first_failure;
    for (const FixtureSpec& spec : specs) {
        const Scene s = generate_gable(spec);
        const TopoScores t = topo_scores(s, s, p);
        const auto views = render_views(s);
        const VisualScores v = visual_scores(views, views, p);
        const bool structural = run_suite(s, fixture_span_table(), ValidationParams{}).overall_pass;
        const bool all_one = std::all_of(v.per_view.begin(), v.per_view.end(), [](double x) { return x == 1.0; });
        const bool ok = t.census_C == 1.0 && t.match_M == 1.0 && t.voxel_V == 1.0 && t.composite_T == 1.0 && all_one &&
                        v.joint_visual_pass && v.mean_S == 1.0 && structural;
        if (ok) {
            ++ok_count;
        } else if (first_failure.empty()) {
            first_failure = fmt::format("{}: C {} M {} V {} T {} S {}", describe(spec), t.census_C, t.match_M,
                                        t.voxel_V, t.composite_T, v.mean_S);
        }
    }
    std::string detail =
        fmt::format("{}/{} fixtures give C = M = V = T = 1 and S_v = 1 on all five rendered views", ok_count,
                    specs.size());
    if (!first_failure.empty()) detail += "; first failure " + first_failure;
    return {ok_count == static_cast<int>(specs.size()), detail};
}

// 8 ---------------------------------------------------------------------------

Scene random_coverage_scene(Rng& rng) {
    std::vector<Member> ms;
    const double w = uniform(rng, 2, 10), d = uniform(rng, 2, 10);
    const int parts = uniform_int(rng, 1, 4);
    for (int i = 0; i < parts; ++i) {
        const double x0 = uniform(rng, 0, w - 1), y0 = uniform(rng, 0, d - 1);
        const char* name = i % 2 ? "Joist_" : "Sill_";
        ms.push_back(make_member(name + std::to_string(i), {x0, y0, 0.2},
                                 {uniform(rng, x0 + 0.5, w), uniform(rng, y0 + 0.5, d), 0.4}));
    }
    // Rafter density spans sparse to full so both verdicts occur.
    const double density = uniform(rng, 0, 1);
    const int rafters = static_cast<int>(density * 40);
    for (int i = 0; i < rafters; ++i) {
        const double x0 = uniform(rng, -0.5, w), y0 = uniform(rng, -0.5, d);
        ms.push_back(make_member("Rafter_" + std::to_string(i), {x0, y0, 3},
                                 {x0 + uniform(rng, 0.04, 3), y0 + uniform(rng, 0.04, d), 3.5}));
    }
    return make_scene(ms);
}

Outcome t7_implies_t6() {
    Rng rng(8008);
    const ValidationParams p;
    int counterexamples = 0, t7_pass = 0, t6_only = 0, inconsistent = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        const Scene s = random_coverage_scene(rng);
        const CoverageGrid g = coverage_grid(s, p);
        const bool six = t6_roof_coverage(s, p).pass;
        const bool seven = t7_gap_detection(s, p).pass;
        if (six != t6_roof_coverage(g, p).pass || seven != t7_gap_detection(g, p).pass) ++inconsistent;
        if (seven && !six) ++counterexamples;
        if (seven) ++t7_pass;
        if (six && !seven) ++t6_only;
    }
    return {counterexamples == 0 && inconsistent == 0 && t7_pass > 0 && t6_only > 0,
            fmt::format("1000 grids: {} counterexamples, {} pass T7, {} pass T6 only", counterexamples, t7_pass,
                        t6_only)};
}

// 9 ---------------------------------------------------------------------------

Outcome corpus_determinism() {
    Rng rng(9009);
    fctest::TempDir dir("acceptance_corpus");
    for (int i = 0; i < 100; ++i) {
        const auto path = dir.path() / fmt::format("scene_{:03}.json", i);
        if (i % 25 == 24) {
            std::ofstream(path) << "{\"members\": [";
            continue;
        }
        FixtureSpec spec = random_spec(rng);
        spec.width = uniform(rng, 2.0, 7.0);
        spec.depth = uniform(rng, 2.0, 6.0);
        spec.stories = 1;
        Scene s = generate_gable(spec);
        if (i % 3 != 0) {
            const MutationKind kind = kAllMutations[static_cast<std::size_t>(i) % kAllMutations.size()];
            const MutationProfile profile = mutation_profile(kind);
            const auto targets = canonical_targets(s, kind);
            Mutation m{kind, targets[static_cast<std::size_t>(i) % targets.size()], std::nullopt};
            if (profile.max_magnitude > 0) m.magnitude = profile.min_magnitude;
            s = apply_mutation(s, m);
        }
        save_scene(s, path);
    }
    const ValidationParams p;
    const unsigned many = std::max(4u, std::thread::hardware_concurrency());
    const std::string serial = corpus_jsonl(run_corpus(dir.path(), fixture_span_table(), p, 1));
    bool same = true;
    for (int rep = 0; rep < 3; ++rep) {
        same = same && corpus_jsonl(run_corpus(dir.path(), fixture_span_table(), p, many)) == serial;
    }

    auto cli_run = [&](unsigned workers) {
        std::ostringstream out, err;
        run_cli({"corpus", dir.path().string(), "--json", "--workers", std::to_string(workers), "--span-table",
                 FRAMECHECK_REPO_DATA "/fixture_span_table.json"},
                out, err);
        return out.str();
    };
    const std::string cli_serial = cli_run(1);
    const bool cli_same = !cli_serial.empty() && cli_run(many) == cli_serial;
    const auto lines = std::count(serial.begin(), serial.end(), '\n');
    return {same && cli_same, fmt::format("100 scenes, {} output lines, 1 vs {} workers: library {}, CLI {}", lines,
                                          many, same ? "identical" : "DIFFERENT", cli_same ? "identical" : "DIFFERENT")};
}

// 10 --------------------------------------------------------------------------

Outcome plan_checker_cases() {
    const std::string base = read_text_file(FRAMECHECK_TEST_DATA "/plan_gable.json");
    const PlanContext ctx{7.0, 5.0, 1, RoofType::Gable};
    auto edit = [&](const std::string& from, const std::string& to) {
        std::string text = base;
        const auto at = text.find(from);
        if (at == std::string::npos) throw std::runtime_error("plan edit anchor not found: " + from);
        return text.replace(at, from.size(), to);
    };
    struct Case {
        std::string name;
        std::string text;
        PlanIssueKind expected;
    };
    const std::vector<Case> cases{
        {"width 7.01", edit("\"width\": 7.00", "\"width\": 7.01"), PlanIssueKind::LotSizeMismatch},
        {"vertical_member", edit("\"type\": \"Stud\"", "\"type\": \"vertical_member\""),
         PlanIssueKind::UnknownMemberType},
        {"2-cycle", edit("\"depends_on\": []}", "\"depends_on\": [2]}"), PlanIssueKind::DependencyCycle},
    };
    bool ok = check_plan(parse_plan(base), ctx).accepted();
    std::string detail = ok ? "control accepted" : "control REJECTED";
    for (const Case& c : cases) {
        const PlanReport r = check_plan(parse_plan(c.text), ctx);
        const bool good = !r.accepted() && std::all_of(r.violations.begin(), r.violations.end(),
                                                       [&](const PlanIssue& v) { return v.kind == c.expected; });
        ok = ok && good;
        detail += fmt::format("; {} -> {}", c.name,
                              r.violations.empty() ? std::string("accepted")
                                                   : std::string(plan_issue_name(r.violations[0].kind)));
    }
    return {ok, detail};
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"Suite soundness on fixtures", suite_soundness},
        {"Mutation kill matrix", mutation_kill_matrix},
        {"Fixed-point oracle", support_oracle},
        {"Hungarian oracle", hungarian_oracle},
        {"Deflection formula check", deflection_formula},
        {"Visual metric anchors", visual_anchors},
        {"Metric identities", metric_identities},
        {"T7 implies T6", t7_implies_t6},
        {"Corpus determinism", corpus_determinism},
        {"Plan checker cases", plan_checker_cases},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        if (!o.ok) ++failures;
        std::cout << (o.ok ? "PASS" : "FAIL") << " [" << i + 1 << "] " << criteria[i].first << ": " << o.detail
                  << std::endl;
    }
    return failures == 0 ? 0 : 1;
}
