#include "framecheck/cli.hpp"

#include <cstdlib>
#include <optional>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "framecheck/config.hpp"
#include "framecheck/corpus.hpp"
#include "framecheck/errors.hpp"
#include "framecheck/fidelity.hpp"
#include "framecheck/fixtures.hpp"
#include "framecheck/image_io.hpp"
#include "framecheck/plan.hpp"
#include "framecheck/render.hpp"
#include "framecheck/scene_io.hpp"

namespace framecheck {

using nlohmann::ordered_json;

namespace {

constexpr int kOk = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

struct CommonOptions {
    std::string config;
    std::vector<std::string> params;
    std::string span_table;
    bool json = false;
};

void add_common(CLI::App* cmd, CommonOptions& o, bool span_table) {
    cmd->add_option("--config", o.config, "JSON file with parameter overrides");
    cmd->add_option("--param", o.params, "Override one parameter, NAME=VALUE (repeatable)");
    if (span_table) {
        cmd->add_option("--span-table", o.span_table, "Span table JSON (fallback: $FRAMECHECK_SPAN_TABLE)");
    }
    cmd->add_flag("--json", o.json, "Machine-readable output");
}

RunConfig build_config(const CommonOptions& o) {
    RunConfig cfg;
    if (!o.config.empty()) apply_config_file(cfg, o.config);
    for (const std::string& p : o.params) apply_param_override(cfg, p);
    cfg.check();
    return cfg;
}

// Flag, then config file, then environment.
std::optional<std::filesystem::path> span_table_path(const CommonOptions& o, const RunConfig& cfg) {
    if (!o.span_table.empty()) return std::filesystem::path(o.span_table);
    if (cfg.span_table) return cfg.span_table;
    if (const char* env = std::getenv("FRAMECHECK_SPAN_TABLE"); env && *env) return std::filesystem::path(env);
    return std::nullopt;
}

SpanTable require_span_table(const CommonOptions& o, const RunConfig& cfg) {
    const auto path = span_table_path(o, cfg);
    if (!path) throw ConfigError("no span table: pass --span-table, set it in --config, or set FRAMECHECK_SPAN_TABLE");
    return load_span_table(*path);
}

std::string pad(std::string_view s, std::size_t width) {
    std::string out(s);
    if (out.size() < width) out.append(width - out.size(), ' ');
    return out;
}

std::string test_set(const std::vector<TestId>& tests) {
    std::string out = "{";
    for (std::size_t i = 0; i < tests.size(); ++i) out += (i ? "," : "") + test_label(tests[i]);
    return out + "}";
}

// --- validate ---------------------------------------------------------------

int cmd_validate(const std::string& scene_path, const CommonOptions& o, std::ostream& out) {
    const RunConfig cfg = build_config(o);
    const SpanTable table = require_span_table(o, cfg);
    const Scene scene = load_scene(scene_path);
    const SuiteReport report = run_suite(scene, table, cfg.validation);
    const std::string id = std::filesystem::path(scene_path).filename().string();

    if (o.json) {
        out << suite_report_json(report, id);
        return report.overall_pass ? kOk : kFail;
    }
    const auto failed = report.failed_tests();
    out << fmt::format("{} {}  ({} of 10 tests failed; TSI {})\n", report.overall_pass ? "PASS" : "FAIL", id,
                       failed.size(), format_number(report.tsi));
    for (const TestResult& r : report.results) {
        std::string line = fmt::format("  {} {}{}", pad(test_label(r.id), 3), pad(test_title(r.id), 21),
                                       r.pass ? "pass" : "FAIL");
        if (!r.pass) line += fmt::format("  {} violation{}", r.violations.size(), r.violations.size() == 1 ? "" : "s");
        if (r.metric) line += fmt::format("  [{}]", format_number(*r.metric));
        out << line << "\n";
    }
    if (!report.overall_pass) {
        out << "feedback:\n";
        const std::string feedback = format_feedback(report);
        std::size_t start = 0;
        while (start < feedback.size()) {
            const std::size_t end = feedback.find('\n', start);
            out << "  " << feedback.substr(start, end - start) << "\n";
            start = end + 1;
        }
        out << "LoD 350 findings:\n";
        for (const LodFinding& f : lod_map(report)) {
            out << fmt::format("  {} {}: {}\n", test_label(f.test), lod_label(f.requirement), f.narrative);
        }
    }
    return report.overall_pass ? kOk : kFail;
}

// --- score ------------------------------------------------------------------

struct ScoreOptions {
    std::string reference;
    std::string generated;
    std::string reference_views;
    std::string generated_views;
    bool render = false;
};

int cmd_score(const ScoreOptions& s, const CommonOptions& o, std::ostream& out) {
    const RunConfig cfg = build_config(o);
    if (s.generated_views.empty() != s.reference_views.empty()) {
        throw CLI::ValidationError("--generated-views and --reference-views must be given together");
    }
    if (s.render && !s.generated_views.empty()) {
        throw CLI::ValidationError("--render-views cannot be combined with view directories");
    }
    const Scene reference = load_scene(s.reference);
    const Scene generated = load_scene(s.generated);
    const TopoScores topo = topo_scores(reference, generated, cfg.fidelity);

    std::optional<VisualScores> visual;
    if (s.render) {
        const auto g = render_views(generated);
        const auto r = render_views(reference);
        visual = visual_scores(g, r, cfg.fidelity);
    } else if (!s.generated_views.empty()) {
        const auto g = load_view_dir(s.generated_views);
        const auto r = load_view_dir(s.reference_views);
        visual = visual_scores(g, r, cfg.fidelity);
    }
    std::optional<SuiteReport> structural;
    if (const auto path = span_table_path(o, cfg)) {
        structural = run_suite(generated, load_span_table(*path), cfg.validation);
    }
    std::optional<bool> joint;
    if (visual && structural) joint = joint_pass(*structural, *visual);
    const bool failed = (visual && !visual->joint_visual_pass) || (structural && !structural->overall_pass);
    const std::string_view rule = cfg.fidelity.visual_pass_rule == VisualPassRule::AllViews ? "all_views" : "mean";

    if (o.json) {
        ordered_json j;
        j["schema_version"] = kSchemaVersion;
        j["record"] = "score";
        j["topo"] = {{"census_C", topo.census_C}, {"match_M", topo.match_M}, {"voxel_V", topo.voxel_V},
                     {"composite_T", topo.composite_T}};
        if (visual) {
            ordered_json views = ordered_json::object();
            for (std::size_t k = 0; k < kAllViews.size(); ++k) views[std::string(view_name(kAllViews[k]))] = visual->per_view[k];
            j["visual"] = {{"per_view", views},
                           {"mean_S", visual->mean_S},
                           {"all_views_pass", visual->all_views_pass},
                           {"mean_pass", visual->mean_pass},
                           {"rule", rule},
                           {"pass", visual->joint_visual_pass}};
        }
        if (structural) j["structural_pass"] = structural->overall_pass;
        if (joint) j["joint_pass"] = *joint;
        out << j.dump() << "\n";
        return failed ? kFail : kOk;
    }
    out << fmt::format("census C     {}\n", format_number(topo.census_C));
    out << fmt::format("match M      {}\n", format_number(topo.match_M));
    out << fmt::format("voxel V      {}\n", format_number(topo.voxel_V));
    out << fmt::format("composite T  {}\n", format_number(topo.composite_T));
    if (visual) {
        for (std::size_t k = 0; k < kAllViews.size(); ++k) {
            out << fmt::format("view {} S_v = {}\n", pad(view_name(kAllViews[k]), 12), format_number(visual->per_view[k]));
        }
        out << fmt::format("mean S       {}\n", format_number(visual->mean_S));
        out << fmt::format("visual pass  {} (rule {})\n", visual->joint_visual_pass ? "yes" : "no", rule);
    }
    if (structural) out << fmt::format("structural   {}\n", structural->overall_pass ? "pass" : "fail");
    if (joint) out << fmt::format("joint pass   {}\n", *joint ? "yes" : "no");
    return failed ? kFail : kOk;
}

// --- corpus -----------------------------------------------------------------

int cmd_corpus(const std::string& dir, unsigned workers, const CommonOptions& o, std::ostream& out) {
    const RunConfig cfg = build_config(o);
    const SpanTable table = require_span_table(o, cfg);
    const CorpusReport r = run_corpus(dir, table, cfg.validation, workers);
    if (r.evaluated == 0) {
        if (o.json) out << corpus_jsonl(r);
        throw ConfigError(fmt::format("no scene in {} could be evaluated", dir));
    }
    const int code = r.passed == r.evaluated ? kOk : kFail;
    if (o.json) {
        out << corpus_jsonl(r);
        return code;
    }
    out << fmt::format("corpus {}: {} evaluated, {} unreadable, {} not evaluable\n", dir, r.evaluated, r.unreadable,
                       r.not_evaluable);
    out << fmt::format("pass rate {} ({}/{})\n", format_number(r.pass_rate), r.passed, r.evaluated);
    out << "failure rate per test:\n";
    for (TestId id : kAllTests) {
        const auto k = static_cast<std::size_t>(test_number(id) - 1);
        out << fmt::format("  {} {} {}\n", pad(test_label(id), 3), pad(test_title(id), 21),
                           format_number(r.per_test_failure_rate[k]));
    }
    if (!r.cofailure_patterns.empty()) {
        out << "co-failure patterns:\n";
        for (const CofailurePattern& c : r.cofailure_patterns) {
            out << fmt::format("  {} {} {}\n", pad(test_set(c.tests), 24), pad(std::to_string(c.count), 6),
                               format_number(c.fraction));
        }
    }
    for (const SceneDigest& d : r.per_scene) {
        if (d.status != SceneStatus::Evaluated) out << fmt::format("skipped {}: {}\n", d.id, d.error);
    }
    return code;
}

// --- plan-check -------------------------------------------------------------

struct PlanOptions {
    std::string plan;
    double lot_width = 0.0;
    double lot_depth = 0.0;
    int stories = 1;
    std::string roof = "gable";
};

int cmd_plan(const PlanOptions& po, const CommonOptions& o, std::ostream& out) {
    const auto roof = roof_type_from_string(po.roof);
    if (!roof) throw CLI::ValidationError(fmt::format("--roof: unknown roof type '{}'", po.roof));
    const PlanDocument plan = load_plan(po.plan);
    const PlanReport report = check_plan(plan, {po.lot_width, po.lot_depth, po.stories, *roof});
    std::optional<TopoResult> topo;
    try {
        topo = topo_order(plan);
    } catch (const ValidationError&) {
        // duplicate ids: already reported as a violation
    }
    const std::string id = std::filesystem::path(po.plan).filename().string();

    if (o.json) {
        ordered_json j;
        j["schema_version"] = kSchemaVersion;
        j["record"] = "plan";
        j["id"] = id;
        j["accepted"] = report.accepted();
        auto issues = [](const std::vector<PlanIssue>& list) {
            ordered_json a = ordered_json::array();
            for (const PlanIssue& i : list) {
                ordered_json e;
                e["class"] = plan_issue_name(i.kind);
                if (i.step) e["step"] = *i.step;
                e["message"] = i.message;
                a.push_back(std::move(e));
            }
            return a;
        };
        j["violations"] = issues(report.violations);
        j["warnings"] = issues(report.warnings);
        if (topo && topo->acyclic()) j["order"] = topo->order;
        if (topo && !topo->acyclic()) j["cycle"] = topo->cycle;
        out << j.dump() << "\n";
        return report.accepted() ? kOk : kFail;
    }
    out << fmt::format("{} {}  ({} violations, {} warnings)\n", report.accepted() ? "ACCEPTED" : "REJECTED", id,
                       report.violations.size(), report.warnings.size());
    for (const PlanIssue& i : report.violations) out << fmt::format("  violation {}: {}\n", plan_issue_name(i.kind), i.message);
    for (const PlanIssue& i : report.warnings) out << fmt::format("  warning {}: {}\n", plan_issue_name(i.kind), i.message);
    if (topo && topo->acyclic()) out << fmt::format("order: {}\n", fmt::join(topo->order, " "));
    return report.accepted() ? kOk : kFail;
}

// --- gen-fixture ------------------------------------------------------------

struct FixtureOptions {
    FixtureSpec spec;
    std::vector<std::string> mutations;
    std::string output;
    std::string views;
};

int cmd_fixture(const FixtureOptions& fo, const CommonOptions& o, std::ostream& out) {
    const RunConfig cfg = build_config(o);
    const auto table_path = span_table_path(o, cfg);
    const SpanTable table = table_path ? load_span_table(*table_path) : fixture_span_table();
    Scene scene = generate_gable(fo.spec, table, cfg.validation);
    for (const std::string& m : fo.mutations) scene = apply_mutation(scene, parse_mutation(m));

    const std::string doc = serialize_scene(scene);
    if (fo.output == "-") {
        out << doc;
    } else {
        save_scene(scene, fo.output);
    }
    if (!fo.views.empty()) save_view_dir(render_views(scene), fo.views);
    if (fo.output == "-") return kOk;
    if (o.json) {
        ordered_json j;
        j["schema_version"] = kSchemaVersion;
        j["record"] = "fixture";
        j["output"] = fo.output;
        j["members"] = scene.members.size();
        j["mutations"] = fo.mutations;
        if (!fo.views.empty()) j["views"] = fo.views;
        out << j.dump() << "\n";
    } else {
        out << fmt::format("wrote {} ({} members)\n", fo.output, scene.members.size());
    }
    return kOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Structural validation of timber-frame scene graphs", "framecheck"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "framecheck 1.0.0");

    CommonOptions common;

    std::string scene_path;
    auto* validate = app.add_subcommand("validate", "Run the ten structural tests on a scene");
    validate->add_option("scene", scene_path, "Scene JSON")->required();
    add_common(validate, common, true);

    ScoreOptions score;
    std::string visual_rule;
    auto* sc = app.add_subcommand("score", "Topological and visual fidelity of a generated scene");
    sc->add_option("--reference", score.reference, "Reference scene JSON")->required();
    sc->add_option("--generated", score.generated, "Generated scene JSON")->required();
    sc->add_option("--reference-views", score.reference_views, "Directory of <view>.png reference renders");
    sc->add_option("--generated-views", score.generated_views, "Directory of <view>.png generated renders");
    sc->add_flag("--render-views", score.render, "Score preview renders of both scenes");
    sc->add_option("--visual-rule", visual_rule, "all_views (default) or mean")
        ->check(CLI::IsMember({"all_views", "mean"}));
    add_common(sc, common, true);

    std::string corpus_dir;
    unsigned workers = 0;
    auto* corpus = app.add_subcommand("corpus", "Validate every scene in a directory and aggregate");
    corpus->add_option("dir", corpus_dir, "Directory of scene JSON files")->required();
    corpus->add_option("--workers", workers, "Worker threads (0 = hardware concurrency)");
    add_common(corpus, common, true);

    PlanOptions plan;
    auto* pc = app.add_subcommand("plan-check", "Check a construction plan document");
    pc->add_option("plan", plan.plan, "Plan JSON")->required();
    pc->add_option("--lot-width", plan.lot_width, "Lot width (m)")->required()->check(CLI::PositiveNumber);
    pc->add_option("--lot-depth", plan.lot_depth, "Lot depth (m)")->required()->check(CLI::PositiveNumber);
    pc->add_option("--stories", plan.stories, "Story count")->required()->check(CLI::PositiveNumber);
    pc->add_option("--roof", plan.roof, "gable, hip, gambrel or shed")->required();
    pc->add_flag("--json", common.json, "Machine-readable output");

    FixtureOptions fixture;
    auto* gf = app.add_subcommand("gen-fixture", "Generate a gable fixture scene, optionally mutated");
    gf->add_option("--width", fixture.spec.width, "Width along x (m)")->required();
    gf->add_option("--depth", fixture.spec.depth, "Depth along y (m)")->required();
    gf->add_option("--stories", fixture.spec.stories, "Story count")->required();
    gf->add_option("--pitch", fixture.spec.roof_pitch_ratio, "Roof rise/run")->capture_default_str();
    gf->add_option("--stud-spacing", fixture.spec.stud_spacing, "Stud spacing (m)")->capture_default_str();
    gf->add_option("--joist-spacing", fixture.spec.joist_spacing, "Joist spacing (m)")->capture_default_str();
    gf->add_option("--rafter-spacing", fixture.spec.rafter_spacing, "Rafter spacing (m)")->capture_default_str();
    gf->add_option("--story-height", fixture.spec.story_height, "Floor-to-floor height (m)")->capture_default_str();
    gf->add_option("--mutate", fixture.mutations, "KIND:TARGET[:MAG] (repeatable, applied in order)");
    gf->add_option("-o,--output", fixture.output, "Output scene JSON, '-' for stdout")->required();
    gf->add_option("--views", fixture.views, "Also write preview renders to this directory");
    add_common(gf, common, true);

    std::vector<std::string> argv_storage{"framecheck"};
    argv_storage.insert(argv_storage.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (std::string& a : argv_storage) argv.push_back(a.data());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        if (code == 0) return kOk;
        if (app.get_subcommands().empty()) err << app.help();
        return kUsage;
    }

    try {
        if (*validate) return cmd_validate(scene_path, common, out);
        if (*sc) {
            if (!visual_rule.empty()) {
                common.params.push_back("visual_pass_rule=" + visual_rule);
            }
            return cmd_score(score, common, out);
        }
        if (*corpus) return cmd_corpus(corpus_dir, workers, common, out);
        if (*pc) return cmd_plan(plan, common, out);
        if (*gf) return cmd_fixture(fixture, common, out);
    } catch (const CLI::Error& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::filesystem::filesystem_error& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    }
    err << app.help();
    return kUsage;
}

}  // namespace framecheck
