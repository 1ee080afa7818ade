#include "framecheck/corpus.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <thread>

#include <fmt/format.h>
#include <json.hpp>

#include "framecheck/errors.hpp"
#include "framecheck/scene_io.hpp"

namespace framecheck {

using nlohmann::ordered_json;

std::string_view lod_label(LodRequirement r) {
    switch (r) {
        case LodRequirement::AccurateGeometry: return "(i) accurate geometry";
        case LodRequirement::NoHardClashes: return "(ii) no hard clashes";
        case LodRequirement::InterfaceDefinition: return "(iii) interface definition";
        case LodRequirement::LoadPathIntegrity: return "(iv) load-path integrity";
    }
    return "?";
}

LodRequirement lod_requirement(TestId id) {
    switch (id) {
        case TestId::T2:
        case TestId::T4:
        case TestId::T5: return LodRequirement::AccurateGeometry;
        case TestId::T3:
        case TestId::T7: return LodRequirement::NoHardClashes;
        case TestId::T6:
        case TestId::T10: return LodRequirement::InterfaceDefinition;
        case TestId::T1:
        case TestId::T8:
        case TestId::T9: return LodRequirement::LoadPathIntegrity;
    }
    return LodRequirement::LoadPathIntegrity;
}

std::string_view lod_narrative(LodRequirement r) {
    switch (r) {
        case LodRequirement::AccurateGeometry:
            return "Non-standard cross-sections; spans exceeding code limits; serviceability failure under design load";
        case LodRequirement::NoHardClashes:
            return "Members overlap or leave gaps wider than one stud bay; framing cannot be physically assembled";
        case LodRequirement::InterfaceDefinition:
            return "Rafters/studs free at one end (hinge failure under load); roof plane incompletely framed";
        case LodRequirement::LoadPathIntegrity:
            return "Floating members; unsupported elevated sections; Topological Stability Index < 1.0";
    }
    return "";
}

std::vector<LodFinding> lod_map(const SuiteReport& report) {
    std::vector<LodFinding> out;
    for (TestId id : report.failed_tests()) {
        const LodRequirement r = lod_requirement(id);
        out.push_back({id, r, std::string(lod_narrative(r))});
    }
    return out;
}

SceneDigest evaluate_scene_file(const std::filesystem::path& path, const SpanTable& table, const ValidationParams& p) {
    SceneDigest d;
    d.id = path.filename().string();
    Scene scene;
    try {
        scene = load_scene(path);
    } catch (const std::exception& e) {
        d.status = SceneStatus::Unreadable;
        d.error = e.what();
        return d;
    }
    d.members = scene.members.size();
    try {
        const SuiteReport r = run_suite(scene, table, p);
        d.pass = r.overall_pass;
        d.tsi = r.tsi;
        d.failed = r.failed_tests();
    } catch (const ConfigError& e) {
        d.status = SceneStatus::NotEvaluable;
        d.error = e.what();
    }
    return d;
}

CorpusReport aggregate_corpus(std::vector<SceneDigest> digests) {
    std::sort(digests.begin(), digests.end(), [](const SceneDigest& a, const SceneDigest& b) { return a.id < b.id; });
    CorpusReport r;
    std::map<std::vector<TestId>, std::size_t> patterns;
    for (const SceneDigest& d : digests) {
        if (d.status == SceneStatus::Unreadable) {
            ++r.unreadable;
            continue;
        }
        if (d.status == SceneStatus::NotEvaluable) {
            ++r.not_evaluable;
            continue;
        }
        ++r.evaluated;
        if (d.pass) {
            ++r.passed;
            continue;
        }
        for (TestId id : d.failed) ++r.failures[static_cast<std::size_t>(test_number(id) - 1)];
        ++patterns[d.failed];
    }
    const double n = static_cast<double>(r.evaluated);
    r.pass_rate = r.evaluated == 0 ? 0.0 : static_cast<double>(r.passed) / n;
    for (std::size_t k = 0; k < 10; ++k) {
        r.per_test_failure_rate[k] = r.evaluated == 0 ? 0.0 : static_cast<double>(r.failures[k]) / n;
    }
    for (const auto& [tests, count] : patterns) {
        r.cofailure_patterns.push_back({tests, count, static_cast<double>(count) / n});
    }
    // std::map iteration is already lexicographic; stable sort keeps that for equal counts.
    std::stable_sort(r.cofailure_patterns.begin(), r.cofailure_patterns.end(),
                     [](const CofailurePattern& a, const CofailurePattern& b) { return a.count > b.count; });
    r.per_scene = std::move(digests);
    return r;
}

CorpusReport run_corpus(const std::filesystem::path& dir, const SpanTable& table, const ValidationParams& p,
                        unsigned workers) {
    std::vector<std::filesystem::path> files;
    std::error_code ec;
    for (const auto& entry : std::filesystem::directory_iterator(dir, ec)) {
        if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
    }
    if (ec) throw ConfigError(fmt::format("cannot read corpus directory {}: {}", dir.string(), ec.message()));
    if (files.empty()) throw ConfigError(fmt::format("no scene files (*.json) in {}", dir.string()));
    std::sort(files.begin(), files.end());

    if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
    workers = std::min<unsigned>(workers, static_cast<unsigned>(files.size()));

    std::vector<SceneDigest> digests(files.size());
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next++; i < files.size(); i = next++) digests[i] = evaluate_scene_file(files[i], table, p);
    };
    std::vector<std::jthread> pool;
    for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work);
    work();
    pool.clear();
    return aggregate_corpus(std::move(digests));
}

namespace {

ordered_json test_list(const std::vector<TestId>& tests) {
    ordered_json out = ordered_json::array();
    for (TestId id : tests) out.push_back(test_label(id));
    return out;
}

std::string_view status_name(SceneStatus s) {
    switch (s) {
        case SceneStatus::Evaluated: return "evaluated";
        case SceneStatus::Unreadable: return "unreadable";
        case SceneStatus::NotEvaluable: return "not_evaluable";
    }
    return "?";
}

}  // namespace

std::string corpus_jsonl(const CorpusReport& report) {
    std::string out;
    for (const SceneDigest& d : report.per_scene) {
        ordered_json j;
        j["schema_version"] = kSchemaVersion;
        j["record"] = "scene";
        j["id"] = d.id;
        j["status"] = status_name(d.status);
        if (d.status == SceneStatus::Evaluated) {
            j["members"] = d.members;
            j["pass"] = d.pass;
            j["tsi"] = d.tsi;
            j["failed"] = test_list(d.failed);
        } else {
            j["error"] = d.error;
        }
        out += j.dump() + "\n";
    }
    for (const CofailurePattern& c : report.cofailure_patterns) {
        ordered_json j;
        j["schema_version"] = kSchemaVersion;
        j["record"] = "pattern";
        j["tests"] = test_list(c.tests);
        j["count"] = c.count;
        j["fraction"] = c.fraction;
        out += j.dump() + "\n";
    }
    ordered_json s;
    s["schema_version"] = kSchemaVersion;
    s["record"] = "summary";
    s["evaluated"] = report.evaluated;
    s["unreadable"] = report.unreadable;
    s["not_evaluable"] = report.not_evaluable;
    s["passed"] = report.passed;
    s["pass_rate"] = report.pass_rate;
    ordered_json rates = ordered_json::object();
    for (TestId id : kAllTests) rates[test_label(id)] = report.per_test_failure_rate[static_cast<std::size_t>(test_number(id) - 1)];
    s["per_test_failure_rate"] = rates;
    out += s.dump() + "\n";
    return out;
}

std::string suite_report_json(const SuiteReport& report, std::string_view scene_id) {
    ordered_json j;
    j["schema_version"] = kSchemaVersion;
    j["record"] = "validation";
    j["id"] = scene_id;
    j["pass"] = report.overall_pass;
    j["tsi"] = report.tsi;
    ordered_json tests = ordered_json::array();
    for (const TestResult& r : report.results) {
        ordered_json t;
        t["test"] = test_label(r.id);
        t["title"] = test_title(r.id);
        t["pass"] = r.pass;
        if (r.metric) t["metric"] = *r.metric;
        ordered_json vs = ordered_json::array();
        for (const Violation& v : r.violations) {
            ordered_json o;
            o["members"] = v.members;
            o["measured"] = {{"value", v.measured.value}, {"unit", v.measured.unit}};
            o["limit"] = {{"value", v.limit.value}, {"unit", v.limit.unit}};
            if (!v.cells.empty()) o["cells"] = v.cells;
            o["message"] = v.message;
            vs.push_back(std::move(o));
        }
        t["violations"] = std::move(vs);
        tests.push_back(std::move(t));
    }
    j["tests"] = std::move(tests);
    ordered_json lod = ordered_json::array();
    for (const LodFinding& f : lod_map(report)) {
        lod.push_back({{"test", test_label(f.test)}, {"requirement", lod_label(f.requirement)}, {"narrative", f.narrative}});
    }
    j["lod350"] = std::move(lod);
    return j.dump() + "\n";
}

}  // namespace framecheck
