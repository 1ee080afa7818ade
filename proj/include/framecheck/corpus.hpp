#pragma once

#include <array>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "framecheck/validators.hpp"

namespace framecheck {

enum class LodRequirement { AccurateGeometry, NoHardClashes, InterfaceDefinition, LoadPathIntegrity };

std::string_view lod_label(LodRequirement r);  // "(i) accurate geometry"
LodRequirement lod_requirement(TestId id);
/// What a failure under the requirement means for constructibility.
std::string_view lod_narrative(LodRequirement r);

struct LodFinding {
    TestId test;
    LodRequirement requirement;
    std::string narrative;
};

/// One finding per failed test, in test order.
std::vector<LodFinding> lod_map(const SuiteReport& report);

enum class SceneStatus { Evaluated, Unreadable, NotEvaluable };

/// Per-scene outcome kept by the corpus report.
struct SceneDigest {
    std::string id;  ///< file name
    SceneStatus status = SceneStatus::Evaluated;
    std::string error;  ///< set unless evaluated
    std::size_t members = 0;
    bool pass = false;
    double tsi = 1.0;
    std::vector<TestId> failed;
};

struct CofailurePattern {
    std::vector<TestId> tests;
    std::size_t count = 0;
    double fraction = 0.0;  ///< of evaluated scenes
};

struct CorpusReport {
    std::size_t evaluated = 0;
    std::size_t unreadable = 0;
    std::size_t not_evaluable = 0;  ///< parsed, but a span-table gap stopped the suite
    std::size_t passed = 0;
    double pass_rate = 0.0;
    std::array<std::size_t, 10> failures{};
    std::array<double, 10> per_test_failure_rate{};
    /// Count descending, then lexicographic test set.
    std::vector<CofailurePattern> cofailure_patterns;
    /// Sorted by id.
    std::vector<SceneDigest> per_scene;
};

/// Deterministic reduction; input order does not matter.
CorpusReport aggregate_corpus(std::vector<SceneDigest> digests);

SceneDigest evaluate_scene_file(const std::filesystem::path& path, const SpanTable& table, const ValidationParams& p);

/// Validates every *.json file in `dir` (non-recursive). `workers` = 0 picks
/// the hardware concurrency. Throws ConfigError when the directory holds no
/// scene files.
CorpusReport run_corpus(const std::filesystem::path& dir, const SpanTable& table, const ValidationParams& p,
                        unsigned workers = 0);

inline constexpr int kSchemaVersion = 1;

/// Line-delimited records: one "scene" per file, one "pattern" per co-failure
/// set, then a "summary".
std::string corpus_jsonl(const CorpusReport& report);

/// Single-line record for one validated scene.
std::string suite_report_json(const SuiteReport& report, std::string_view scene_id);

}  // namespace framecheck
