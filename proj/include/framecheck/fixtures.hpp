#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "framecheck/scene.hpp"
#include "framecheck/span_table.hpp"
#include "framecheck/validators.hpp"

namespace framecheck {

/// Gable house, width along x, depth along y, ridge along x.
struct FixtureSpec {
    double width = 7.0;
    double depth = 5.0;
    int stories = 1;
    double roof_pitch_ratio = 0.5;  ///< rise / run
    double stud_spacing = 0.406;
    double joist_spacing = 0.406;
    double rafter_spacing = 0.610;
    double story_height = 2.7;
    /// Top of each floor's sill or wall plate; extended by story_height when
    /// shorter than `stories`.
    std::vector<double> floor_z{0.3, 3.0, 5.7};

    /// Throws ConfigError when the spec cannot describe a buildable frame.
    void check() const;
};

/// Builds the fixture. Joist and rafter sections are the smallest 38 mm
/// sections that pass T2 (under `table`) and T5. Throws ConfigError when no
/// section is deep enough.
Scene generate_gable(const FixtureSpec& spec, const SpanTable& table = fixture_span_table(),
                     const ValidationParams& params = {});

enum class MutationKind {
    RemoveMember,
    ShiftMember,
    ResizeSection,
    DeleteEveryOtherJoist,
    RemoveRidge,
    FloatMember,
    StretchSpan,
};

inline constexpr std::array<MutationKind, 7> kAllMutations{
    MutationKind::RemoveMember,  MutationKind::ShiftMember,  MutationKind::ResizeSection,
    MutationKind::DeleteEveryOtherJoist, MutationKind::RemoveRidge, MutationKind::FloatMember,
    MutationKind::StretchSpan,
};

std::string_view mutation_name(MutationKind k);  // "remove_member"
std::optional<MutationKind> mutation_from_string(std::string_view name);

struct Mutation {
    MutationKind kind = MutationKind::RemoveMember;
    /// Member-name glob (`*`, `?`); an exact name selects one member.
    std::string target;
    /// Meters for shift/resize/float, a ratio for stretch; unused otherwise.
    std::optional<double> magnitude;
};

/// "KIND:TARGET[:MAG]", e.g. "shift_member:Joist_07:0.2". Throws ConfigError.
Mutation parse_mutation(std::string_view text);

/// Returns a mutated copy. Semantics per kind:
///  remove_member            drop every match
///  shift_member             move each match along its short horizontal axis (default 0.2 m)
///  resize_section           grow each match's thinnest dimension about its centre (default 0.025 m)
///  delete_every_other_joist among matched joists, drop the 2nd, 4th, ... line of each joist layer
///  remove_ridge             drop matched Ridge members (target may be empty: every Ridge)
///  float_member             lift each match so its bottom sits magnitude above every other member (default 1.0 m)
///  stretch_span             scale each match's long horizontal extent about its centre (default ratio 2)
/// Throws ValidationError when the target matches nothing.
Scene apply_mutation(const Scene& scene, const Mutation& m);

bool glob_match(std::string_view pattern, std::string_view name);

/// Documented outcome of a mutation applied to its canonical target on a
/// generated fixture: it fails at least `targets` and nothing outside `closure`.
struct MutationProfile {
    MutationKind kind;
    std::string_view canonical_target;
    std::vector<TestId> targets;
    std::vector<TestId> closure;
    double min_magnitude;  ///< range used by the randomized kill matrix
    double max_magnitude;
};

MutationProfile mutation_profile(MutationKind k);

/// Names (or a glob) in a generated fixture that qualify as the canonical
/// target of `k`; for single-member kinds each entry is one member name.
std::vector<std::string> canonical_targets(const Scene& fixture, MutationKind k);

}  // namespace framecheck
