#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "framecheck/scene.hpp"

namespace framecheck {

/// Parses a scene document (JSON). Throws ParseError with line/column for
/// malformed input and ValidationError for invariant breaches.
Scene parse_scene(std::string_view document);

/// Canonical document: members in order, category always written, numbers in
/// shortest round-trip form. parse_scene(serialize_scene(s)) == s.
std::string serialize_scene(const Scene& scene);

Scene load_scene(const std::filesystem::path& path);
void save_scene(const Scene& scene, const std::filesystem::path& path);

/// Reads a whole file; throws ParseError when it cannot be opened.
std::string read_text_file(const std::filesystem::path& path);

/// 1-based line and column of a byte offset.
std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t byte_offset);

}  // namespace framecheck
