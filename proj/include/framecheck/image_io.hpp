#pragma once

#include <filesystem>
#include <vector>

#include "framecheck/fidelity.hpp"

namespace framecheck {

/// Reads any PNG as RGBA; opaque formats get alpha 1. Throws ParseError.
RasterView load_png(const std::filesystem::path& path, ViewId view);
void save_png(const RasterView& image, const std::filesystem::path& path);

/// Loads `<view_id>.png` for each of the five views; a missing file is a
/// ValidationError naming the view.
std::vector<RasterView> load_view_dir(const std::filesystem::path& dir);
void save_view_dir(const std::vector<RasterView>& views, const std::filesystem::path& dir);

}  // namespace framecheck
