#include "framecheck/image_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <memory>

#include <fmt/format.h>
#include <png.h>

#include "framecheck/errors.hpp"

namespace framecheck {

namespace {

struct FileCloser {
    void operator()(std::FILE* f) const { std::fclose(f); }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

}  // namespace

RasterView load_png(const std::filesystem::path& path, ViewId view) {
    png_image image{};
    image.version = PNG_IMAGE_VERSION;
    if (!png_image_begin_read_from_file(&image, path.c_str())) {
        throw ParseError(fmt::format("{}: {}", path.string(), image.message), 0, 0);
    }
    image.format = PNG_FORMAT_RGBA;
    std::vector<png_byte> buffer(PNG_IMAGE_SIZE(image));
    if (!png_image_finish_read(&image, nullptr, buffer.data(), 0, nullptr)) {
        const std::string msg = image.message;
        png_image_free(&image);
        throw ParseError(fmt::format("{}: {}", path.string(), msg), 0, 0);
    }
    RasterView out(view, static_cast<int>(image.width), static_cast<int>(image.height));
    const std::size_t n = out.pixel_count();
    for (std::size_t i = 0; i < n; ++i) {
        out.rgb[3 * i] = buffer[4 * i] / 255.0f;
        out.rgb[3 * i + 1] = buffer[4 * i + 1] / 255.0f;
        out.rgb[3 * i + 2] = buffer[4 * i + 2] / 255.0f;
        out.alpha[i] = buffer[4 * i + 3] / 255.0f;
    }
    return out;
}

void save_png(const RasterView& src, const std::filesystem::path& path) {
    auto to_byte = [](float v) {
        return static_cast<png_byte>(std::lround(std::clamp(v, 0.0f, 1.0f) * 255.0f));
    };
    std::vector<png_byte> buffer(src.pixel_count() * 4);
    for (std::size_t i = 0; i < src.pixel_count(); ++i) {
        buffer[4 * i] = to_byte(src.rgb[3 * i]);
        buffer[4 * i + 1] = to_byte(src.rgb[3 * i + 1]);
        buffer[4 * i + 2] = to_byte(src.rgb[3 * i + 2]);
        buffer[4 * i + 3] = to_byte(src.alpha[i]);
    }
    png_image image{};
    image.version = PNG_IMAGE_VERSION;
    image.width = static_cast<png_uint_32>(src.width);
    image.height = static_cast<png_uint_32>(src.height);
    image.format = PNG_FORMAT_RGBA;
    FilePtr file(std::fopen(path.c_str(), "wb"));
    if (!file) throw ConfigError(fmt::format("cannot write {}", path.string()));
    if (!png_image_write_to_stdio(&image, file.get(), 0, buffer.data(), 0, nullptr)) {
        throw ConfigError(fmt::format("{}: {}", path.string(), image.message));
    }
}

std::vector<RasterView> load_view_dir(const std::filesystem::path& dir) {
    std::vector<RasterView> views;
    for (ViewId v : kAllViews) {
        const auto file = dir / fmt::format("{}.png", view_name(v));
        if (!std::filesystem::exists(file)) {
            throw ValidationError(fmt::format("missing view '{}' ({})", view_name(v), file.string()));
        }
        views.push_back(load_png(file, v));
    }
    return views;
}

void save_view_dir(const std::vector<RasterView>& views, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    for (const RasterView& v : views) save_png(v, dir / fmt::format("{}.png", view_name(v.view)));
}

}  // namespace framecheck
