#pragma once

#include <filesystem>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "framecheck/scene.hpp"

namespace fctest {

inline framecheck::Member make_member(const std::string& name, framecheck::Vec3 lo, framecheck::Vec3 hi) {
    framecheck::Member m;
    m.name = name;
    m.category = framecheck::classify_member(name).value();
    m.box = {lo, hi};
    return m;
}

inline framecheck::Scene make_scene(std::vector<framecheck::Member> members) {
    framecheck::Scene s;
    s.members = std::move(members);
    return s;
}

/// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
public:
    explicit TempDir(const std::string& tag) {
        std::random_device rd;
        path_ = std::filesystem::temp_directory_path() / ("framecheck_" + tag + "_" + std::to_string(rd()));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::filesystem::path& path() const { return path_; }

private:
    std::filesystem::path path_;
};

}  // namespace fctest
