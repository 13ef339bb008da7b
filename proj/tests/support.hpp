#pragma once

// Shared fixtures for the test binaries: throwaway directories, small file
// helpers, and hand-buildable plate records.

#include <atomic>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <system_error>

#include "platenet/dataset.hpp"

namespace testsupport {

/// Unique directory under the system temp root, removed on destruction.
class TempDir {
public:
    TempDir() {
        static std::atomic<unsigned> counter{0};
        const auto stamp = std::chrono::steady_clock::now().time_since_epoch().count();
        path_ = std::filesystem::temp_directory_path() /
                ("platenet-test-" + std::to_string(stamp) + "-" +
                 std::to_string(counter.fetch_add(1)));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    std::string file(const std::string& name) const { return (path_ / name).string(); }
    std::string dir() const { return path_.string(); }

private:
    std::filesystem::path path_;
};

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    out << content;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

/// Record with every numeric attribute set to `fill` and one fault flag up.
inline platenet::RawRecord plate_record(platenet::FaultClass fault, double fill = 0.0) {
    platenet::RawRecord record;
    record.features.fill(fill);
    record.fault_indicators[static_cast<int>(fault)] = 1;
    return record;
}

}  // namespace testsupport
