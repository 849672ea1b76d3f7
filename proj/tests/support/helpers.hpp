#pragma once

// Small conveniences shared by the test binaries: fixture locations,
// scratch directories, and process-state guards for CLI tests.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>

namespace testsupport {

namespace fs = std::filesystem;

inline fs::path fixture_dir() { return fs::path(AMCM_FIXTURE_DIR); }
inline fs::path golden_dir() { return fs::path(AMCM_GOLDEN_DIR); }

inline std::string slurp(const fs::path& file) {
    std::ifstream in(file, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + file.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return std::move(buf).str();
}

inline void spew(const fs::path& file, const std::string& content) {
    fs::create_directories(file.parent_path());
    std::ofstream out(file, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + file.string());
    out << content;
}

// A scratch directory removed on destruction.
class TempDir {
public:
    TempDir() {
        static std::mt19937_64 rng(std::random_device{}());
        for (int attempt = 0; attempt < 64; ++attempt) {
            fs::path candidate =
                fs::temp_directory_path() / ("amcm-test-" + std::to_string(rng()));
            std::error_code ec;
            if (fs::create_directory(candidate, ec)) {
                path_ = candidate;
                return;
            }
        }
        throw std::runtime_error("cannot create a scratch directory");
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const fs::path& path() const { return path_; }

private:
    fs::path path_;
};

inline void copy_tree(const fs::path& from, const fs::path& to) {
    fs::copy(from, to, fs::copy_options::recursive | fs::copy_options::overwrite_existing);
}

// Sets (or clears) an environment variable for the guard's lifetime.
class EnvVarGuard {
public:
    EnvVarGuard(std::string name, std::optional<std::string> value) : name_(std::move(name)) {
        const char* old = std::getenv(name_.c_str());
        if (old != nullptr) saved_ = old;
        apply(value);
    }
    ~EnvVarGuard() { apply(saved_); }
    EnvVarGuard(const EnvVarGuard&) = delete;
    EnvVarGuard& operator=(const EnvVarGuard&) = delete;

private:
    void apply(const std::optional<std::string>& value) {
        if (value.has_value())
            ::setenv(name_.c_str(), value->c_str(), 1);
        else
            ::unsetenv(name_.c_str());
    }
    std::string name_;
    std::optional<std::string> saved_;
};

// Changes the working directory and restores it on destruction.
class CwdGuard {
public:
    explicit CwdGuard(const fs::path& to) : saved_(fs::current_path()) {
        fs::current_path(to);
    }
    ~CwdGuard() {
        std::error_code ec;
        fs::current_path(saved_, ec);
    }
    CwdGuard(const CwdGuard&) = delete;
    CwdGuard& operator=(const CwdGuard&) = delete;

private:
    fs::path saved_;
};

}  // namespace testsupport
