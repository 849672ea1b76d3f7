#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "amcm/result.hpp"

namespace amcm::cli {

// Project layout, read from `./amcm.conf` unless AMCM_PROJECT points
// elsewhere. Line format matches context files: `key = value` with `#`
// comments. Keys: content_root, template, binding, default_context,
// output_dir; template and binding may repeat. Relative paths resolve
// against the config file's directory.
struct ProjectConfig {
    std::filesystem::path base_dir;
    std::filesystem::path content_root;
    std::vector<std::filesystem::path> templates;
    std::vector<std::filesystem::path> bindings;
    std::optional<std::filesystem::path> default_context;
    std::filesystem::path output_dir;

    bool has_content_root() const { return !content_root.empty(); }
};

Result<ProjectConfig, std::string> load_config(const std::filesystem::path& file);

// Writes via a temporary file in the target directory plus rename, so a
// failure part-way never leaves a torn file behind. Parent directories
// are created as needed.
Result<std::monostate, std::string> write_atomic(const std::filesystem::path& target,
                                                 const std::string& bytes);

// Entry point shared by main() and the in-process tests. `args` excludes
// the program name. Exit codes: 0 ok, 1 usage or IO, 2 model integrity or
// model parse failure, 3 machine error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace amcm::cli
