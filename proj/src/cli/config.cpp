#include <fstream>
#include <sstream>

#include "amcm/cli/cli.hpp"

namespace amcm::cli {

namespace fs = std::filesystem;

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r'))
        s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

}  // namespace

Result<ProjectConfig, std::string> load_config(const fs::path& file) {
    std::ifstream in(file);
    if (!in) return "cannot read config " + file.string();
    ProjectConfig cfg;
    cfg.base_dir = file.has_parent_path() ? file.parent_path() : fs::path(".");
    cfg.output_dir = cfg.base_dir / "out";

    auto resolve = [&cfg](std::string_view value) {
        fs::path p{std::string(value)};
        return p.is_absolute() ? p : cfg.base_dir / p;
    };

    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view body = trim(line);
        if (body.empty() || body.front() == '#') continue;
        std::size_t eq = body.find('=');
        if (eq == std::string_view::npos)
            return file.string() + ":" + std::to_string(line_no) + ": expected 'key = value'";
        std::string key(trim(body.substr(0, eq)));
        std::string_view value = trim(body.substr(eq + 1));
        if (key == "content_root") {
            cfg.content_root = resolve(value);
        } else if (key == "template") {
            cfg.templates.push_back(resolve(value));
        } else if (key == "binding") {
            cfg.bindings.push_back(resolve(value));
        } else if (key == "default_context") {
            cfg.default_context = resolve(value);
        } else if (key == "output_dir") {
            cfg.output_dir = resolve(value);
        } else {
            return file.string() + ":" + std::to_string(line_no) + ": unknown key '" + key +
                   "'";
        }
    }

    // Referenced inputs must exist up front; output_dir is created later.
    auto must_exist = [&file](const fs::path& p, const char* what) -> std::string {
        std::error_code ec;
        if (!fs::exists(p, ec)) return file.string() + ": " + what + " " + p.string() + " does not exist";
        return "";
    };
    if (cfg.has_content_root())
        if (std::string e = must_exist(cfg.content_root, "content_root"); !e.empty()) return e;
    for (const fs::path& p : cfg.templates)
        if (std::string e = must_exist(p, "template"); !e.empty()) return e;
    for (const fs::path& p : cfg.bindings)
        if (std::string e = must_exist(p, "binding"); !e.empty()) return e;
    if (cfg.default_context.has_value())
        if (std::string e = must_exist(*cfg.default_context, "default_context"); !e.empty())
            return e;
    return cfg;
}

Result<std::monostate, std::string> write_atomic(const fs::path& target,
                                                 const std::string& bytes) {
    std::error_code ec;
    fs::path dir = target.has_parent_path() ? target.parent_path() : fs::path(".");
    fs::create_directories(dir, ec);
    if (ec) return "cannot create " + dir.string() + ": " + ec.message();

    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) return "cannot open " + tmp.string();
        out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
        out.flush();
        if (!out) {
            out.close();
            fs::remove(tmp, ec);
            return "short write to " + tmp.string();
        }
    }
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp, ec);
        return "cannot move " + tmp.string() + " into place: " + ec.message();
    }
    return std::monostate{};
}

}  // namespace amcm::cli
