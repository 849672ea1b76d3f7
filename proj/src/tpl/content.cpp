#include "amcm/tpl/content.hpp"

#include <algorithm>
#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <utility>

namespace amcm::tpl {

namespace {

namespace fs = std::filesystem;

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r'))
        s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

lang::ParseError at_line(int line, std::string message,
                         lang::ParseErrorKind kind = lang::ParseErrorKind::Syntax) {
    lang::ParseError err;
    err.kind = kind;
    err.pos = SourcePos{line, 1};
    err.message = std::move(message);
    return err;
}

// Splits into lines without the trailing '\n'. A final '\n' terminates the
// last line rather than opening an empty one, so "a\n" is one line.
std::vector<std::string_view> split_lines(std::string_view src) {
    std::vector<std::string_view> lines;
    std::size_t start = 0;
    while (start < src.size()) {
        std::size_t nl = src.find('\n', start);
        if (nl == std::string_view::npos) {
            lines.push_back(src.substr(start));
            break;
        }
        lines.push_back(src.substr(start, nl - start));
        start = nl + 1;
    }
    return lines;
}

Result<Guard, lang::ParseError> parse_guard(std::string_view text, int line) {
    Guard g;
    text = trim(text);
    if (text == "default") {
        g.is_default = true;
        return g;
    }
    if (text.empty()) return at_line(line, "empty guard");
    std::vector<std::pair<char, std::string>> seen;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t amp = text.find('&', start);
        std::string_view cond_text =
            trim(text.substr(start, amp == std::string_view::npos ? std::string_view::npos
                                                                  : amp - start));
        start = amp == std::string_view::npos ? text.size() + 1 : amp + 1;

        std::size_t eq = cond_text.find('=');
        if (eq == std::string_view::npos)
            return at_line(line, "guard condition needs '=': '" + std::string(cond_text) + "'");
        std::string_view key = trim(cond_text.substr(0, eq));
        std::string_view value = trim(cond_text.substr(eq + 1));

        GuardCond cond;
        if (key == "p") {
            cond.axis = 'p';
        } else if (key.size() > 2 && key[1] == '.' &&
                   (key[0] == 's' || key[0] == 'v' || key[0] == 'e')) {
            cond.axis = key[0];
            cond.key = std::string(key.substr(2));
        } else {
            return at_line(line, "unknown guard key '" + std::string(key) + "'");
        }
        cond.value = std::string(value);

        auto id = std::make_pair(cond.axis, cond.key);
        if (std::find(seen.begin(), seen.end(), id) != seen.end())
            return at_line(line, "guard key '" + std::string(key) + "' repeated",
                           lang::ParseErrorKind::DuplicateKey);
        seen.push_back(id);
        g.conds.push_back(std::move(cond));
        if (amp == std::string_view::npos) break;
    }
    return g;
}

Result<Value, lang::ParseError> parse_payload(std::string_view text, TypeTag tag, int line) {
    switch (tag) {
        case TypeTag::Text: return Value::text(std::string(text));
        case TypeTag::Markup: return Value::markup(std::string(text));
        case TypeTag::Int: {
            std::string t(trim(text));
            if (t.empty()) return at_line(line, "empty Int payload");
            errno = 0;
            char* end = nullptr;
            long long n = std::strtoll(t.c_str(), &end, 10);
            if (errno == ERANGE || end != t.c_str() + t.size())
                return at_line(line, "bad Int payload '" + t + "'");
            return Value::integer(n);
        }
        case TypeTag::Bool: {
            std::string_view t = trim(text);
            if (t == "true") return Value::boolean(true);
            if (t == "false") return Value::boolean(false);
            return at_line(line, "bad Bool payload '" + std::string(t) + "'");
        }
        default:
            return at_line(line, "content files hold atomic payloads only");
    }
}

bool is_variant_header(std::string_view line) {
    std::string_view t = trim(line);
    return t.size() > 8 && t.substr(0, 8) == "variant " && t.back() == ':';
}

}  // namespace

bool Guard::satisfied_by(const PersonalizationContext& ctx) const {
    if (is_default) return true;
    for (const GuardCond& c : conds) {
        const std::string* got = ctx.find(c.axis, c.key);
        if (got == nullptr || *got != c.value) return false;
    }
    return true;
}

std::string Guard::show() const {
    if (is_default) return "default";
    std::string out;
    for (std::size_t i = 0; i < conds.size(); ++i) {
        if (i) out += " & ";
        out += conds[i].axis;
        if (conds[i].axis != 'p') {
            out += '.';
            out += conds[i].key;
        }
        out += '=';
        out += conds[i].value;
    }
    return out;
}

std::string StoreError::to_string() const {
    const char* label = "store error";
    switch (kind) {
        case StoreErrorKind::Parse: label = "content parse error"; break;
        case StoreErrorKind::DuplicatePath: label = "duplicate content path"; break;
        case StoreErrorKind::NoVariant: label = "no matching variant"; break;
        case StoreErrorKind::MissingPath: label = "unknown content path"; break;
        case StoreErrorKind::Io: label = "content io error"; break;
    }
    std::string out = label;
    if (!path.empty()) out += " [" + path + "]";
    if (!message.empty()) out += ": " + message;
    return out;
}

StoreResult<std::monostate> ContentStore::insert(ContentObject obj) {
    std::string path = obj.path;
    if (!objects_.emplace(path, std::move(obj)).second)
        return StoreError{StoreErrorKind::DuplicatePath, path, "already in the store"};
    return std::monostate{};
}

const ContentObject* ContentStore::find(const std::string& path) const {
    auto it = objects_.find(path);
    return it == objects_.end() ? nullptr : &it->second;
}

Result<ContentObject, lang::ParseError> parse_content(std::string_view source,
                                                      const std::string& path) {
    std::vector<std::string_view> lines = split_lines(source);
    std::size_t i = 0;

    // Header: first significant line is `type: <Tag>`.
    while (i < lines.size() && (trim(lines[i]).empty() || trim(lines[i]).front() == '#')) ++i;
    if (i >= lines.size()) return at_line(1, "missing 'type:' header");
    std::string_view header = trim(lines[i]);
    if (header.substr(0, 5) != "type:")
        return at_line(static_cast<int>(i + 1), "expected 'type: <Tag>' header");
    std::string tag_name(trim(header.substr(5)));
    auto tag = type_from_name(tag_name);
    if (!tag.has_value() || *tag == TypeTag::List || *tag == TypeTag::Record)
        return at_line(static_cast<int>(i + 1), "bad content type '" + tag_name + "'");
    ++i;

    ContentObject obj;
    obj.path = path;
    obj.type = *tag;

    // Collects payload lines from `from` up to the next variant header or
    // EOF; exactly one trailing newline is dropped.
    auto take_payload = [&lines](std::size_t from, std::size_t* next) {
        std::string payload;
        std::size_t j = from;
        for (; j < lines.size() && !is_variant_header(lines[j]); ++j) {
            payload += std::string(lines[j]);
            payload += '\n';
        }
        if (!payload.empty()) payload.pop_back();
        *next = j;
        return payload;
    };

    while (i < lines.size() && (trim(lines[i]).empty() || trim(lines[i]).front() == '#')) ++i;
    if (i >= lines.size()) return at_line(static_cast<int>(lines.size()), "missing payload");

    if (trim(lines[i]) == "---") {
        // Bare form: the whole remainder is one default-variant payload.
        std::size_t next = 0;
        int payload_line = static_cast<int>(i + 2);
        std::string payload = take_payload(i + 1, &next);
        if (next != lines.size())
            return at_line(static_cast<int>(next + 1),
                           "variant sections need a guard on every payload");
        auto value = parse_payload(payload, obj.type, payload_line);
        if (!value.ok()) return std::move(value).error();
        obj.variants.push_back(Variant{Guard{true, {}}, std::move(value).value()});
        return obj;
    }

    bool saw_default = false;
    while (i < lines.size()) {
        std::string_view line = trim(lines[i]);
        if (line.empty() || line.front() == '#') {
            ++i;
            continue;
        }
        if (!is_variant_header(lines[i]))
            return at_line(static_cast<int>(i + 1), "expected 'variant <guard>:'");
        if (saw_default)
            return at_line(static_cast<int>(i + 1), "'default' must be the last variant");
        std::string_view guard_text = trim(line.substr(8, line.size() - 9));
        auto guard = parse_guard(guard_text, static_cast<int>(i + 1));
        if (!guard.ok()) return std::move(guard).error();
        saw_default = guard.value().is_default;
        ++i;
        if (i >= lines.size() || trim(lines[i]) != "---")
            return at_line(static_cast<int>(i + 1), "expected '---' after the variant guard");
        ++i;
        std::size_t next = 0;
        int payload_line = static_cast<int>(i + 1);
        std::string payload = take_payload(i, &next);
        auto value = parse_payload(payload, obj.type, payload_line);
        if (!value.ok()) return std::move(value).error();
        obj.variants.push_back(Variant{std::move(guard).value(), std::move(value).value()});
        i = next;
    }
    if (obj.variants.empty()) return at_line(static_cast<int>(lines.size()), "missing payload");
    return obj;
}

StoreResult<ContentStore> load_store(const fs::path& root) {
    std::error_code ec;
    if (!fs::is_directory(root, ec))
        return StoreError{StoreErrorKind::Io, root.string(), "not a directory"};

    std::vector<fs::path> files;
    for (fs::recursive_directory_iterator it(root, ec), end; it != end; it.increment(ec)) {
        if (ec) return StoreError{StoreErrorKind::Io, root.string(), ec.message()};
        if (it->is_regular_file() && it->path().extension() == ".amc")
            files.push_back(it->path());
    }
    std::sort(files.begin(), files.end());

    ContentStore store;
    for (const fs::path& file : files) {
        std::ifstream in(file, std::ios::binary);
        if (!in) return StoreError{StoreErrorKind::Io, file.string(), "unreadable"};
        std::ostringstream buf;
        buf << in.rdbuf();

        fs::path rel = fs::relative(file, root);
        std::string store_path = rel.parent_path().generic_string();
        if (!store_path.empty()) store_path += '/';
        store_path += rel.stem().string();

        auto obj = parse_content(buf.str(), store_path);
        if (!obj.ok())
            return StoreError{StoreErrorKind::Parse, file.string(), obj.error().to_string()};
        auto ins = store.insert(std::move(obj).value());
        if (!ins.ok()) return std::move(ins).error();
    }
    return store;
}

StoreResult<Value> resolve_variant(const ContentObject& obj, const PersonalizationContext& ctx) {
    const Variant* best = nullptr;
    int best_score = -1;
    for (const Variant& v : obj.variants) {
        if (!v.guard.satisfied_by(ctx)) continue;
        if (v.guard.score() > best_score) {
            best = &v;
            best_score = v.guard.score();
        }
    }
    if (best == nullptr)
        return StoreError{StoreErrorKind::NoVariant, obj.path,
                          "no variant matches context [" + ctx.fingerprint() + "]"};
    return best->payload;
}

}  // namespace amcm::tpl
