#include "amcm/tpl/context.hpp"

#include <set>
#include <utility>

namespace amcm::tpl {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r'))
        s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

lang::ParseError line_error(lang::ParseErrorKind kind, int line, int column, std::string message) {
    lang::ParseError err;
    err.kind = kind;
    err.pos = SourcePos{line, column};
    err.message = std::move(message);
    return err;
}

}  // namespace

const std::string* PersonalizationContext::find(char axis, const std::string& key) const {
    switch (axis) {
        case 'p': return &status;
        case 's': {
            auto it = prefs.find(key);
            return it == prefs.end() ? nullptr : &it->second;
        }
        case 'v': {
            auto it = client.find(key);
            return it == client.end() ? nullptr : &it->second;
        }
        case 'e': {
            auto it = device.find(key);
            return it == device.end() ? nullptr : &it->second;
        }
        default: return nullptr;
    }
}

std::string PersonalizationContext::fingerprint() const {
    std::string out = "p=" + status;
    auto add = [&out](char axis, const std::map<std::string, std::string>& m) {
        for (const auto& [k, v] : m) {
            out += ' ';
            out += axis;
            out += '.';
            out += k;
            out += '=';
            out += v;
        }
    };
    add('s', prefs);
    add('v', client);
    add('e', device);
    return out;
}

Result<PersonalizationContext, lang::ParseError> parse_context(std::string_view source) {
    PersonalizationContext ctx;
    bool status_set = false;
    int line_no = 0;
    std::size_t start = 0;
    while (start <= source.size()) {
        ++line_no;
        std::size_t nl = source.find('\n', start);
        std::string_view raw = source.substr(
            start, nl == std::string_view::npos ? std::string_view::npos : nl - start);
        std::size_t next = nl == std::string_view::npos ? source.size() + 1 : nl + 1;

        std::string_view line = trim(raw);
        start = next;
        if (line.empty() || line.front() == '#') {
            if (nl == std::string_view::npos) break;
            continue;
        }
        int column = static_cast<int>(raw.find_first_not_of(" \t")) + 1;

        std::size_t eq = line.find('=');
        if (eq == std::string_view::npos)
            return line_error(lang::ParseErrorKind::Syntax, line_no, column,
                              "expected 'key = value'");
        std::string key(trim(line.substr(0, eq)));
        std::string value(trim(line.substr(eq + 1)));

        if (key == "p") {
            if (status_set)
                return line_error(lang::ParseErrorKind::DuplicateKey, line_no, column,
                                  "registration status 'p' set twice");
            ctx.status = value;
            status_set = true;
        } else if (key.size() > 2 && key[1] == '.' &&
                   (key[0] == 's' || key[0] == 'v' || key[0] == 'e')) {
            std::string sub = key.substr(2);
            auto& target = key[0] == 's' ? ctx.prefs : key[0] == 'v' ? ctx.client : ctx.device;
            if (!target.emplace(sub, value).second)
                return line_error(lang::ParseErrorKind::DuplicateKey, line_no, column,
                                  "context key '" + key + "' set twice");
        } else {
            return line_error(lang::ParseErrorKind::Syntax, line_no, column,
                              "unknown context key '" + key +
                                  "' (want p, s.<k>, v.<k>, or e.<k>)");
        }
        if (nl == std::string_view::npos) break;
    }
    return ctx;
}

}  // namespace amcm::tpl
