#include <cctype>
#include <cerrno>
#include <cstdint>
#include <cstdlib>
#include <cstring>

#include "amcm/lang/token.hpp"

namespace amcm::lang {

std::string ParseError::to_string() const {
    const char* label = "parse error";
    switch (kind) {
        case ParseErrorKind::Lex: label = "lex error"; break;
        case ParseErrorKind::Syntax: label = "parse error"; break;
        case ParseErrorKind::UndeclaredHole: label = "undeclared hole"; break;
        case ParseErrorKind::DuplicateKey: label = "duplicate key"; break;
    }
    std::string out = std::string(label) + " at " + pos.to_string() + ": " + message;
    if (!expected.empty()) {
        out += " (expected ";
        for (size_t i = 0; i < expected.size(); ++i) {
            if (i) out += " | ";
            out += expected[i];
        }
        out += ")";
    }
    return out;
}

const std::set<std::string>& program_keywords() {
    static const std::set<std::string> kws = {"if",   "else",    "emit", "content",
                                              "read", "markup",  "true", "false",
                                              "bind", "template"};
    return kws;
}

const std::set<std::string>& model_keywords() {
    static const std::set<std::string> kws = {"domain", "concept", "individual", "state",
                                              "object", "over",    "fns",        "in",
                                              "and",    "or",      "not",        "unique",
                                              "true",   "false"};
    return kws;
}

namespace {

struct Cursor {
    const std::string& src;
    size_t i = 0;
    SourcePos pos;

    bool done() const { return i >= src.size(); }
    char peek() const { return src[i]; }
    bool starts_with(const char* s) const { return src.compare(i, strlen(s), s) == 0; }
    char pop() {
        char c = src[i++];
        pos.advance(c);
        return c;
    }
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

ParseError lex_err(SourcePos pos, std::string message) {
    return ParseError{ParseErrorKind::Lex, pos, std::move(message), {}};
}

}  // namespace

Result<std::vector<Token>, ParseError> tokenize(const std::string& source,
                                                const std::set<std::string>& keywords) {
    std::vector<Token> tokens;
    Cursor cur{source, 0, SourcePos{}};

    while (!cur.done()) {
        char c = cur.peek();
        if (std::isspace(static_cast<unsigned char>(c))) {
            cur.pop();
            continue;
        }
        if (c == '#') {  // comment to end of line
            while (!cur.done() && cur.peek() != '\n') cur.pop();
            continue;
        }

        SourcePos start = cur.pos;
        size_t start_off = cur.i;

        if (ident_start(c)) {
            while (!cur.done() && ident_char(cur.peek())) cur.pop();
            std::string text = source.substr(start_off, cur.i - start_off);
            TokenKind kind = keywords.count(text) ? TokenKind::Keyword : TokenKind::Identifier;
            tokens.push_back(Token{kind, std::move(text), start, start_off, std::nullopt});
            continue;
        }

        if (std::isdigit(static_cast<unsigned char>(c)) ||
            (c == '-' && cur.i + 1 < source.size() &&
             std::isdigit(static_cast<unsigned char>(source[cur.i + 1])))) {
            if (c == '-') cur.pop();
            while (!cur.done() && std::isdigit(static_cast<unsigned char>(cur.peek()))) cur.pop();
            std::string text = source.substr(start_off, cur.i - start_off);
            errno = 0;
            char* end = nullptr;
            long long n = std::strtoll(text.c_str(), &end, 10);
            if (errno != 0 || end != text.c_str() + text.size())
                return lex_err(start, "integer literal out of 64-bit range: " + text);
            tokens.push_back(
                Token{TokenKind::Literal, std::move(text), start, start_off, Literal::integer(n)});
            continue;
        }

        if (c == '"') {
            cur.pop();
            std::string decoded;
            bool closed = false;
            while (!cur.done()) {
                char d = cur.pop();
                if (d == '"') {
                    closed = true;
                    break;
                }
                if (d == '\\') {
                    if (cur.done()) break;
                    char e = cur.pop();
                    switch (e) {
                        case '"': decoded += '"'; break;
                        case '\\': decoded += '\\'; break;
                        case 'n': decoded += '\n'; break;
                        case 't': decoded += '\t'; break;
                        default:
                            return lex_err(start, std::string("unknown escape \\") + e +
                                                      " in string literal");
                    }
                    continue;
                }
                if (d == '\n') break;  // strings do not span lines
                decoded += d;
            }
            if (!closed) return lex_err(start, "unterminated string literal");
            tokens.push_back(Token{TokenKind::Literal, source.substr(start_off, cur.i - start_off),
                                   start, start_off, Literal::text(std::move(decoded))});
            continue;
        }

        if (cur.starts_with("<<<")) {
            cur.pop();
            cur.pop();
            cur.pop();
            size_t body_start = cur.i;
            while (!cur.done() && !cur.starts_with(">>>")) cur.pop();
            if (cur.done()) return lex_err(start, "unterminated <<< raw block");
            std::string body = source.substr(body_start, cur.i - body_start);
            cur.pop();
            cur.pop();
            cur.pop();
            tokens.push_back(Token{TokenKind::Literal, source.substr(start_off, cur.i - start_off),
                                   start, start_off, Literal::markup(std::move(body))});
            continue;
        }

        if (cur.starts_with("==") || cur.starts_with("!=")) {
            cur.pop();
            cur.pop();
            tokens.push_back(Token{TokenKind::Punctuation, source.substr(start_off, 2), start,
                                   start_off, std::nullopt});
            continue;
        }

        if (std::string("=;(){},.:@|").find(c) != std::string::npos) {
            cur.pop();
            tokens.push_back(Token{TokenKind::Punctuation, std::string(1, c), start, start_off,
                                   std::nullopt});
            continue;
        }

        return lex_err(start, std::string("illegal character '") + c + "'");
    }

    return tokens;
}

}  // namespace amcm::lang
