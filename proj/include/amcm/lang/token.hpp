#pragma once

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "amcm/result.hpp"
#include "amcm/source_pos.hpp"
#include "amcm/value.hpp"

namespace amcm::lang {

enum class TokenKind { Identifier, Literal, Keyword, Punctuation };

struct Token {
    TokenKind kind;
    std::string text;  // the raw source slice
    SourcePos pos;
    size_t offset = 0;  // byte offset of `text` in the source
    // Decoded payload for Literal tokens (string/int/markup bodies).
    std::optional<amcm::Literal> literal;

    bool is_punct(std::string_view p) const { return kind == TokenKind::Punctuation && text == p; }
    bool is_keyword(std::string_view k) const { return kind == TokenKind::Keyword && text == k; }
};

enum class ParseErrorKind { Lex, Syntax, UndeclaredHole, DuplicateKey };

struct ParseError {
    ParseErrorKind kind = ParseErrorKind::Syntax;
    SourcePos pos;
    std::string message;
    std::vector<std::string> expected;

    std::string to_string() const;
};

// Keyword sets: words lexed with TokenKind::Keyword.
const std::set<std::string>& program_keywords();  // the binding language
const std::set<std::string>& model_keywords();    // the textual model format

// Splits `source` into tokens. Whitespace and `#` end-of-line comments are
// skipped; everything else must form a token. `<<< ... >>>` scans as one
// raw markup literal.
Result<std::vector<Token>, ParseError> tokenize(const std::string& source,
                                                const std::set<std::string>& keywords =
                                                    program_keywords());

}  // namespace amcm::lang
