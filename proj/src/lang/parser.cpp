#include "amcm/lang/parser.hpp"

#include <utility>
#include <vector>

namespace amcm::lang {

namespace {

// Cursor over the token vector with one-token lookahead helpers.
class TokenStream {
public:
    TokenStream(std::vector<Token> tokens, SourcePos end_pos)
        : tokens_(std::move(tokens)), end_pos_(end_pos) {}

    bool at_end() const { return index_ >= tokens_.size(); }

    const Token* peek() const { return at_end() ? nullptr : &tokens_[index_]; }

    const Token& advance() { return tokens_[index_++]; }

    SourcePos here() const { return at_end() ? end_pos_ : tokens_[index_].pos; }

    bool check_punct(std::string_view text) const {
        const Token* t = peek();
        return t != nullptr && t->is_punct(text);
    }

    bool check_keyword(std::string_view word) const {
        const Token* t = peek();
        return t != nullptr && t->is_keyword(word);
    }

    bool match_punct(std::string_view text) {
        if (!check_punct(text)) return false;
        ++index_;
        return true;
    }

    bool match_keyword(std::string_view word) {
        if (!check_keyword(word)) return false;
        ++index_;
        return true;
    }

    std::string describe_head() const {
        const Token* t = peek();
        if (t == nullptr) return "end of input";
        return "'" + t->text + "'";
    }

private:
    std::vector<Token> tokens_;
    SourcePos end_pos_;
    std::size_t index_ = 0;
};

ParseError syntax_error(const TokenStream& ts, std::string message,
                        std::vector<std::string> expected = {}) {
    ParseError err;
    err.kind = ParseErrorKind::Syntax;
    err.pos = ts.here();
    err.message = std::move(message) + ", found " + ts.describe_head();
    err.expected = std::move(expected);
    return err;
}

class ProgramParser {
public:
    explicit ProgramParser(TokenStream ts) : ts_(std::move(ts)) {}

    ParseResult<ComPtr> program() {
        auto body = command_list();
        if (!body.ok()) return std::move(body).error();
        if (!ts_.at_end())
            return syntax_error(ts_, "expected a command", {"identifier", "if", "emit"});
        return std::move(body).value();
    }

    ParseResult<BindingAst> binding() {
        if (!ts_.match_keyword("bind"))
            return syntax_error(ts_, "expected 'bind'", {"bind"});
        const Token* name = ts_.peek();
        if (name == nullptr || !name->literal.has_value() ||
            name->literal->tag() != TypeTag::Text)
            return syntax_error(ts_, "expected a quoted template name");
        std::string template_name = name->literal->text_value();
        ts_.advance();
        if (!ts_.match_punct("{"))
            return syntax_error(ts_, "expected '{' after the template name", {"{"});
        auto body = command_list();
        if (!body.ok()) return std::move(body).error();
        if (!ts_.match_punct("}"))
            return syntax_error(ts_, "expected '}' closing the binding", {"}"});
        if (!ts_.at_end())
            return syntax_error(ts_, "expected end of file after the binding");
        return BindingAst{std::move(template_name), std::move(body).value()};
    }

    bool starts_with_bind() const { return ts_.check_keyword("bind"); }

private:
    // com+ folded to the right: c1 c2 c3 => Seq(c1, Seq(c2, c3)).
    ParseResult<ComPtr> command_list() {
        std::vector<ComPtr> commands;
        do {
            auto c = command();
            if (!c.ok()) return std::move(c).error();
            commands.push_back(std::move(c).value());
        } while (starts_command());
        return seq_of(commands);
    }

    bool starts_command() const {
        const Token* t = ts_.peek();
        if (t == nullptr) return false;
        return t->kind == TokenKind::Identifier || t->is_keyword("if") ||
               t->is_keyword("emit");
    }

    ParseResult<ComPtr> command() {
        SourcePos pos = ts_.here();
        if (ts_.match_keyword("if")) return if_command(pos);
        if (ts_.match_keyword("emit")) {
            auto e = expression();
            if (!e.ok()) return std::move(e).error();
            if (!ts_.match_punct(";"))
                return syntax_error(ts_, "expected ';' after emit", {";"});
            return mk_emit(std::move(e).value(), pos);
        }
        const Token* t = ts_.peek();
        if (t != nullptr && t->kind == TokenKind::Identifier) {
            std::string name = t->text;
            ts_.advance();
            if (!ts_.match_punct("="))
                return syntax_error(ts_, "expected '=' after '" + name + "'", {"="});
            auto e = expression();
            if (!e.ok()) return std::move(e).error();
            if (!ts_.match_punct(";"))
                return syntax_error(ts_, "expected ';' after assignment", {";"});
            return mk_assign(std::move(name), std::move(e).value(), pos);
        }
        return syntax_error(ts_, "expected a command", {"identifier", "if", "emit"});
    }

    ParseResult<ComPtr> if_command(SourcePos pos) {
        if (!ts_.match_punct("("))
            return syntax_error(ts_, "expected '(' after 'if'", {"("});
        auto cond = expression();
        if (!cond.ok()) return std::move(cond).error();
        if (!ts_.match_punct(")"))
            return syntax_error(ts_, "expected ')' after the condition", {")"});
        auto then_branch = block();
        if (!then_branch.ok()) return std::move(then_branch).error();
        ComPtr else_branch;
        if (ts_.match_keyword("else")) {
            auto e = block();
            if (!e.ok()) return std::move(e).error();
            else_branch = std::move(e).value();
        }
        return mk_if(std::move(cond).value(), std::move(then_branch).value(),
                     std::move(else_branch), pos);
    }

    ParseResult<ComPtr> block() {
        if (!ts_.match_punct("{"))
            return syntax_error(ts_, "expected '{'", {"{"});
        auto body = command_list();
        if (!body.ok()) return std::move(body).error();
        if (!ts_.match_punct("}"))
            return syntax_error(ts_, "expected '}'", {"}"});
        return std::move(body).value();
    }

    ParseResult<ExpPtr> expression() {
        SourcePos pos = ts_.here();
        auto lhs = atom();
        if (!lhs.ok()) return std::move(lhs).error();
        if (ts_.match_punct("==")) {
            auto rhs = atom();
            if (!rhs.ok()) return std::move(rhs).error();
            return mk_eq(std::move(lhs).value(), std::move(rhs).value(), pos);
        }
        if (ts_.match_punct("!=")) {
            auto rhs = atom();
            if (!rhs.ok()) return std::move(rhs).error();
            return mk_neq(std::move(lhs).value(), std::move(rhs).value(), pos);
        }
        return std::move(lhs).value();
    }

    ParseResult<ExpPtr> atom() {
        SourcePos pos = ts_.here();
        const Token* t = ts_.peek();
        if (t == nullptr)
            return syntax_error(ts_, "expected an expression",
                                {"literal", "identifier", "content", "read"});
        if (t->kind == TokenKind::Literal) {
            Literal lit = *t->literal;
            ts_.advance();
            return mk_lit(std::move(lit), pos);
        }
        if (ts_.match_keyword("true")) return mk_lit(Literal::boolean(true), pos);
        if (ts_.match_keyword("false")) return mk_lit(Literal::boolean(false), pos);
        if (ts_.match_keyword("read")) {
            if (!ts_.match_punct("("))
                return syntax_error(ts_, "expected '(' after 'read'", {"("});
            if (!ts_.match_punct(")"))
                return syntax_error(ts_, "expected ')' after 'read('", {")"});
            return mk_read(pos);
        }
        if (ts_.match_keyword("content")) {
            auto path = quoted_argument("content");
            if (!path.ok()) return std::move(path).error();
            if (path.value().empty())
                return ParseError{ParseErrorKind::Syntax, pos,
                                  "content path must not be empty", {}};
            return mk_content(std::move(path).value(), pos);
        }
        if (ts_.match_keyword("markup")) {
            auto body = quoted_argument("markup");
            if (!body.ok()) return std::move(body).error();
            return mk_lit(Literal::markup(std::move(body).value()), pos);
        }
        if (t->kind == TokenKind::Identifier) {
            std::string name = t->text;
            ts_.advance();
            return mk_ident(std::move(name), pos);
        }
        return syntax_error(ts_, "expected an expression",
                            {"literal", "identifier", "content", "read"});
    }

    // "(" STRING ")" after a keyword such as content/markup.
    ParseResult<std::string> quoted_argument(const std::string& keyword) {
        if (!ts_.match_punct("("))
            return syntax_error(ts_, "expected '(' after '" + keyword + "'", {"("});
        const Token* arg = ts_.peek();
        if (arg == nullptr || !arg->literal.has_value() ||
            arg->literal->tag() != TypeTag::Text)
            return syntax_error(ts_, "expected a string argument to '" + keyword + "'");
        std::string text = arg->literal->text_value();
        ts_.advance();
        if (!ts_.match_punct(")"))
            return syntax_error(ts_, "expected ')' after the argument", {")"});
        return text;
    }

    TokenStream ts_;
};

SourcePos end_of(std::string_view source) {
    SourcePos pos;
    for (char c : source) pos.advance(c);
    return pos;
}

ParseResult<TokenStream> lex(std::string_view source) {
    auto tokens = tokenize(std::string(source), program_keywords());
    if (!tokens.ok()) return std::move(tokens).error();
    return TokenStream(std::move(tokens).value(), end_of(source));
}

}  // namespace

ParseResult<ComPtr> parse_program(std::string_view source) {
    auto ts = lex(source);
    if (!ts.ok()) return std::move(ts).error();
    return ProgramParser(std::move(ts).value()).program();
}

ParseResult<BindingAst> parse_binding(std::string_view source) {
    auto ts = lex(source);
    if (!ts.ok()) return std::move(ts).error();
    return ProgramParser(std::move(ts).value()).binding();
}

ParseResult<BindingAst> parse_program_or_binding(std::string_view source) {
    auto ts = lex(source);
    if (!ts.ok()) return std::move(ts).error();
    ProgramParser parser(std::move(ts).value());
    if (parser.starts_with_bind()) return parser.binding();
    auto program = parser.program();
    if (!program.ok()) return std::move(program).error();
    return BindingAst{"", std::move(program).value()};
}

}  // namespace amcm::lang
