#include "amcm/cdm/text.hpp"

#include <set>
#include <utility>
#include <vector>

namespace amcm::cdm {

namespace {

using lang::Token;
using lang::TokenKind;

class ModelParser {
public:
    explicit ModelParser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

    Result<DomainModel, TextError> parse() {
        DomainModel model;
        while (!at_end()) {
            auto step = declaration(model);
            if (!step.ok()) return std::move(step).error();
            model = std::move(step).value();
        }
        return model;
    }

    Result<FormulaPtr, TextError> parse_single_formula() {
        auto f = formula();
        if (!f.ok()) return std::move(f).error();
        if (!at_end()) return fail("trailing input after the formula");
        return f;
    }

private:
    bool at_end() const { return i_ >= tokens_.size(); }
    const Token* peek() const { return at_end() ? nullptr : &tokens_[i_]; }
    SourcePos here() const { return at_end() ? SourcePos{} : tokens_[i_].pos; }

    TextError fail(std::string message) const {
        return TextError{here(), std::move(message) + describe_head(), false};
    }

    std::string describe_head() const {
        if (at_end()) return " (at end of input)";
        return " (found '" + tokens_[i_].text + "')";
    }

    bool match_kw(std::string_view kw) {
        if (peek() && peek()->is_keyword(kw)) {
            ++i_;
            return true;
        }
        return false;
    }

    bool match_punct(std::string_view p) {
        if (peek() && peek()->is_punct(p)) {
            ++i_;
            return true;
        }
        return false;
    }

    Result<Identifier, TextError> ident(const char* what) {
        if (peek() && peek()->kind == TokenKind::Identifier) {
            return tokens_[i_++].text;
        }
        return fail(std::string("expected ") + what);
    }

    Result<std::monostate, TextError> expect_punct(const char* p) {
        if (!match_punct(p)) return fail(std::string("expected '") + p + "'");
        return std::monostate{};
    }

    Result<Literal, TextError> literal() {
        if (peek() && peek()->kind == TokenKind::Literal) {
            return *tokens_[i_++].literal;
        }
        if (match_kw("true")) return Literal::boolean(true);
        if (match_kw("false")) return Literal::boolean(false);
        return fail("expected a literal");
    }

    // Applies a model operation, wrapping its rejection as a positioned error.
    template <typename R>
    Result<typename R::value_type, TextError> apply(R r, SourcePos pos) {
        if (!r.ok()) return TextError{pos, r.error().to_string(), true};
        return std::move(r).value();
    }

    Result<DomainModel, TextError> declaration(const DomainModel& model) {
        SourcePos pos = here();
        if (match_kw("domain")) {
            auto name = ident("a domain name");
            if (!name.ok()) return std::move(name).error();
            auto end = expect_punct(";");
            if (!end.ok()) return std::move(end).error();
            return apply(declare_domain(model, std::move(name).value()), pos);
        }
        if (match_kw("concept")) return concept_decl(model, pos);
        if (match_kw("individual")) return individual_decl(model, pos);
        if (match_kw("state")) return state_decl(model, pos);
        if (match_kw("object")) return object_decl(model, pos);
        return fail("expected a declaration (domain, concept, individual, state, object)");
    }

    Result<DomainModel, TextError> concept_decl(const DomainModel& model, SourcePos pos) {
        Concept c;
        auto name = ident("a concept name");
        if (!name.ok()) return std::move(name).error();
        c.name = std::move(name).value();
        if (!match_kw("over")) return fail("expected 'over'");
        auto dom = ident("a domain name");
        if (!dom.ok()) return std::move(dom).error();
        c.domain_name = std::move(dom).value();
        auto colon = expect_punct(":");
        if (!colon.ok()) return std::move(colon).error();
        auto type_tok = ident("a type name");
        if (!type_tok.ok()) return std::move(type_tok).error();
        auto tag = type_from_name(type_tok.value());
        if (!tag.has_value()) return fail("unknown type '" + type_tok.value() + "'");
        c.value_type = *tag;
        if (!match_kw("fns")) return fail("expected 'fns'");
        auto open = expect_punct("(");
        if (!open.ok()) return std::move(open).error();
        while (true) {
            auto fn = ident("a function name");
            if (!fn.ok()) return std::move(fn).error();
            c.function_names.push_back(std::move(fn).value());
            if (match_punct(",")) continue;
            break;
        }
        auto close = expect_punct(")");
        if (!close.ok()) return std::move(close).error();
        auto end = expect_punct(";");
        if (!end.ok()) return std::move(end).error();
        return apply(define_concept(model, std::move(c)), pos);
    }

    Result<DomainModel, TextError> individual_decl(const DomainModel& model, SourcePos pos) {
        auto dom = ident("a domain name");
        if (!dom.ok()) return std::move(dom).error();
        auto dot = expect_punct(".");
        if (!dot.ok()) return std::move(dot).error();
        auto id = ident("an individual id");
        if (!id.ok()) return std::move(id).error();
        auto open = expect_punct("{");
        if (!open.ok()) return std::move(open).error();

        Individual ind;
        ind.id = std::move(id).value();
        while (!match_punct("}")) {
            auto cname = ident("a concept name");
            if (!cname.ok()) return std::move(cname).error();
            auto adot = expect_punct(".");
            if (!adot.ok()) return std::move(adot).error();
            auto fname = ident("a function name");
            if (!fname.ok()) return std::move(fname).error();
            auto eq = expect_punct("=");
            if (!eq.ok()) return std::move(eq).error();
            auto lit = literal();
            if (!lit.ok()) return std::move(lit).error();
            auto end = expect_punct(";");
            if (!end.ok()) return std::move(end).error();
            AttrKey key{std::move(cname).value(), std::move(fname).value()};
            if (!ind.attributes.emplace(std::move(key), std::move(lit).value()).second)
                return TextError{pos, "attribute assigned twice in one individual", false};
        }
        return apply(add_individual(model, dom.value(), std::move(ind)), pos);
    }

    Result<DomainModel, TextError> state_decl(const DomainModel& model, SourcePos pos) {
        auto state = ident("a state id");
        if (!state.ok()) return std::move(state).error();
        auto dom = ident("a domain name");
        if (!dom.ok()) return std::move(dom).error();
        auto eq = expect_punct("=");
        if (!eq.ok()) return std::move(eq).error();
        auto open = expect_punct("{");
        if (!open.ok()) return std::move(open).error();
        std::set<Identifier> members;
        if (!match_punct("}")) {
            while (true) {
                auto id = ident("an individual id");
                if (!id.ok()) return std::move(id).error();
                members.insert(std::move(id).value());
                if (match_punct(",")) continue;
                break;
            }
            auto close = expect_punct("}");
            if (!close.ok()) return std::move(close).error();
        }
        auto end = expect_punct(";");
        if (!end.ok()) return std::move(end).error();
        return apply(set_state_membership(model, dom.value(), StateId{state.value()},
                                          std::move(members)),
                     pos);
    }

    Result<DomainModel, TextError> object_decl(const DomainModel& model, SourcePos pos) {
        bool unique_flag = match_kw("unique");
        auto name = ident("an object name");
        if (!name.ok()) return std::move(name).error();
        auto eq = expect_punct("=");
        if (!eq.ok()) return std::move(eq).error();
        auto open = expect_punct("{");
        if (!open.ok()) return std::move(open).error();
        auto binder = ident("the bound variable");
        if (!binder.ok()) return std::move(binder).error();
        if (!match_kw("in")) return fail("expected 'in'");
        auto base = ident("a base name");
        if (!base.ok()) return std::move(base).error();
        auto bar = expect_punct("|");
        if (!bar.ok()) return std::move(bar).error();
        auto f = formula();
        if (!f.ok()) return std::move(f).error();
        auto close = expect_punct("}");
        if (!close.ok()) return std::move(close).error();
        auto at = expect_punct("@");
        if (!at.ok()) return std::move(at).error();
        auto state = ident("a state id");
        if (!state.ok()) return std::move(state).error();
        auto end = expect_punct(";");
        if (!end.ok()) return std::move(end).error();
        auto made = apply(comprehend(model, base.value(), f.value(), StateId{state.value()},
                                     std::move(name).value(), unique_flag),
                          pos);
        if (!made.ok()) return std::move(made).error();
        return std::move(made).value().model;
    }

    // or-level
    Result<FormulaPtr, TextError> formula() {
        auto lhs = formula_and();
        if (!lhs.ok()) return lhs;
        FormulaPtr f = std::move(lhs).value();
        while (match_kw("or")) {
            auto rhs = formula_and();
            if (!rhs.ok()) return rhs;
            f = fml::disj(std::move(f), std::move(rhs).value());
        }
        return f;
    }

    Result<FormulaPtr, TextError> formula_and() {
        auto lhs = formula_unary();
        if (!lhs.ok()) return lhs;
        FormulaPtr f = std::move(lhs).value();
        while (match_kw("and")) {
            auto rhs = formula_unary();
            if (!rhs.ok()) return rhs;
            f = fml::conj(std::move(f), std::move(rhs).value());
        }
        return f;
    }

    Result<FormulaPtr, TextError> formula_unary() {
        if (match_kw("not")) {
            auto inner = formula_unary();
            if (!inner.ok()) return inner;
            return fml::neg(std::move(inner).value());
        }
        return formula_atom();
    }

    Result<FormulaPtr, TextError> formula_atom() {
        if (match_kw("true")) return fml::truth();
        if (match_kw("false")) return fml::falsity();
        if (match_kw("in")) {
            auto obj = ident("an object name");
            if (!obj.ok()) return std::move(obj).error();
            return fml::in_object(std::move(obj).value());
        }
        if (match_punct("(")) {
            auto inner = formula();
            if (!inner.ok()) return inner;
            auto close = expect_punct(")");
            if (!close.ok()) return std::move(close).error();
            return inner;
        }
        auto cname = ident("a formula atom");
        if (!cname.ok()) return std::move(cname).error();
        auto dot = expect_punct(".");
        if (!dot.ok()) return std::move(dot).error();
        auto fname = ident("a function name");
        if (!fname.ok()) return std::move(fname).error();
        bool negated;
        if (match_punct("==")) {
            negated = false;
        } else if (match_punct("!=")) {
            negated = true;
        } else {
            return fail("expected '==' or '!='");
        }
        auto lit = literal();
        if (!lit.ok()) return std::move(lit).error();
        if (negated)
            return fml::attr_neq(std::move(cname).value(), std::move(fname).value(),
                                 std::move(lit).value());
        return fml::attr_eq(std::move(cname).value(), std::move(fname).value(),
                            std::move(lit).value());
    }

    std::vector<Token> tokens_;
    std::size_t i_ = 0;
};

Result<std::vector<Token>, TextError> lex(std::string_view source) {
    auto tokens = lang::tokenize(std::string(source), lang::model_keywords());
    if (!tokens.ok()) {
        const lang::ParseError& e = tokens.error();
        return TextError{e.pos, e.message, false};
    }
    return std::move(tokens).value();
}

}  // namespace

std::string TextError::to_string() const {
    return std::string(semantic ? "model error" : "model parse error") + " at " +
           pos.to_string() + ": " + message;
}

Result<DomainModel, TextError> parse_model(std::string_view source) {
    auto tokens = lex(source);
    if (!tokens.ok()) return std::move(tokens).error();
    return ModelParser(std::move(tokens).value()).parse();
}

Result<FormulaPtr, TextError> parse_formula_text(std::string_view source) {
    auto tokens = lex(source);
    if (!tokens.ok()) return std::move(tokens).error();
    return ModelParser(std::move(tokens).value()).parse_single_formula();
}

}  // namespace amcm::cdm
