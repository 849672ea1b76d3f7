#include "amcm/tpl/template.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <utility>

namespace amcm::tpl {

namespace {

lang::ParseError err_at(lang::ParseErrorKind kind, SourcePos pos, std::string message) {
    lang::ParseError e;
    e.kind = kind;
    e.pos = pos;
    e.message = std::move(message);
    return e;
}

}  // namespace

const TypeTag* Template::slot_type(const std::string& slot) const {
    for (const auto& [name, tag] : slots)
        if (name == slot) return &tag;
    return nullptr;
}

std::vector<std::string> skeleton_holes(std::string_view skeleton) {
    std::vector<std::string> holes;
    std::size_t i = 0;
    while ((i = skeleton.find("{{", i)) != std::string_view::npos) {
        std::size_t close = skeleton.find("}}", i + 2);
        if (close == std::string_view::npos) break;
        std::string name(skeleton.substr(i + 2, close - i - 2));
        bool ident = !name.empty() && (std::isalpha(static_cast<unsigned char>(name[0])) ||
                                       name[0] == '_');
        for (char c : name)
            ident = ident && (std::isalnum(static_cast<unsigned char>(c)) || c == '_');
        if (ident && std::find(holes.begin(), holes.end(), name) == holes.end())
            holes.push_back(name);
        i = ident ? close + 2 : i + 2;
    }
    return holes;
}

Result<Template, lang::ParseError> parse_template(std::string_view source) {
    auto lexed = lang::tokenize(std::string(source), lang::program_keywords());
    if (!lexed.ok()) return std::move(lexed).error();
    std::vector<lang::Token> tokens = std::move(lexed).value();
    std::size_t i = 0;

    auto have = [&](std::size_t k = 0) { return i + k < tokens.size(); };
    auto fail_here = [&](std::string message) {
        SourcePos pos = have() ? tokens[i].pos : SourcePos{};
        return err_at(lang::ParseErrorKind::Syntax, pos, std::move(message));
    };

    if (!have() || !tokens[i].is_keyword("template"))
        return fail_here("expected 'template'");
    ++i;
    if (!have() || tokens[i].kind != lang::TokenKind::Literal ||
        tokens[i].literal->tag() != TypeTag::Text)
        return fail_here("expected a quoted template name");
    Template tpl;
    tpl.name = tokens[i].literal->text_value();
    ++i;
    if (!have() || !tokens[i].is_punct("{")) return fail_here("expected '{'");
    ++i;

    std::set<std::string> slot_names;
    bool saw_skeleton = false;
    while (have() && !tokens[i].is_punct("}")) {
        if (tokens[i].kind == lang::TokenKind::Identifier && tokens[i].text == "slot") {
            if (saw_skeleton) return fail_here("slots must precede the skeleton");
            ++i;
            if (!have() || tokens[i].kind != lang::TokenKind::Identifier)
                return fail_here("expected a slot name");
            std::string slot = tokens[i].text;
            SourcePos slot_pos = tokens[i].pos;
            ++i;
            if (!have() || !tokens[i].is_punct(":")) return fail_here("expected ':'");
            ++i;
            if (!have() || tokens[i].kind != lang::TokenKind::Identifier)
                return fail_here("expected a type name");
            auto tag = type_from_name(tokens[i].text);
            if (!tag.has_value())
                return fail_here("unknown type '" + tokens[i].text + "'");
            ++i;
            if (!have() || !tokens[i].is_punct(";")) return fail_here("expected ';'");
            ++i;
            if (!slot_names.insert(slot).second)
                return err_at(lang::ParseErrorKind::Syntax, slot_pos,
                              "slot '" + slot + "' declared twice");
            tpl.slots.emplace_back(std::move(slot), *tag);
        } else if (tokens[i].kind == lang::TokenKind::Identifier &&
                   tokens[i].text == "skeleton") {
            if (saw_skeleton) return fail_here("second skeleton");
            ++i;
            if (!have() || tokens[i].kind != lang::TokenKind::Literal ||
                tokens[i].literal->tag() != TypeTag::Markup)
                return fail_here("expected '<<< ... >>>' after 'skeleton'");
            tpl.skeleton = tokens[i].literal->markup_value();
            saw_skeleton = true;
            ++i;
        } else {
            return fail_here("expected 'slot' or 'skeleton'");
        }
    }
    if (!have() || !tokens[i].is_punct("}")) return fail_here("expected '}'");
    ++i;
    if (have()) return fail_here("trailing input after the template");
    if (!saw_skeleton) return fail_here("template has no skeleton");

    for (const std::string& hole : skeleton_holes(tpl.skeleton)) {
        if (slot_names.count(hole) == 0)
            return err_at(lang::ParseErrorKind::UndeclaredHole, SourcePos{},
                          "skeleton hole '{{" + hole + "}}' has no slot declaration");
    }
    return tpl;
}

}  // namespace amcm::tpl
