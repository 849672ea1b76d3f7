#pragma once

#include <string>
#include <string_view>

#include "amcm/lang/ast.hpp"
#include "amcm/lang/token.hpp"
#include "amcm/result.hpp"

namespace amcm::lang {

template <typename T>
using ParseResult = Result<T, ParseError>;

// Parses a whole program: one or more commands. `c1 c2 c3` becomes
// Seq(c1, Seq(c2, c3)). Trailing garbage is a syntax error.
ParseResult<ComPtr> parse_program(std::string_view source);

// A binding file wraps a program and names the template it feeds:
//   bind "home" { x = 1; emit x; }
struct BindingAst {
    std::string template_name;
    ComPtr program;
};

ParseResult<BindingAst> parse_binding(std::string_view source);

// Accepts either a bare program or a bind-wrapped one; the template
// name is empty in the bare case.
ParseResult<BindingAst> parse_program_or_binding(std::string_view source);

}  // namespace amcm::lang
