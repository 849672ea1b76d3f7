#pragma once

#include <string>

#include "amcm/lang/ast.hpp"

namespace amcm::lang {

// Source form of one expression, e.g. `x == content("greet")`.
std::string print_exp(const ExpPtr& e);

// Canonical source form of a program: one command per line, two-space
// indentation inside if/else blocks, trailing newline. Parsing the output
// reproduces the tree (up to source positions). A null program prints as "".
std::string print_program(const ComPtr& c);

// The program wrapped as a binding file: `bind "<name>" { ... }`.
std::string print_binding(const std::string& template_name, const ComPtr& program);

}  // namespace amcm::lang
