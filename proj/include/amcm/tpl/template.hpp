#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "amcm/lang/token.hpp"
#include "amcm/result.hpp"
#include "amcm/value.hpp"

namespace amcm::tpl {

// A page skeleton with typed slots. Holes `{{name}}` in the skeleton are
// filled from memory bindings of the same name at render time.
struct Template {
    std::string name;
    std::vector<std::pair<std::string, TypeTag>> slots;  // declaration order, names distinct
    std::string skeleton;

    const TypeTag* slot_type(const std::string& slot) const;
};

// Hole names in order of first appearance, duplicates dropped.
std::vector<std::string> skeleton_holes(std::string_view skeleton);

// Template file grammar:
//   template "<name>" {
//     slot <ident> : <Type>;
//     ...
//     skeleton <<< ... >>>
//   }
// Duplicate slot names and holes without a slot declaration are rejected.
Result<Template, lang::ParseError> parse_template(std::string_view source);

}  // namespace amcm::tpl
