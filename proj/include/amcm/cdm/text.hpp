#pragma once

#include <string_view>

#include "amcm/cdm/model.hpp"
#include "amcm/lang/token.hpp"

namespace amcm::cdm {

struct TextError {
    SourcePos pos;
    std::string message;
    // True when the declaration was well-formed but a model operation
    // rejected it (duplicate name, unknown reference, type mismatch ...).
    bool semantic = false;

    std::string to_string() const;
};

// Reads the textual model format and replays it through the model
// operations, in declaration order:
//   domain <name>;
//   concept <name> over <domain> : <Type> fns(<f1>, <f2>);
//   individual <domain>.<id> { <concept>.<fn> = <literal>; ... }
//   state <id> <domain> = { <id>, ... };
//   object [unique] <name> = { x in <base> | <formula> } @ <state>;
Result<DomainModel, TextError> parse_model(std::string_view source);

// Formula concrete syntax: `<c>.<f> == <lit>`, `<c>.<f> != <lit>`, `true`,
// `false`, `in <object>`, with `not` over `and` over `or` and parentheses.
Result<FormulaPtr, TextError> parse_formula_text(std::string_view source);

}  // namespace amcm::cdm
