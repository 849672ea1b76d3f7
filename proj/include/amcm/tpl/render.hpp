#pragma once

#include <string>
#include <variant>
#include <vector>

#include "amcm/lang/ast.hpp"
#include "amcm/machine/machine.hpp"
#include "amcm/tpl/content.hpp"
#include "amcm/tpl/template.hpp"

namespace amcm::tpl {

// Runs the binding program against the store and context and type-checks
// every slot assignment against the template's slot table. Non-slot
// identifiers are scratch space: they may hold any type and are ignored
// by rendering. Returns the final memory.
machine::MachResult<machine::Memory> bind_template(const Template& t,
                                                   const lang::ComPtr& program,
                                                   const ContentStore& store,
                                                   const PersonalizationContext& ctx,
                                                   const machine::TraceFn& trace = nullptr);

struct Page {
    std::string text;
    std::string template_name;
    std::string context_fingerprint;
};

// Fills every skeleton hole from the bound memory. A hole whose slot never
// got a value is an UnboundIdentifier error.
machine::MachResult<Page> render(const Template& t, const lang::ComPtr& program,
                                 const ContentStore& store, const PersonalizationContext& ctx,
                                 const machine::TraceFn& trace = nullptr);

}  // namespace amcm::tpl
