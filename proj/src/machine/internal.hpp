#pragma once

#include "amcm/machine/machine.hpp"

// Helpers shared by the one-shot evaluator and the small-step machine.
namespace amcm::machine::detail {

MachResult<Value> lookup_content(const std::string& path, SourcePos pos,
                                 const MachineState& s, const RunEnv& env);

MachResult<Value> compare(const Value& lhs, const Value& rhs, bool negated, SourcePos pos,
                          const MachineState& s);

// The assignment substitution m[v/I], routed through the typed binder
// when env carries a slot table that names `ide`.
MachResult<Memory> assign_ident(const MachineState& s, const std::string& ide, Value v,
                                SourcePos pos, const RunEnv& env);

}  // namespace amcm::machine::detail
