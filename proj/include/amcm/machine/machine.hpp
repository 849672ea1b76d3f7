#pragma once

#include <deque>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "amcm/lang/ast.hpp"
#include "amcm/result.hpp"
#include "amcm/value.hpp"

namespace amcm::tpl {
class ContentStore;
struct PersonalizationContext;
}  // namespace amcm::tpl

namespace amcm::machine {

// Identifier -> value map. Lookup of an absent name reads as "unbound";
// the map behaves as total with that default.
class Memory {
public:
    const Value* lookup(const std::string& ide) const;
    bool bound(const std::string& ide) const { return lookup(ide) != nullptr; }

    // Substitution: returns a copy with `ide` rebound to `v` and every
    // other binding untouched.
    Memory bind(const std::string& ide, Value v) const;

    const std::map<std::string, Value>& bindings() const { return map_; }
    std::size_t size() const { return map_.size(); }

    // Rendering for traces and the eval command: {a=Int(1), b=Text("x")},
    // keys in sorted order.
    std::string show() const;

    friend bool operator==(const Memory&, const Memory&) = default;

private:
    std::map<std::string, Value> map_;
};

struct MachineState {
    Memory memory;
    std::vector<Value> input;   // consumed from the front
    std::vector<Value> output;  // appended at the back

    friend bool operator==(const MachineState&, const MachineState&) = default;
};

enum class ErrorKind { UnboundIdentifier, TypeIncompatibility, InputExhausted, UnknownContent, NoVariant };

const char* error_kind_name(ErrorKind kind);

struct MachineError {
    ErrorKind kind = ErrorKind::UnboundIdentifier;
    std::string detail;  // identifier, content path, or a short explanation
    SourcePos pos;
    MachineState state_at_failure;

    std::string to_string() const;
};

template <typename T>
using MachResult = Result<T, MachineError>;

// Everything an evaluation can consult besides the machine state. All
// pointers may be null: content lookups then fail with UnknownContent,
// and assignments are untyped.
struct RunEnv {
    const tpl::ContentStore* store = nullptr;
    const tpl::PersonalizationContext* ctx = nullptr;
    // Typed slots: an assignment to a name listed here must carry the
    // declared tag or the machine stops with TypeIncompatibility.
    const std::vector<std::pair<std::string, TypeTag>>* slots = nullptr;
};

// ---------------------------------------------------------------------------
// One-shot (big-step) evaluator
// ---------------------------------------------------------------------------

struct EvalOutcome {
    Value value;
    MachineState state;
};

MachResult<EvalOutcome> eval_expr(const lang::ExpPtr& e, MachineState s, const RunEnv& env);
MachResult<MachineState> exec_com(const lang::ComPtr& c, MachineState s, const RunEnv& env);

// Type-checked binding used when a program feeds a template slot.
MachResult<Memory> bind_value(const Memory& m, TypeTag slot_type, const std::string& ide,
                              Value v, SourcePos pos = {});

// Runs `program` from an empty memory/output with the given input. A null
// program is the empty program and halts immediately.
MachResult<MachineState> run(const lang::ComPtr& program, std::vector<Value> input,
                             const RunEnv& env);

// ---------------------------------------------------------------------------
// Small-step machine
// ---------------------------------------------------------------------------

// Work items on the control stack: either syntax still to evaluate, or a
// leftover frame that consumes values from the value stack.
struct ApplyAssign {
    std::string ident;
    SourcePos pos;
};
struct ApplyEmit {
    SourcePos pos;
};
struct ApplyBranch {
    lang::ComPtr then_branch;
    lang::ComPtr else_branch;  // may be null
    SourcePos pos;
};
// Waits for the right operand; the left value sits below it on the stack.
struct ApplyCmp {
    bool negated = false;
    SourcePos pos;
};

using Frame = std::variant<lang::ComPtr, lang::ExpPtr, ApplyAssign, ApplyEmit, ApplyBranch, ApplyCmp>;

struct MachineConfig {
    std::vector<Frame> control;  // top of stack at the back
    std::vector<Value> values;   // operand stack for expression results
    MachineState state;

    bool halted() const { return control.empty(); }
};

MachineConfig initial_config(const lang::ComPtr& program, std::vector<Value> input);

struct Halted {
    MachineState state;
};

struct StepOutcome {
    std::variant<MachineConfig, Halted, MachineError> next;
    std::string rule;  // stable transition name, e.g. "assign", "cmp-eq"
};

// Performs exactly one transition. Stepping a halted config reports the
// "halt" rule and yields Halted.
StepOutcome step(MachineConfig cfg, const RunEnv& env);

// Observer invoked after each step with the 1-based step number, the rule
// name, and the machine state reached.
using TraceFn = std::function<void(std::size_t, const std::string&, const MachineState&)>;

// Iterates step() to completion.
MachResult<MachineState> run_stepwise(const lang::ComPtr& program, std::vector<Value> input,
                                      const RunEnv& env, const TraceFn& trace = nullptr);

// One trace line: `<n> | <rule> | mem={…} in=<len> out=<len>`.
std::string trace_line(std::size_t n, const std::string& rule, const MachineState& state);

}  // namespace amcm::machine
