#include <cassert>
#include <utility>

#include "amcm/machine/machine.hpp"
#include "internal.hpp"

namespace amcm::machine {

namespace {

struct Transition {
    std::variant<MachineConfig, Halted, MachineError> next;
    const char* rule;
};

Transition done(MachineConfig cfg, const char* rule) {
    if (cfg.halted()) return {Halted{std::move(cfg.state)}, rule};
    return {std::move(cfg), rule};
}

Transition abort(MachineError err, const char* rule) { return {std::move(err), rule}; }

// Unfolds one command node into control frames.
Transition step_com(MachineConfig cfg, const lang::ComPtr& c) {
    using namespace lang;
    if (!c) return done(std::move(cfg), "skip");
    struct Visit {
        MachineConfig cfg;
        SourcePos pos;

        Transition operator()(const SeqC& com) && {
            cfg.control.push_back(com.second);
            cfg.control.push_back(com.first);
            return done(std::move(cfg), "seq");
        }
        Transition operator()(const AssignC& com) && {
            cfg.control.push_back(ApplyAssign{com.ident, pos});
            cfg.control.push_back(com.expr);
            return done(std::move(cfg), "assign");
        }
        Transition operator()(const IfC& com) && {
            cfg.control.push_back(ApplyBranch{com.then_branch, com.else_branch, pos});
            cfg.control.push_back(com.cond);
            return done(std::move(cfg), "if");
        }
        Transition operator()(const EmitC& com) && {
            cfg.control.push_back(ApplyEmit{pos});
            cfg.control.push_back(com.expr);
            return done(std::move(cfg), "emit");
        }
    };
    return std::visit(Visit{std::move(cfg), c->pos}, c->node);
}

// Unfolds or finishes one expression node.
Transition step_exp(MachineConfig cfg, const lang::ExpPtr& e, const RunEnv& env) {
    using namespace lang;
    assert(e != nullptr);
    struct Visit {
        MachineConfig cfg;
        SourcePos pos;
        const RunEnv& env;

        Transition operator()(const LitE& lit) && {
            cfg.values.push_back(Value::from_literal(lit.value));
            return done(std::move(cfg), "lit");
        }
        Transition operator()(const IdentE& ident) && {
            const Value* bound = cfg.state.memory.lookup(ident.name);
            if (bound == nullptr)
                return abort(MachineError{ErrorKind::UnboundIdentifier, ident.name, pos,
                                          std::move(cfg.state)},
                             "ident");
            cfg.values.push_back(*bound);
            return done(std::move(cfg), "ident");
        }
        Transition operator()(const ReadE&) && {
            if (cfg.state.input.empty())
                return abort(MachineError{ErrorKind::InputExhausted, "read() on empty input",
                                          pos, std::move(cfg.state)},
                             "read");
            cfg.values.push_back(cfg.state.input.front());
            cfg.state.input.erase(cfg.state.input.begin());
            return done(std::move(cfg), "read");
        }
        Transition operator()(const ContentRefE& ref) && {
            auto v = detail::lookup_content(ref.path, pos, cfg.state, env);
            if (!v.ok()) return abort(std::move(v).error(), "content");
            cfg.values.push_back(std::move(v).value());
            return done(std::move(cfg), "content");
        }
        Transition operator()(const EqE& cmp) && {
            return std::move(*this).comparison(cmp.lhs, cmp.rhs, false);
        }
        Transition operator()(const NeqE& cmp) && {
            return std::move(*this).comparison(cmp.lhs, cmp.rhs, true);
        }

        Transition comparison(const ExpPtr& l, const ExpPtr& r, bool negated) && {
            cfg.control.push_back(ApplyCmp{negated, pos});
            cfg.control.push_back(r);
            cfg.control.push_back(l);
            return done(std::move(cfg), "cmp");
        }
    };
    return std::visit(Visit{std::move(cfg), e->pos, env}, e->node);
}

Value pop_value(MachineConfig& cfg) {
    assert(!cfg.values.empty());
    Value v = std::move(cfg.values.back());
    cfg.values.pop_back();
    return v;
}

}  // namespace

MachineConfig initial_config(const lang::ComPtr& program, std::vector<Value> input) {
    MachineConfig cfg;
    if (program) cfg.control.push_back(program);
    cfg.state.input = std::move(input);
    return cfg;
}

StepOutcome step(MachineConfig cfg, const RunEnv& env) {
    if (cfg.halted()) return {Halted{std::move(cfg.state)}, "halt"};

    Frame frame = std::move(cfg.control.back());
    cfg.control.pop_back();

    struct Visit {
        MachineConfig cfg;
        const RunEnv& env;

        Transition operator()(const lang::ComPtr& c) && { return step_com(std::move(cfg), c); }
        Transition operator()(const lang::ExpPtr& e) && {
            return step_exp(std::move(cfg), e, env);
        }
        Transition operator()(const ApplyAssign& apply) && {
            Value v = pop_value(cfg);
            auto bound = detail::assign_ident(cfg.state, apply.ident, std::move(v), apply.pos, env);
            if (!bound.ok()) return abort(std::move(bound).error(), "bind");
            cfg.state.memory = std::move(bound).value();
            return done(std::move(cfg), "bind");
        }
        Transition operator()(const ApplyEmit&) && {
            cfg.state.output.push_back(pop_value(cfg));
            return done(std::move(cfg), "out");
        }
        Transition operator()(const ApplyBranch& apply) && {
            Value cond = pop_value(cfg);
            if (cond.tag() != TypeTag::Bool)
                return abort(MachineError{ErrorKind::TypeIncompatibility,
                                          std::string("if condition is ") +
                                              type_name(cond.tag()) + ", not Bool",
                                          apply.pos, std::move(cfg.state)},
                             "branch");
            bool taken = std::get<BoolV>(cond.rep()).b;
            if (taken) {
                cfg.control.push_back(apply.then_branch);
                return done(std::move(cfg), "branch-then");
            }
            if (apply.else_branch) {
                cfg.control.push_back(apply.else_branch);
                return done(std::move(cfg), "branch-else");
            }
            return done(std::move(cfg), "branch-skip");
        }
        Transition operator()(const ApplyCmp& apply) && {
            Value rhs = pop_value(cfg);
            Value lhs = pop_value(cfg);
            auto r = detail::compare(lhs, rhs, apply.negated, apply.pos, cfg.state);
            if (!r.ok()) return abort(std::move(r).error(), "cmp");
            cfg.values.push_back(std::move(r).value());
            return done(std::move(cfg), apply.negated ? "cmp-neq" : "cmp-eq");
        }
    };
    Transition t = std::visit(Visit{std::move(cfg), env}, std::move(frame));
    return {std::move(t.next), t.rule};
}

std::string trace_line(std::size_t n, const std::string& rule, const MachineState& state) {
    return std::to_string(n) + " | " + rule + " | mem=" + state.memory.show() +
           " in=" + std::to_string(state.input.size()) +
           " out=" + std::to_string(state.output.size());
}

MachResult<MachineState> run_stepwise(const lang::ComPtr& program, std::vector<Value> input,
                                      const RunEnv& env, const TraceFn& trace) {
    MachineConfig cfg = initial_config(program, std::move(input));
    for (std::size_t n = 1;; ++n) {
        StepOutcome out = step(std::move(cfg), env);
        if (auto* halted = std::get_if<Halted>(&out.next)) {
            if (trace) trace(n, out.rule, halted->state);
            return std::move(halted->state);
        }
        if (auto* err = std::get_if<MachineError>(&out.next)) return std::move(*err);
        cfg = std::move(std::get<MachineConfig>(out.next));
        if (trace) trace(n, out.rule, cfg.state);
    }
}

}  // namespace amcm::machine
