#include <utility>

#include "amcm/machine/machine.hpp"
#include "amcm/tpl/content.hpp"
#include "internal.hpp"

namespace amcm::machine {

const Value* Memory::lookup(const std::string& ide) const {
    auto it = map_.find(ide);
    return it == map_.end() ? nullptr : &it->second;
}

Memory Memory::bind(const std::string& ide, Value v) const {
    Memory next = *this;
    next.map_.insert_or_assign(ide, std::move(v));
    return next;
}

std::string Memory::show() const {
    std::string out = "{";
    bool first = true;
    for (const auto& [ide, value] : map_) {
        if (!first) out += ", ";
        first = false;
        out += ide;
        out += '=';
        out += value.show();
    }
    out += '}';
    return out;
}

const char* error_kind_name(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::UnboundIdentifier: return "UnboundIdentifier";
        case ErrorKind::TypeIncompatibility: return "TypeIncompatibility";
        case ErrorKind::InputExhausted: return "InputExhausted";
        case ErrorKind::UnknownContent: return "UnknownContent";
        case ErrorKind::NoVariant: return "NoVariant";
    }
    return "MachineError";
}

std::string MachineError::to_string() const {
    std::string out = error_kind_name(kind);
    out += " at " + pos.to_string();
    if (!detail.empty()) out += ": " + detail;
    return out;
}

namespace {

MachineError fail(ErrorKind kind, std::string detail, SourcePos pos, MachineState state) {
    return MachineError{kind, std::move(detail), pos, std::move(state)};
}

}  // namespace

namespace detail {

// Content lookup shared by both evaluators: find the object, then pick
// the variant for the ambient personalization context.
MachResult<Value> lookup_content(const std::string& path, SourcePos pos,
                                 const MachineState& s, const RunEnv& env) {
    const tpl::ContentObject* obj = env.store == nullptr ? nullptr : env.store->find(path);
    if (obj == nullptr)
        return fail(ErrorKind::UnknownContent, "content(\"" + path + "\")", pos, s);
    static const tpl::PersonalizationContext plain;
    auto value = tpl::resolve_variant(*obj, env.ctx == nullptr ? plain : *env.ctx);
    if (!value.ok())
        return fail(ErrorKind::NoVariant, value.error().to_string(), pos, s);
    return std::move(value).value();
}

// Comparison demands equal tags; the result is Bool.
MachResult<Value> compare(const Value& lhs, const Value& rhs, bool negated, SourcePos pos,
                          const MachineState& s) {
    if (lhs.tag() != rhs.tag())
        return fail(ErrorKind::TypeIncompatibility,
                    std::string("cannot compare ") + type_name(lhs.tag()) + " with " +
                        type_name(rhs.tag()),
                    pos, s);
    bool eq = lhs == rhs;
    return Value::boolean(negated ? !eq : eq);
}

MachResult<Memory> assign_ident(const MachineState& s, const std::string& ide, Value v,
                                SourcePos pos, const RunEnv& env) {
    if (env.slots != nullptr) {
        for (const auto& [name, tag] : *env.slots) {
            if (name != ide) continue;
            auto bound = bind_value(s.memory, tag, ide, std::move(v), pos);
            if (!bound.ok()) {
                MachineError err = std::move(bound).error();
                err.state_at_failure = s;
                return err;
            }
            return std::move(bound).value();
        }
    }
    return s.memory.bind(ide, std::move(v));
}

}  // namespace detail

MachResult<EvalOutcome> eval_expr(const lang::ExpPtr& e, MachineState s, const RunEnv& env) {
    using namespace lang;
    struct Eval {
        MachineState s;
        const RunEnv& env;
        SourcePos pos;

        MachResult<EvalOutcome> operator()(const LitE& lit) {
            return EvalOutcome{Value::from_literal(lit.value), std::move(s)};
        }
        MachResult<EvalOutcome> operator()(const IdentE& ident) {
            const Value* bound = s.memory.lookup(ident.name);
            if (bound == nullptr)
                return fail(ErrorKind::UnboundIdentifier, ident.name, pos, std::move(s));
            Value v = *bound;
            return EvalOutcome{std::move(v), std::move(s)};
        }
        MachResult<EvalOutcome> operator()(const ReadE&) {
            if (s.input.empty())
                return fail(ErrorKind::InputExhausted, "read() on empty input", pos,
                            std::move(s));
            Value head = s.input.front();
            s.input.erase(s.input.begin());
            return EvalOutcome{std::move(head), std::move(s)};
        }
        MachResult<EvalOutcome> operator()(const ContentRefE& ref) {
            auto v = detail::lookup_content(ref.path, pos, s, env);
            if (!v.ok()) return std::move(v).error();
            return EvalOutcome{std::move(v).value(), std::move(s)};
        }
        MachResult<EvalOutcome> operator()(const EqE& cmp) { return compare(cmp.lhs, cmp.rhs, false); }
        MachResult<EvalOutcome> operator()(const NeqE& cmp) { return compare(cmp.lhs, cmp.rhs, true); }

        MachResult<EvalOutcome> compare(const ExpPtr& le, const ExpPtr& re, bool negated) {
            auto lhs = eval_expr(le, std::move(s), env);
            if (!lhs.ok()) return std::move(lhs).error();
            EvalOutcome l = std::move(lhs).value();
            auto rhs = eval_expr(re, std::move(l.state), env);
            if (!rhs.ok()) return std::move(rhs).error();
            EvalOutcome r = std::move(rhs).value();
            auto result = detail::compare(l.value, r.value, negated, pos, r.state);
            if (!result.ok()) return std::move(result).error();
            return EvalOutcome{std::move(result).value(), std::move(r.state)};
        }
    };
    if (!e) return fail(ErrorKind::UnboundIdentifier, "empty expression", {}, std::move(s));
    SourcePos pos = e->pos;
    return std::visit(Eval{std::move(s), env, pos}, e->node);
}

MachResult<MachineState> exec_com(const lang::ComPtr& c, MachineState s, const RunEnv& env) {
    using namespace lang;
    if (!c) return s;  // the empty program is the identity
    struct Exec {
        MachineState s;
        const RunEnv& env;
        SourcePos pos;

        MachResult<MachineState> operator()(const AssignC& com) {
            auto r = eval_expr(com.expr, std::move(s), env);
            if (!r.ok()) return std::move(r).error();
            EvalOutcome out = std::move(r).value();
            auto bound = detail::assign_ident(out.state, com.ident, std::move(out.value), pos, env);
            if (!bound.ok()) return std::move(bound).error();
            out.state.memory = std::move(bound).value();
            return std::move(out.state);
        }
        MachResult<MachineState> operator()(const SeqC& com) {
            auto first = exec_com(com.first, std::move(s), env);
            if (!first.ok()) return first;
            return exec_com(com.second, std::move(first).value(), env);
        }
        MachResult<MachineState> operator()(const IfC& com) {
            auto cond = eval_expr(com.cond, std::move(s), env);
            if (!cond.ok()) return std::move(cond).error();
            EvalOutcome out = std::move(cond).value();
            if (out.value.tag() != TypeTag::Bool)
                return fail(ErrorKind::TypeIncompatibility,
                            std::string("if condition is ") + type_name(out.value.tag()) +
                                ", not Bool",
                            pos, std::move(out.state));
            bool taken = std::get<BoolV>(out.value.rep()).b;
            if (taken) return exec_com(com.then_branch, std::move(out.state), env);
            return exec_com(com.else_branch, std::move(out.state), env);
        }
        MachResult<MachineState> operator()(const EmitC& com) {
            auto r = eval_expr(com.expr, std::move(s), env);
            if (!r.ok()) return std::move(r).error();
            EvalOutcome out = std::move(r).value();
            out.state.output.push_back(std::move(out.value));
            return std::move(out.state);
        }
    };
    SourcePos pos = c->pos;
    return std::visit(Exec{std::move(s), env, pos}, c->node);
}

MachResult<Memory> bind_value(const Memory& m, TypeTag slot_type, const std::string& ide,
                              Value v, SourcePos pos) {
    if (v.tag() != slot_type)
        return fail(ErrorKind::TypeIncompatibility,
                    "slot " + ide + " wants " + type_name(slot_type) + ", got " + v.show(),
                    pos, MachineState{Memory{}.bind(ide, v), {}, {}});
    return m.bind(ide, std::move(v));
}

MachResult<MachineState> run(const lang::ComPtr& program, std::vector<Value> input,
                             const RunEnv& env) {
    MachineState initial;
    initial.input = std::move(input);
    return exec_com(program, std::move(initial), env);
}

}  // namespace amcm::machine
