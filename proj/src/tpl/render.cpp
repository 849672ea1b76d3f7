#include "amcm/tpl/render.hpp"

#include <cctype>
#include <utility>

namespace amcm::tpl {

namespace {

bool is_identifier(std::string_view name) {
    if (name.empty()) return false;
    if (!std::isalpha(static_cast<unsigned char>(name[0])) && name[0] != '_') return false;
    for (char c : name)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
    return true;
}

}  // namespace

machine::MachResult<machine::Memory> bind_template(const Template& t,
                                                   const lang::ComPtr& program,
                                                   const ContentStore& store,
                                                   const PersonalizationContext& ctx,
                                                   const machine::TraceFn& trace) {
    // The slot table rides along in the environment, so every assignment
    // to a slot name is type-checked the moment it executes; other
    // identifiers are untyped scratch space.
    machine::RunEnv env{&store, &ctx, &t.slots};
    auto finished = machine::run_stepwise(program, {}, env, trace);
    if (!finished.ok()) return std::move(finished).error();
    return std::move(finished).value().memory;
}

machine::MachResult<Page> render(const Template& t, const lang::ComPtr& program,
                                 const ContentStore& store, const PersonalizationContext& ctx,
                                 const machine::TraceFn& trace) {
    auto memory = bind_template(t, program, store, ctx, trace);
    if (!memory.ok()) return std::move(memory).error();
    const machine::Memory& m = memory.value();

    const std::string& skel = t.skeleton;
    std::string text;
    text.reserve(skel.size());
    std::size_t i = 0;
    while (i < skel.size()) {
        std::size_t open = skel.find("{{", i);
        if (open == std::string::npos) {
            text.append(skel, i, std::string::npos);
            break;
        }
        std::size_t close = skel.find("}}", open + 2);
        std::string name =
            close == std::string::npos ? "" : skel.substr(open + 2, close - open - 2);
        if (!is_identifier(name) || t.slot_type(name) == nullptr) {
            // Not a hole: copy the braces through and continue after them.
            text.append(skel, i, open + 2 - i);
            i = open + 2;
            continue;
        }
        const Value* value = m.lookup(name);
        if (value == nullptr)
            return machine::MachineError{machine::ErrorKind::UnboundIdentifier,
                                         "slot " + name + " was never assigned",
                                         SourcePos{},
                                         machine::MachineState{m, {}, {}}};
        text.append(skel, i, open - i);
        text += value->render_text();
        i = close + 2;
    }
    return Page{std::move(text), t.name, ctx.fingerprint()};
}

}  // namespace amcm::tpl
