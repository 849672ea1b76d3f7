#include "amcm/lang/printer.hpp"

#include <string>
#include <variant>

namespace amcm::lang {

namespace {

std::string print_literal(const Literal& lit) {
    switch (lit.tag()) {
        case TypeTag::Text: return "\"" + escape_string(lit.text_value()) + "\"";
        case TypeTag::Int: return std::to_string(lit.int_value());
        case TypeTag::Bool: return lit.bool_value() ? "true" : "false";
        case TypeTag::Markup: return "markup(\"" + escape_string(lit.markup_value()) + "\")";
        default: return lit.show();  // unreachable: literals are atomic
    }
}

struct ExpPrinter {
    std::string operator()(const LitE& e) const { return print_literal(e.value); }
    std::string operator()(const IdentE& e) const { return e.name; }
    std::string operator()(const ContentRefE& e) const {
        return "content(\"" + escape_string(e.path) + "\")";
    }
    std::string operator()(const ReadE&) const { return "read()"; }
    std::string operator()(const EqE& e) const {
        return print_exp(e.lhs) + " == " + print_exp(e.rhs);
    }
    std::string operator()(const NeqE& e) const {
        return print_exp(e.lhs) + " != " + print_exp(e.rhs);
    }
};

void print_com(const ComPtr& c, int indent, std::string& out);

void emit_line(int indent, const std::string& body, std::string& out) {
    out.append(static_cast<size_t>(indent) * 2, ' ');
    out += body;
    out += '\n';
}

struct ComPrinter {
    int indent;
    std::string& out;

    void operator()(const AssignC& c) const {
        emit_line(indent, c.ident + " = " + print_exp(c.expr) + ";", out);
    }
    void operator()(const SeqC& c) const {
        print_com(c.first, indent, out);
        print_com(c.second, indent, out);
    }
    void operator()(const IfC& c) const {
        out.append(static_cast<size_t>(indent) * 2, ' ');
        out += "if (" + print_exp(c.cond) + ") {\n";
        print_com(c.then_branch, indent + 1, out);
        out.append(static_cast<size_t>(indent) * 2, ' ');
        if (c.else_branch) {
            out += "} else {\n";
            print_com(c.else_branch, indent + 1, out);
            out.append(static_cast<size_t>(indent) * 2, ' ');
        }
        out += "}\n";
    }
    void operator()(const EmitC& c) const {
        emit_line(indent, "emit " + print_exp(c.expr) + ";", out);
    }
};

void print_com(const ComPtr& c, int indent, std::string& out) {
    if (!c) return;
    std::visit(ComPrinter{indent, out}, c->node);
}

}  // namespace

std::string print_exp(const ExpPtr& e) {
    if (!e) return "";
    return std::visit(ExpPrinter{}, e->node);
}

std::string print_program(const ComPtr& c) {
    std::string out;
    print_com(c, 0, out);
    return out;
}

std::string print_binding(const std::string& template_name, const ComPtr& program) {
    std::string out = "bind \"" + escape_string(template_name) + "\" {\n";
    print_com(program, 1, out);
    out += "}\n";
    return out;
}

}  // namespace amcm::lang
