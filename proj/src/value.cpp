#include "amcm/value.hpp"

#include <cassert>

namespace amcm {

const char* type_name(TypeTag tag) {
    switch (tag) {
        case TypeTag::Text: return "Text";
        case TypeTag::Int: return "Int";
        case TypeTag::Bool: return "Bool";
        case TypeTag::Markup: return "Markup";
        case TypeTag::List: return "List";
        case TypeTag::Record: return "Record";
    }
    return "?";
}

std::optional<TypeTag> type_from_name(std::string_view name) {
    if (name == "Text") return TypeTag::Text;
    if (name == "Int") return TypeTag::Int;
    if (name == "Bool") return TypeTag::Bool;
    if (name == "Markup") return TypeTag::Markup;
    if (name == "List") return TypeTag::List;
    if (name == "Record") return TypeTag::Record;
    return std::nullopt;
}

std::string escape_string(std::string_view raw) {
    std::string out;
    out.reserve(raw.size());
    for (char c : raw) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            default: out += c; break;
        }
    }
    return out;
}

bool operator==(const ListV& a, const ListV& b) {
    return a.elem == b.elem && a.items == b.items;
}

bool operator==(const RecordV& a, const RecordV& b) {
    return a.fields == b.fields;
}

TypeTag Literal::tag() const {
    switch (rep_.index()) {
        case 0: return TypeTag::Text;
        case 1: return TypeTag::Int;
        case 2: return TypeTag::Bool;
        default: return TypeTag::Markup;
    }
}

std::string Literal::show() const {
    return Value::from_literal(*this).show();
}

Value Value::list(TypeTag elem, std::vector<Value> items) {
    for ([[maybe_unused]] const Value& v : items) {
        assert(v.tag() == elem && "list items must share the element type");
    }
    return Value(ListV{elem, std::move(items)});
}

Value Value::record(std::vector<std::pair<std::string, Value>> fields) {
#ifndef NDEBUG
    for (size_t i = 0; i < fields.size(); ++i)
        for (size_t j = i + 1; j < fields.size(); ++j)
            assert(fields[i].first != fields[j].first && "record field names must be distinct");
#endif
    return Value(RecordV{std::move(fields)});
}

Value Value::from_literal(const Literal& lit) {
    return std::visit([](const auto& alt) { return Value(Rep(alt)); }, lit.rep());
}

TypeTag Value::tag() const {
    switch (rep_.index()) {
        case 0: return TypeTag::Text;
        case 1: return TypeTag::Int;
        case 2: return TypeTag::Bool;
        case 3: return TypeTag::Markup;
        case 4: return TypeTag::List;
        default: return TypeTag::Record;
    }
}

std::optional<Literal> Value::to_literal() const {
    switch (rep_.index()) {
        case 0: return Literal::text(std::get<TextV>(rep_).s);
        case 1: return Literal::integer(std::get<IntV>(rep_).n);
        case 2: return Literal::boolean(std::get<BoolV>(rep_).b);
        case 3: return Literal::markup(std::get<MarkupV>(rep_).s);
        default: return std::nullopt;
    }
}

std::string Value::show() const {
    struct Shower {
        std::string operator()(const TextV& v) const {
            return "Text(\"" + escape_string(v.s) + "\")";
        }
        std::string operator()(const IntV& v) const {
            return "Int(" + std::to_string(v.n) + ")";
        }
        std::string operator()(const BoolV& v) const {
            return v.b ? std::string("Bool(true)") : std::string("Bool(false)");
        }
        std::string operator()(const MarkupV& v) const {
            return "Markup(\"" + escape_string(v.s) + "\")";
        }
        std::string operator()(const ListV& v) const {
            std::string out = "List[";
            for (size_t i = 0; i < v.items.size(); ++i) {
                if (i) out += ", ";
                out += v.items[i].show();
            }
            return out + "]";
        }
        std::string operator()(const RecordV& v) const {
            std::string out = "Record{";
            for (size_t i = 0; i < v.fields.size(); ++i) {
                if (i) out += ", ";
                out += v.fields[i].first + ": " + v.fields[i].second.show();
            }
            return out + "}";
        }
    };
    return std::visit(Shower{}, rep_);
}

std::string Value::render_text() const {
    struct Renderer {
        std::string operator()(const TextV& v) const { return v.s; }
        std::string operator()(const IntV& v) const { return std::to_string(v.n); }
        std::string operator()(const BoolV& v) const { return v.b ? "true" : "false"; }
        std::string operator()(const MarkupV& v) const { return v.s; }
        std::string operator()(const ListV& v) const {
            std::string out;
            for (const Value& item : v.items) out += item.render_text();
            return out;
        }
        std::string operator()(const RecordV& v) const {
            std::string out;
            for (size_t i = 0; i < v.fields.size(); ++i) {
                if (i) out += '\n';
                out += v.fields[i].first + ": " + v.fields[i].second.render_text();
            }
            return out;
        }
    };
    return std::visit(Renderer{}, rep_);
}

}  // namespace amcm
