#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace amcm {

// ---------------------------------------------------------------------------
// Content type tags and the value domain
// ---------------------------------------------------------------------------

enum class TypeTag { Text, Int, Bool, Markup, List, Record };

const char* type_name(TypeTag tag);
std::optional<TypeTag> type_from_name(std::string_view name);

struct TextV {
    std::string s;
    friend bool operator==(const TextV&, const TextV&) = default;
};
struct IntV {
    std::int64_t n = 0;
    friend bool operator==(const IntV&, const IntV&) = default;
};
struct BoolV {
    bool b = false;
    friend bool operator==(const BoolV&, const BoolV&) = default;
};
struct MarkupV {
    std::string s;  // stored verbatim
    friend bool operator==(const MarkupV&, const MarkupV&) = default;
};

// Atomic constants: the subset of the value domain that literals range over.
class Literal {
public:
    using Rep = std::variant<TextV, IntV, BoolV, MarkupV>;

    static Literal text(std::string s) { return Literal(TextV{std::move(s)}); }
    static Literal integer(std::int64_t n) { return Literal(IntV{n}); }
    static Literal boolean(bool b) { return Literal(BoolV{b}); }
    static Literal markup(std::string s) { return Literal(MarkupV{std::move(s)}); }

    TypeTag tag() const;
    const Rep& rep() const { return rep_; }

    // Payload accessors; each is valid only when tag() matches.
    const std::string& text_value() const { return std::get<TextV>(rep_).s; }
    std::int64_t int_value() const { return std::get<IntV>(rep_).n; }
    bool bool_value() const { return std::get<BoolV>(rep_).b; }
    const std::string& markup_value() const { return std::get<MarkupV>(rep_).s; }

    std::string show() const;

    friend bool operator==(const Literal&, const Literal&) = default;

private:
    explicit Literal(Rep rep) : rep_(std::move(rep)) {}
    Rep rep_;
};

class Value;

struct ListV {
    TypeTag elem = TypeTag::Text;
    std::vector<Value> items;  // all items carry `elem`
    friend bool operator==(const ListV&, const ListV&);
};

struct RecordV {
    std::vector<std::pair<std::string, Value>> fields;  // names distinct, order kept
    friend bool operator==(const RecordV&, const RecordV&);
};

// Disjoint sum of the content types. Every value carries exactly one tag.
class Value {
public:
    using Rep = std::variant<TextV, IntV, BoolV, MarkupV, ListV, RecordV>;

    static Value text(std::string s) { return Value(TextV{std::move(s)}); }
    static Value integer(std::int64_t n) { return Value(IntV{n}); }
    static Value boolean(bool b) { return Value(BoolV{b}); }
    static Value markup(std::string s) { return Value(MarkupV{std::move(s)}); }
    static Value list(TypeTag elem, std::vector<Value> items);
    static Value record(std::vector<std::pair<std::string, Value>> fields);
    static Value from_literal(const Literal& lit);

    TypeTag tag() const;
    const Rep& rep() const { return rep_; }

    std::optional<Literal> to_literal() const;

    // Canonical diagnostic form, e.g. Text("hi"), List[Int(1), Int(2)].
    std::string show() const;

    // Textual form used when substituting into a page: Text/Markup verbatim,
    // Int in decimal, Bool as true/false, List as concatenated elements,
    // Record as `key: value` lines.
    std::string render_text() const;

    friend bool operator==(const Value&, const Value&) = default;

private:
    explicit Value(Rep rep) : rep_(std::move(rep)) {}
    Rep rep_;
};

// Source form of a string literal body: ", \, newline and tab escaped.
std::string escape_string(std::string_view raw);

}  // namespace amcm
