#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "amcm/lang/token.hpp"
#include "amcm/result.hpp"
#include "amcm/tpl/context.hpp"
#include "amcm/value.hpp"

namespace amcm::tpl {

// One atomic condition inside a guard: axis letter, key (empty for p),
// and the value the context must carry.
struct GuardCond {
    char axis = 'p';
    std::string key;
    std::string value;

    friend bool operator==(const GuardCond&, const GuardCond&) = default;
};

struct Guard {
    bool is_default = false;
    std::vector<GuardCond> conds;  // conjunction; empty iff is_default

    bool satisfied_by(const PersonalizationContext& ctx) const;
    // Specificity score: number of conditions, 0 for `default`.
    int score() const { return is_default ? 0 : static_cast<int>(conds.size()); }
    std::string show() const;

    friend bool operator==(const Guard&, const Guard&) = default;
};

struct Variant {
    Guard guard;
    Value payload;
};

// A piece of addressable content: its store path, declared type, and the
// guarded payload variants in declaration order.
struct ContentObject {
    std::string path;
    TypeTag type = TypeTag::Text;
    std::vector<Variant> variants;
};

enum class StoreErrorKind { Parse, DuplicatePath, NoVariant, MissingPath, Io };

struct StoreError {
    StoreErrorKind kind = StoreErrorKind::Parse;
    std::string path;  // store path or file involved
    std::string message;

    std::string to_string() const;
};

template <typename T>
using StoreResult = Result<T, StoreError>;

class ContentStore {
public:
    StoreResult<std::monostate> insert(ContentObject obj);
    const ContentObject* find(const std::string& path) const;

    // Paths in sorted order; the map iterates the same way.
    const std::map<std::string, ContentObject>& objects() const { return objects_; }
    std::size_t size() const { return objects_.size(); }

private:
    std::map<std::string, ContentObject> objects_;
};

// Parses one `.amc` file: a `type: <Tag>` header, then either a bare
// `---` payload (a single default variant) or repeated `variant <guard>:`
// sections each followed by `---` and payload text.
Result<ContentObject, lang::ParseError> parse_content(std::string_view source,
                                                      const std::string& path);

// Walks `root` recursively and loads every `.amc` file; the store path is
// the relative path without extension, with `/` separators.
StoreResult<ContentStore> load_store(const std::filesystem::path& root);

// Picks the payload whose guard is satisfied and most specific; ties go to
// the earliest declared. Fails with NoVariant when nothing matches.
StoreResult<Value> resolve_variant(const ContentObject& obj, const PersonalizationContext& ctx);

}  // namespace amcm::tpl
