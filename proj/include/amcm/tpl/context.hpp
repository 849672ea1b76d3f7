#pragma once

#include <map>
#include <string>
#include <string_view>

#include "amcm/lang/token.hpp"
#include "amcm/result.hpp"

namespace amcm::tpl {

// The four personalization axes: registration status (p) plus three
// key-value maps for user preferences (s), client interface (v), and
// access device (e).
struct PersonalizationContext {
    std::string status = "anonymous";
    std::map<std::string, std::string> prefs;   // s.<key>
    std::map<std::string, std::string> client;  // v.<key>
    std::map<std::string, std::string> device;  // e.<key>

    // Axis letter + key -> value, or null when unset. The 'p' axis
    // ignores the key and returns the status.
    const std::string* find(char axis, const std::string& key) const;

    // Stable one-line digest, e.g. `p=registered s.lang=en e.width=800`.
    std::string fingerprint() const;

    friend bool operator==(const PersonalizationContext&, const PersonalizationContext&) = default;
};

// Line format: `p = <status>` or `<axis>.<key> = <value>` with axis one of
// s, v, e. Blank lines and `#` comments are skipped. Values are taken
// verbatim after trimming surrounding whitespace.
Result<PersonalizationContext, lang::ParseError> parse_context(std::string_view source);

}  // namespace amcm::tpl
