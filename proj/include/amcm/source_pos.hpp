#pragma once

#include <string>

namespace amcm {

// 1-based line/column position inside a source text.
struct SourcePos {
    int line = 1;
    int column = 1;

    void advance(char c) {
        if (c == '\n') {
            ++line;
            column = 1;
        } else {
            ++column;
        }
    }

    std::string to_string() const {
        return std::to_string(line) + ":" + std::to_string(column);
    }

    friend bool operator==(const SourcePos&, const SourcePos&) = default;
};

}  // namespace amcm
