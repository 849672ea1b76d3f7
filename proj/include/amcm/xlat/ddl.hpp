#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "amcm/result.hpp"

namespace amcm::xlat {

struct DdlColumn {
    std::string name;
    std::string type;  // TEXT | BIGINT | BOOLEAN
    bool not_null = true;
};

struct DdlForeignKey {
    std::string name;
    std::vector<std::string> columns;
    std::string target_table;
    std::vector<std::string> target_columns;
};

struct DdlTable {
    std::string name;
    std::vector<DdlColumn> columns;
    std::string pk_name;
    std::vector<std::string> primary_key;
    std::vector<std::pair<std::string, std::vector<std::string>>> uniques;
    std::vector<DdlForeignKey> foreign_keys;
};

struct DdlDocument {
    std::vector<DdlTable> tables;

    const DdlTable* find_table(const std::string& name) const;

    // Deterministic emission: one CREATE TABLE per statement, two-space
    // indented lines, statements separated by a blank line.
    std::string to_sql() const;
};

// Reads back exactly the dialect to_sql emits. Used to prove emitted
// documents are well-formed without a database on hand.
Result<DdlDocument, std::string> parse_ddl(std::string_view sql);

// Every foreign key must target a table in the same document, and the
// referenced columns must be that table's primary key. Returns complaints.
std::vector<std::string> check_foreign_keys(const DdlDocument& doc);

}  // namespace amcm::xlat
