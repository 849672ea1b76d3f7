#include "amcm/xlat/ddl.hpp"

#include <cstddef>

namespace amcm::xlat {

namespace {

std::string join(const std::vector<std::string>& parts) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out += ", ";
        out += parts[i];
    }
    return out;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r'))
        s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

// "a, b" -> {"a","b"}
std::vector<std::string> split_names(std::string_view list) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= list.size()) {
        std::size_t comma = list.find(',', start);
        std::string_view piece = trim(list.substr(
            start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
        if (!piece.empty()) out.emplace_back(piece);
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

bool consume_prefix(std::string_view& s, std::string_view prefix) {
    if (s.substr(0, prefix.size()) != prefix) return false;
    s.remove_prefix(prefix.size());
    return true;
}

}  // namespace

const DdlTable* DdlDocument::find_table(const std::string& name) const {
    for (const DdlTable& t : tables)
        if (t.name == name) return &t;
    return nullptr;
}

std::string DdlDocument::to_sql() const {
    std::string out;
    for (std::size_t ti = 0; ti < tables.size(); ++ti) {
        const DdlTable& t = tables[ti];
        if (ti) out += '\n';
        out += "CREATE TABLE " + t.name + " (\n";
        std::vector<std::string> lines;
        for (const DdlColumn& c : t.columns)
            lines.push_back(c.name + " " + c.type + (c.not_null ? " NOT NULL" : ""));
        if (!t.primary_key.empty())
            lines.push_back("CONSTRAINT " + t.pk_name + " PRIMARY KEY (" +
                            join(t.primary_key) + ")");
        for (const auto& [name, cols] : t.uniques)
            lines.push_back("CONSTRAINT " + name + " UNIQUE (" + join(cols) + ")");
        for (const DdlForeignKey& fk : t.foreign_keys)
            lines.push_back("CONSTRAINT " + fk.name + " FOREIGN KEY (" + join(fk.columns) +
                            ") REFERENCES " + fk.target_table + " (" +
                            join(fk.target_columns) + ")");
        for (std::size_t li = 0; li < lines.size(); ++li) {
            out += "  " + lines[li];
            if (li + 1 < lines.size()) out += ',';
            out += '\n';
        }
        out += ");\n";
    }
    return out;
}

Result<DdlDocument, std::string> parse_ddl(std::string_view sql) {
    DdlDocument doc;
    DdlTable* open_table = nullptr;
    int line_no = 0;
    std::size_t start = 0;
    while (start <= sql.size()) {
        ++line_no;
        std::size_t nl = sql.find('\n', start);
        std::string_view line = trim(sql.substr(
            start, nl == std::string_view::npos ? std::string_view::npos : nl - start));
        start = nl == std::string_view::npos ? sql.size() + 1 : nl + 1;
        auto fail = [&](const std::string& what) {
            return "ddl line " + std::to_string(line_no) + ": " + what;
        };

        if (line.empty()) {
            if (nl == std::string_view::npos) break;
            continue;
        }

        if (open_table == nullptr) {
            std::string_view rest = line;
            if (!consume_prefix(rest, "CREATE TABLE "))
                return fail("expected CREATE TABLE");
            std::size_t paren = rest.find(" (");
            if (paren == std::string_view::npos || trim(rest.substr(paren + 2)) != "")
                return fail("expected '<name> (' to end the line");
            DdlTable t;
            t.name = std::string(trim(rest.substr(0, paren)));
            if (t.name.empty()) return fail("empty table name");
            doc.tables.push_back(std::move(t));
            open_table = &doc.tables.back();
            continue;
        }

        if (line == ");") {
            open_table = nullptr;
            continue;
        }

        std::string_view body = line;
        if (body.back() == ',') body.remove_suffix(1);

        if (consume_prefix(body, "CONSTRAINT ")) {
            std::size_t sp = body.find(' ');
            if (sp == std::string_view::npos) return fail("constraint without a body");
            std::string cname(body.substr(0, sp));
            std::string_view rest = body.substr(sp + 1);
            if (consume_prefix(rest, "PRIMARY KEY (")) {
                if (rest.empty() || rest.back() != ')') return fail("unclosed PRIMARY KEY");
                rest.remove_suffix(1);
                if (!open_table->primary_key.empty()) return fail("second PRIMARY KEY");
                open_table->pk_name = std::move(cname);
                open_table->primary_key = split_names(rest);
            } else if (consume_prefix(rest, "UNIQUE (")) {
                if (rest.empty() || rest.back() != ')') return fail("unclosed UNIQUE");
                rest.remove_suffix(1);
                open_table->uniques.emplace_back(std::move(cname), split_names(rest));
            } else if (consume_prefix(rest, "FOREIGN KEY (")) {
                std::size_t close = rest.find(") REFERENCES ");
                if (close == std::string_view::npos) return fail("malformed FOREIGN KEY");
                DdlForeignKey fk;
                fk.name = std::move(cname);
                fk.columns = split_names(rest.substr(0, close));
                std::string_view target = rest.substr(close + 13);
                std::size_t tparen = target.find(" (");
                if (tparen == std::string_view::npos || target.back() != ')')
                    return fail("malformed REFERENCES");
                fk.target_table = std::string(trim(target.substr(0, tparen)));
                fk.target_columns =
                    split_names(target.substr(tparen + 2, target.size() - tparen - 3));
                open_table->foreign_keys.push_back(std::move(fk));
            } else {
                return fail("unknown constraint kind");
            }
            continue;
        }

        // Plain column: `<name> <TYPE> [NOT NULL]`.
        std::size_t sp = body.find(' ');
        if (sp == std::string_view::npos) return fail("column without a type");
        DdlColumn col;
        col.name = std::string(body.substr(0, sp));
        std::string_view rest = trim(body.substr(sp + 1));
        col.not_null = false;
        if (rest.size() > 9 && rest.substr(rest.size() - 9) == " NOT NULL") {
            col.not_null = true;
            rest = trim(rest.substr(0, rest.size() - 9));
        }
        if (rest != "TEXT" && rest != "BIGINT" && rest != "BOOLEAN")
            return fail("unknown column type '" + std::string(rest) + "'");
        col.type = std::string(rest);
        open_table->columns.push_back(std::move(col));
    }
    if (open_table != nullptr) return std::string("ddl: unterminated CREATE TABLE");
    return doc;
}

std::vector<std::string> check_foreign_keys(const DdlDocument& doc) {
    std::vector<std::string> complaints;
    for (const DdlTable& t : doc.tables) {
        for (const DdlForeignKey& fk : t.foreign_keys) {
            const DdlTable* target = doc.find_table(fk.target_table);
            if (target == nullptr) {
                complaints.push_back(t.name + "." + fk.name + " references missing table " +
                                     fk.target_table);
                continue;
            }
            if (target->primary_key != fk.target_columns)
                complaints.push_back(t.name + "." + fk.name +
                                     " does not reference the primary key of " +
                                     fk.target_table);
        }
    }
    return complaints;
}

}  // namespace amcm::xlat
