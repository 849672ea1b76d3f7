#include "amcm/xlat/translate.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <utility>

namespace amcm::xlat {

namespace {

const char* sql_type(TypeTag tag) {
    switch (tag) {
        case TypeTag::Int: return "BIGINT";
        case TypeTag::Bool: return "BOOLEAN";
        default: return "TEXT";  // Text and Markup both land in TEXT
    }
}

}  // namespace

std::string XlatError::to_string() const {
    switch (kind) {
        case XlatErrorKind::IntegrityFailed: {
            std::string out = "integrity failed (" + report.summary() + ")";
            for (const Finding& f : report.findings) out += "\n" + f.to_string();
            return out;
        }
        case XlatErrorKind::IdentifierCollision: {
            std::string out = "identifier collision after mangling:";
            for (const std::string& p : paths) out += " " + p;
            return out;
        }
        case XlatErrorKind::ResolveFailed: return "load emission failed: " + message;
    }
    return message;
}

XlatResult<DdlDocument> translate_ddl(const cdm::DomainModel& model) {
    IntegrityReport report = check_integrity(model);
    if (!report.passed())
        return XlatError{XlatErrorKind::IntegrityFailed, std::move(report), {}, {}};

    DdlDocument doc;

    for (const cdm::Identifier& dname : model.domain_order) {
        DdlTable table;
        table.name = dname;
        table.columns.push_back({"id", "TEXT", true});
        for (const cdm::Identifier& cname : model.concept_order) {
            const cdm::Concept* c = model.find_concept(cname);
            if (c == nullptr || c->domain_name != dname) continue;
            for (const cdm::Identifier& fn : c->function_names)
                table.columns.push_back({cname + "_" + fn, sql_type(c->value_type), true});
        }
        table.pk_name = "pk_" + dname;
        table.primary_key = {"id"};
        doc.tables.push_back(std::move(table));

        DdlTable states;
        states.name = dname + "_state";
        states.columns.push_back({"state_id", "TEXT", true});
        states.columns.push_back({"individual_id", "TEXT", true});
        states.pk_name = "pk_" + states.name;
        states.primary_key = {"state_id", "individual_id"};
        states.foreign_keys.push_back(
            {"fk_" + states.name + "_individual", {"individual_id"}, dname, {"id"}});
        doc.tables.push_back(std::move(states));
    }

    for (const cdm::Identifier& oname : model.object_order) {
        const cdm::LevelObject* obj = model.find_object(oname);
        if (obj == nullptr) continue;
        if (obj->level == 1) {
            DdlTable members;
            members.name = oname + "_members";
            members.columns.push_back({"individual_id", "TEXT", true});
            members.pk_name = "pk_" + members.name;
            members.primary_key = {"individual_id"};
            members.foreign_keys.push_back(
                {"fk_" + members.name + "_individual", {"individual_id"}, obj->base_name, {"id"}});
            doc.tables.push_back(std::move(members));
            continue;
        }

        const std::string sets_name = oname + "_sets";
        DdlTable sets;
        sets.name = sets_name;
        sets.columns.push_back({"set_id", "BIGINT", true});
        sets.pk_name = "pk_" + sets_name;
        sets.primary_key = {"set_id"};
        doc.tables.push_back(std::move(sets));

        // Members of each set: level-0 members are individual ids of the
        // base chain's domain; deeper members are set_ids of the base
        // object's own set table.
        DdlTable members;
        members.name = oname + "_members";
        members.columns.push_back({"set_id", "BIGINT", true});
        std::string member_col;
        std::string target_table;
        std::vector<std::string> target_cols;
        if (obj->level == 2) {
            member_col = "individual_id";
            target_table = obj->base_name + "_members";
            target_cols = {"individual_id"};
            members.columns.push_back({member_col, "TEXT", true});
        } else {
            member_col = "member_set_id";
            target_table = obj->base_name + "_sets";
            target_cols = {"set_id"};
            members.columns.push_back({member_col, "BIGINT", true});
        }
        members.pk_name = "pk_" + members.name;
        members.primary_key = {"set_id", member_col};
        members.foreign_keys.push_back(
            {"fk_" + members.name + "_set", {"set_id"}, sets_name, {"set_id"}});
        members.foreign_keys.push_back(
            {"fk_" + members.name + "_member", {member_col}, target_table, target_cols});
        doc.tables.push_back(std::move(members));
    }

    return doc;
}

std::string mangle_path(const std::string& path) {
    std::string out;
    for (char c : path) {
        if (c == '/') {
            out += '_';
        } else if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') {
            out += c;
        }
    }
    if (out.empty() || std::isdigit(static_cast<unsigned char>(out[0]))) out.insert(out.begin(), '_');
    return out;
}

XlatResult<lang::ComPtr> emit_load_program(const tpl::ContentStore& store,
                                           const tpl::PersonalizationContext& ctx) {
    std::map<std::string, std::vector<std::string>> by_ident;  // mangled -> paths
    for (const auto& [path, obj] : store.objects()) by_ident[mangle_path(path)].push_back(path);
    std::vector<std::string> collisions;
    for (const auto& [ident, paths] : by_ident)
        if (paths.size() > 1) collisions.insert(collisions.end(), paths.begin(), paths.end());
    if (!collisions.empty())
        return XlatError{XlatErrorKind::IdentifierCollision, {}, std::move(collisions), {}};

    std::vector<lang::ComPtr> assigns;
    for (const auto& [path, obj] : store.objects()) {
        auto value = tpl::resolve_variant(obj, ctx);
        if (!value.ok())
            return XlatError{XlatErrorKind::ResolveFailed, {}, {}, value.error().to_string()};
        auto lit = value.value().to_literal();
        if (!lit.has_value())
            return XlatError{XlatErrorKind::ResolveFailed, {}, {},
                             path + ": payload is not an atomic value"};
        assigns.push_back(lang::mk_assign(mangle_path(path), lang::mk_lit(*lit)));
    }
    return lang::seq_of(assigns);
}

}  // namespace amcm::xlat
