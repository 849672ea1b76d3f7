#include "amcm/xlat/integrity.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace amcm::xlat {

namespace {

struct FormulaRefs {
    std::vector<cdm::AttrKey> attrs;
    std::vector<cdm::Identifier> objects;
};

void collect_refs(const cdm::FormulaPtr& f, FormulaRefs& out) {
    if (!f) return;
    struct Visit {
        FormulaRefs& out;
        void operator()(const cdm::FTrue&) const {}
        void operator()(const cdm::FFalse&) const {}
        void operator()(const cdm::AttrEq& a) const {
            out.attrs.push_back({a.concept_name, a.function_name});
        }
        void operator()(const cdm::AttrNeq& a) const {
            out.attrs.push_back({a.concept_name, a.function_name});
        }
        void operator()(const cdm::FAnd& n) const {
            collect_refs(n.lhs, out);
            collect_refs(n.rhs, out);
        }
        void operator()(const cdm::FOr& n) const {
            collect_refs(n.lhs, out);
            collect_refs(n.rhs, out);
        }
        void operator()(const cdm::FNot& n) const { collect_refs(n.inner, out); }
        void operator()(const cdm::InObject& n) const { out.objects.push_back(n.object_name); }
    };
    std::visit(Visit{out}, f->node);
}

// Level indices recomputed from base links alone, ignoring the stored
// level fields; unresolvable bases yield no entry.
std::map<cdm::Identifier, int> derive_levels(const cdm::DomainModel& model) {
    std::map<cdm::Identifier, int> levels;
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& [name, obj] : model.level_objects) {
            if (levels.count(name)) continue;
            int level = 0;
            if (model.find_domain(obj.base_name) && model.find_object(obj.base_name) == nullptr) {
                level = 1;
            } else if (auto it = levels.find(obj.base_name); it != levels.end()) {
                level = it->second + 1;
            } else {
                continue;
            }
            levels.emplace(name, level);
            changed = true;
        }
    }
    return levels;
}

class Checker {
public:
    explicit Checker(const cdm::DomainModel& model) : model_(model) {}

    IntegrityReport run() {
        completeness();
        consistency();
        integrity();
        return std::move(report_);
    }

private:
    void add(Severity sev, std::string code, std::string subject, std::string message) {
        report_.findings.push_back(
            Finding{sev, std::move(code), std::move(subject), std::move(message)});
    }

    void completeness() {
        for (const auto& [name, c] : model_.concepts) {
            if (model_.find_domain(c.domain_name) == nullptr)
                add(Severity::Error, "unknown-domain", name,
                    "concept is declared over undeclared domain '" + c.domain_name + "'");
        }
        for (const auto& [key, ind] : model_.individuals) {
            for (const cdm::Identifier& cname : model_.concept_order) {
                const cdm::Concept* c = model_.find_concept(cname);
                if (c == nullptr || c->domain_name != key.domain) continue;
                for (const cdm::Identifier& fn : c->function_names) {
                    if (ind.attributes.count({cname, fn}) == 0)
                        add(Severity::Error, "missing-attr", key.domain + "." + key.id,
                            "individual lacks a value for " + cname + "." + fn);
                }
            }
        }
    }

    void consistency() {
        for (const auto& [key, ind] : model_.individuals) {
            for (const auto& [attr, lit] : ind.attributes) {
                const cdm::Concept* c = model_.find_concept(attr.concept_name);
                if (c == nullptr) {
                    add(Severity::Error, "dangling-ref", key.domain + "." + key.id,
                        "attribute names unknown concept '" + attr.concept_name + "'");
                    continue;
                }
                if (std::find(c->function_names.begin(), c->function_names.end(),
                              attr.function_name) == c->function_names.end()) {
                    add(Severity::Error, "dangling-ref", key.domain + "." + key.id,
                        "concept '" + attr.concept_name + "' has no function '" +
                            attr.function_name + "'");
                    continue;
                }
                if (lit.tag() != c->value_type)
                    add(Severity::Error, "attr-type", key.domain + "." + key.id,
                        attr.concept_name + "." + attr.function_name + " holds " +
                            type_name(lit.tag()) + " but the concept is typed " +
                            type_name(c->value_type));
            }
        }

        std::map<cdm::Identifier, int> levels = derive_levels(model_);
        for (const auto& [name, obj] : model_.level_objects) {
            auto own = levels.find(name);
            if (own == levels.end()) {
                add(Severity::Error, "dangling-ref", name,
                    "object's base '" + obj.base_name + "' resolves to nothing");
                continue;
            }
            if (own->second != obj.level)
                add(Severity::Error, "stratification", name,
                    "object records level " + std::to_string(obj.level) +
                        " but its base chain gives level " + std::to_string(own->second));
            FormulaRefs refs;
            collect_refs(obj.defining_formula, refs);
            for (const cdm::AttrKey& attr : refs.attrs) {
                const cdm::Concept* c = model_.find_concept(attr.concept_name);
                bool fn_known =
                    c != nullptr && std::find(c->function_names.begin(), c->function_names.end(),
                                              attr.function_name) != c->function_names.end();
                if (!fn_known)
                    add(Severity::Error, "dangling-ref", name,
                        "formula names unknown attribute " + attr.concept_name + "." +
                            attr.function_name);
            }
            for (const cdm::Identifier& ref : refs.objects) {
                auto rl = levels.find(ref);
                if (model_.find_object(ref) == nullptr) {
                    add(Severity::Error, "dangling-ref", name,
                        "formula references unknown object '" + ref + "'");
                } else if (rl == levels.end() || own == levels.end()) {
                    continue;  // already reported above
                } else if (rl->second >= own->second) {
                    add(Severity::Error, "stratification", name,
                        "formula references object '" + ref + "' of level " +
                            std::to_string(rl->second) +
                            ", not strictly below level " + std::to_string(own->second));
                }
            }
        }

        // Derived table names must stay distinct for the relational mapping.
        std::map<std::string, std::string> tables;
        auto claim = [&](const std::string& table, const std::string& owner) {
            auto [it, fresh] = tables.emplace(table, owner);
            if (!fresh)
                add(Severity::Error, "name-collision", owner,
                    "derived table '" + table + "' is already produced by " + it->second);
        };
        for (const cdm::Identifier& d : model_.domain_order) {
            claim(d, "domain " + d);
            claim(d + "_state", "domain " + d);
        }
        for (const cdm::Identifier& o : model_.object_order) {
            const cdm::LevelObject* obj = model_.find_object(o);
            if (obj == nullptr) continue;
            claim(o + "_members", "object " + o);
            if (obj->level >= 2) claim(o + "_sets", "object " + o);
        }
    }

    void integrity() {
        for (const auto& [dname, dom] : model_.domains) {
            bool any_state = false;
            for (const auto& [state, members] : dom.membership) {
                any_state = any_state || !members.empty();
                for (const cdm::Identifier& id : members) {
                    if (model_.find_individual(dname, id) == nullptr)
                        add(Severity::Error, "unknown-member", dname,
                            "state '" + state.index + "' lists undeclared individual '" + id +
                                "'");
                }
            }
            if (!any_state)
                add(Severity::Warning, "no-states", dname,
                    "domain has no state membership; every comprehension over it is empty");
        }
        for (const auto& [name, obj] : model_.level_objects) {
            if (obj.unique_flag && obj.extension.size() != 1)
                add(Severity::Error, "unique-violated", name,
                    "object is marked unique but holds " +
                        std::to_string(obj.extension.size()) + " elements");
        }
    }

    const cdm::DomainModel& model_;
    IntegrityReport report_;
};

}  // namespace

std::string Finding::to_string() const {
    return std::string(severity == Severity::Error ? "error" : "warning") + " " + code + " " +
           subject + ": " + message;
}

bool IntegrityReport::passed() const { return error_count() == 0; }

std::size_t IntegrityReport::error_count() const {
    std::size_t n = 0;
    for (const Finding& f : findings)
        if (f.severity == Severity::Error) ++n;
    return n;
}

std::size_t IntegrityReport::warning_count() const {
    return findings.size() - error_count();
}

std::string IntegrityReport::summary() const {
    return std::to_string(error_count()) + " errors, " + std::to_string(warning_count()) +
           " warnings";
}

IntegrityReport check_integrity(const cdm::DomainModel& model) {
    return Checker(model).run();
}

}  // namespace amcm::xlat
