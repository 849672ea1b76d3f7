#include "amcm/cdm/model.hpp"

#include <algorithm>
#include <cassert>

namespace amcm::cdm {

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

const char* error_kind_name(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::DuplicateName: return "DuplicateName";
        case ErrorKind::UnknownDomain: return "UnknownDomain";
        case ErrorKind::DuplicateId: return "DuplicateId";
        case ErrorKind::TypeMismatch: return "TypeMismatch";
        case ErrorKind::UnknownConcept: return "UnknownConcept";
        case ErrorKind::UnknownIndividual: return "UnknownIndividual";
        case ErrorKind::UnknownReference: return "UnknownReference";
        case ErrorKind::NotFound: return "NotFound";
        case ErrorKind::NotUnique: return "NotUnique";
        case ErrorKind::LevelMismatch: return "LevelMismatch";
    }
    return "?";
}

std::string Error::to_string() const {
    std::string out = error_kind_name(kind);
    if (!subject.empty()) out += " '" + subject + "'";
    if (!message.empty()) out += ": " + message;
    if (satisfier_count >= 0) out += " (satisfiers: " + std::to_string(satisfier_count) + ")";
    return out;
}

static Error err(ErrorKind kind, std::string subject, std::string message = "") {
    return Error{kind, std::move(subject), std::move(message)};
}

// ---------------------------------------------------------------------------
// Elements
// ---------------------------------------------------------------------------

Element Element::individual(Identifier id) {
    return Element(std::variant<Identifier, SetRep>(std::in_place_index<0>, std::move(id)));
}

Element Element::set(int member_level, std::vector<Element> members) {
    for ([[maybe_unused]] const Element& m : members)
        assert(m.level() == member_level && "set members must share one level");
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end(),
                              [](const Element& a, const Element& b) { return a.compare(b) == 0; }),
                  members.end());
    return Element(std::variant<Identifier, SetRep>(std::in_place_index<1>,
                                                    SetRep{member_level, std::move(members)}));
}

int Element::level() const {
    if (is_individual()) return 0;
    return std::get<1>(rep_).member_level + 1;
}

const Identifier& Element::id() const {
    assert(is_individual());
    return std::get<0>(rep_);
}

const std::vector<Element>& Element::members() const {
    assert(!is_individual());
    return std::get<1>(rep_).members;
}

bool Element::contains(const Element& e) const {
    const auto& ms = members();
    return std::binary_search(ms.begin(), ms.end(), e);
}

int Element::compare(const Element& other) const {
    if (rep_.index() != other.rep_.index()) return rep_.index() < other.rep_.index() ? -1 : 1;
    if (is_individual()) return id().compare(other.id());
    const SetRep& a = std::get<1>(rep_);
    const SetRep& b = std::get<1>(other.rep_);
    if (a.member_level != b.member_level) return a.member_level < b.member_level ? -1 : 1;
    size_t n = std::min(a.members.size(), b.members.size());
    for (size_t i = 0; i < n; ++i) {
        int c = a.members[i].compare(b.members[i]);
        if (c != 0) return c;
    }
    if (a.members.size() != b.members.size()) return a.members.size() < b.members.size() ? -1 : 1;
    return 0;
}

std::string Element::show() const {
    if (is_individual()) return id();
    std::string out = "{";
    const auto& ms = members();
    for (size_t i = 0; i < ms.size(); ++i) {
        if (i) out += ", ";
        out += ms[i].show();
    }
    return out + "}";
}

// ---------------------------------------------------------------------------
// Formulas
// ---------------------------------------------------------------------------

namespace fml {

static FormulaPtr make(Formula f) { return std::make_shared<const Formula>(std::move(f)); }

FormulaPtr truth() { return make(Formula{FTrue{}}); }
FormulaPtr falsity() { return make(Formula{FFalse{}}); }
FormulaPtr attr_eq(Identifier c, Identifier fn, Literal lit) {
    return make(Formula{AttrEq{std::move(c), std::move(fn), std::move(lit)}});
}
FormulaPtr attr_neq(Identifier c, Identifier fn, Literal lit) {
    return make(Formula{AttrNeq{std::move(c), std::move(fn), std::move(lit)}});
}
FormulaPtr conj(FormulaPtr lhs, FormulaPtr rhs) {
    return make(Formula{FAnd{std::move(lhs), std::move(rhs)}});
}
FormulaPtr disj(FormulaPtr lhs, FormulaPtr rhs) {
    return make(Formula{FOr{std::move(lhs), std::move(rhs)}});
}
FormulaPtr neg(FormulaPtr inner) { return make(Formula{FNot{std::move(inner)}}); }
FormulaPtr in_object(Identifier name) { return make(Formula{InObject{std::move(name)}}); }

}  // namespace fml

int formula_depth(const FormulaPtr& f) {
    struct Depth {
        int operator()(const FTrue&) const { return 1; }
        int operator()(const FFalse&) const { return 1; }
        int operator()(const AttrEq&) const { return 1; }
        int operator()(const AttrNeq&) const { return 1; }
        int operator()(const InObject&) const { return 1; }
        int operator()(const FNot& n) const { return 1 + formula_depth(n.inner); }
        int operator()(const FAnd& n) const {
            return 1 + std::max(formula_depth(n.lhs), formula_depth(n.rhs));
        }
        int operator()(const FOr& n) const {
            return 1 + std::max(formula_depth(n.lhs), formula_depth(n.rhs));
        }
    };
    return std::visit(Depth{}, f->node);
}

std::string formula_to_string(const FormulaPtr& f) {
    struct Printer {
        std::string operator()(const FTrue&) const { return "true"; }
        std::string operator()(const FFalse&) const { return "false"; }
        std::string operator()(const AttrEq& a) const {
            return a.concept_name + "." + a.function_name + " == " +
                   Value::from_literal(a.literal).show();
        }
        std::string operator()(const AttrNeq& a) const {
            return a.concept_name + "." + a.function_name + " != " +
                   Value::from_literal(a.literal).show();
        }
        std::string operator()(const InObject& a) const { return "in " + a.object_name; }
        std::string operator()(const FNot& n) const {
            return "not " + formula_to_string(n.inner);
        }
        std::string operator()(const FAnd& n) const {
            return "(" + formula_to_string(n.lhs) + " and " + formula_to_string(n.rhs) + ")";
        }
        std::string operator()(const FOr& n) const {
            return "(" + formula_to_string(n.lhs) + " or " + formula_to_string(n.rhs) + ")";
        }
    };
    return std::visit(Printer{}, f->node);
}

// ---------------------------------------------------------------------------
// Containers
// ---------------------------------------------------------------------------

const std::set<Identifier>& VariableDomain::members_at(const StateId& state) const {
    static const std::set<Identifier> empty;
    auto it = membership.find(state);
    return it == membership.end() ? empty : it->second;
}

bool LevelObject::in_extension(const Element& e) const {
    return std::binary_search(extension.begin(), extension.end(), e);
}

const VariableDomain* DomainModel::find_domain(const Identifier& name) const {
    auto it = domains.find(name);
    return it == domains.end() ? nullptr : &it->second;
}

const Concept* DomainModel::find_concept(const Identifier& name) const {
    auto it = concepts.find(name);
    return it == concepts.end() ? nullptr : &it->second;
}

const Individual* DomainModel::find_individual(const Identifier& domain, const Identifier& id) const {
    auto it = individuals.find(IndividualKey{domain, id});
    return it == individuals.end() ? nullptr : &it->second;
}

const LevelObject* DomainModel::find_object(const Identifier& name) const {
    auto it = level_objects.find(name);
    return it == level_objects.end() ? nullptr : &it->second;
}

// ---------------------------------------------------------------------------
// Model-building operations
// ---------------------------------------------------------------------------

CdmResult<DomainModel> declare_domain(const DomainModel& model, Identifier name,
                                      TypeTag element_type) {
    if (model.domains.count(name))
        return err(ErrorKind::DuplicateName, name, "domain already declared");
    DomainModel next = model;
    next.domain_order.push_back(name);
    next.domains.emplace(name, VariableDomain{name, element_type, {}});
    return next;
}

CdmResult<DomainModel> define_concept(const DomainModel& model, Concept c) {
    if (model.concepts.count(c.name))
        return err(ErrorKind::DuplicateName, c.name, "concept already defined");
    if (!model.find_domain(c.domain_name))
        return err(ErrorKind::UnknownDomain, c.domain_name,
                   "concept '" + c.name + "' ranges over an undeclared domain");
    for (size_t i = 0; i < c.function_names.size(); ++i)
        for (size_t j = i + 1; j < c.function_names.size(); ++j)
            if (c.function_names[i] == c.function_names[j])
                return err(ErrorKind::DuplicateName, c.name + "." + c.function_names[i],
                           "duplicate function name");
    DomainModel next = model;
    next.concept_order.push_back(c.name);
    next.concepts.emplace(c.name, std::move(c));
    return next;
}

CdmResult<DomainModel> add_individual(const DomainModel& model, const Identifier& domain,
                                      Individual ind) {
    if (!model.find_domain(domain))
        return err(ErrorKind::UnknownDomain, domain, "individual added to an undeclared domain");
    IndividualKey key{domain, ind.id};
    if (model.individuals.count(key))
        return err(ErrorKind::DuplicateId, domain + "." + ind.id,
                   "individual id already used in this domain");
    for (const auto& [attr, lit] : ind.attributes) {
        const Concept* c = model.find_concept(attr.concept_name);
        if (!c)
            return err(ErrorKind::UnknownConcept, attr.concept_name,
                       "attribute of '" + ind.id + "' names an unknown concept");
        if (std::find(c->function_names.begin(), c->function_names.end(), attr.function_name) ==
            c->function_names.end())
            return err(ErrorKind::UnknownConcept, attr.concept_name + "." + attr.function_name,
                       "attribute of '" + ind.id + "' names an unknown function");
        if (c->domain_name != domain)
            return err(ErrorKind::TypeMismatch, attr.concept_name,
                       "concept ranges over domain '" + c->domain_name + "', not '" + domain + "'");
        if (lit.tag() != c->value_type)
            return err(ErrorKind::TypeMismatch, attr.concept_name + "." + attr.function_name,
                       std::string("attribute value is ") + type_name(lit.tag()) +
                           ", concept value type is " + type_name(c->value_type));
    }
    DomainModel next = model;
    next.individuals.emplace(std::move(key), std::move(ind));
    return next;
}

CdmResult<DomainModel> set_state_membership(const DomainModel& model, const Identifier& domain,
                                            const StateId& state,
                                            const std::set<Identifier>& members) {
    if (!model.find_domain(domain)) return err(ErrorKind::UnknownDomain, domain);
    for (const Identifier& id : members)
        if (!model.find_individual(domain, id))
            return err(ErrorKind::UnknownIndividual, domain + "." + id,
                       "membership lists an undeclared individual");
    DomainModel next = model;
    next.domains.at(domain).membership[state] = members;
    next.states.insert(state);
    return next;
}

// ---------------------------------------------------------------------------
// Formula evaluation
// ---------------------------------------------------------------------------

namespace {

struct Evaluator {
    const DomainModel& model;
    const Element& element;
    const StateId& state;

    CdmResult<bool> operator()(const FTrue&) const { return true; }
    CdmResult<bool> operator()(const FFalse&) const { return false; }

    CdmResult<bool> eval_eq(const Identifier& concept_name, const Identifier& function_name,
                            const Literal& lit) const {
        if (!element.is_individual())
            return err(ErrorKind::LevelMismatch, concept_name + "." + function_name,
                       "attribute test applied to a level-" + std::to_string(element.level()) +
                           " element");
        const Concept* c = model.find_concept(concept_name);
        if (!c) return err(ErrorKind::UnknownReference, concept_name, "unknown concept in formula");
        if (std::find(c->function_names.begin(), c->function_names.end(), function_name) ==
            c->function_names.end())
            return err(ErrorKind::UnknownReference, concept_name + "." + function_name,
                       "unknown function in formula");
        // Closed world: a missing individual or attribute compares unequal.
        const Individual* ind = model.find_individual(c->domain_name, element.id());
        if (!ind) return false;
        auto it = ind->attributes.find(AttrKey{concept_name, function_name});
        if (it == ind->attributes.end()) return false;
        return it->second == lit;
    }

    CdmResult<bool> operator()(const AttrEq& a) const {
        return eval_eq(a.concept_name, a.function_name, a.literal);
    }
    CdmResult<bool> operator()(const AttrNeq& a) const {
        auto r = eval_eq(a.concept_name, a.function_name, a.literal);
        if (!r.ok()) return r;
        return !r.value();
    }

    CdmResult<bool> operator()(const FAnd& n) const {
        auto l = eval_formula(model, n.lhs, element, state);
        if (!l.ok()) return l;
        auto r = eval_formula(model, n.rhs, element, state);
        if (!r.ok()) return r;
        return l.value() && r.value();
    }
    CdmResult<bool> operator()(const FOr& n) const {
        auto l = eval_formula(model, n.lhs, element, state);
        if (!l.ok()) return l;
        auto r = eval_formula(model, n.rhs, element, state);
        if (!r.ok()) return r;
        return l.value() || r.value();
    }
    CdmResult<bool> operator()(const FNot& n) const {
        auto r = eval_formula(model, n.inner, element, state);
        if (!r.ok()) return r;
        return !r.value();
    }

    // Membership against a materialized object: the member relation one
    // level below the object, subset containment at the object's own level.
    CdmResult<bool> operator()(const InObject& a) const {
        const LevelObject* obj = model.find_object(a.object_name);
        if (!obj)
            return err(ErrorKind::UnknownReference, a.object_name, "unknown object in formula");
        int el = element.level();
        if (el == obj->level - 1) return obj->in_extension(element);
        if (el == obj->level) {
            for (const Element& m : element.members())
                if (!obj->in_extension(m)) return false;
            return true;
        }
        return err(ErrorKind::LevelMismatch, a.object_name,
                   "object of level " + std::to_string(obj->level) +
                       " tested against a level-" + std::to_string(el) + " element");
    }
};

}  // namespace

CdmResult<bool> eval_formula(const DomainModel& model, const FormulaPtr& f, const Element& element,
                             const StateId& state) {
    return std::visit(Evaluator{model, element, state}, f->node);
}

// ---------------------------------------------------------------------------
// Individualization and comprehension
// ---------------------------------------------------------------------------

CdmResult<Identifier> individualize(const DomainModel& model, const Identifier& domain,
                                    const FormulaPtr& f, const StateId& state) {
    const VariableDomain* dom = model.find_domain(domain);
    if (!dom) return err(ErrorKind::UnknownDomain, domain);
    std::vector<Identifier> satisfiers;
    for (const Identifier& id : dom->members_at(state)) {
        auto r = eval_formula(model, f, Element::individual(id), state);
        if (!r.ok()) return std::move(r).error();
        if (r.value()) satisfiers.push_back(id);
    }
    if (satisfiers.size() == 1) return satisfiers.front();
    Error e = satisfiers.empty()
                  ? err(ErrorKind::NotFound, domain, "no element satisfies the formula")
                  : err(ErrorKind::NotUnique, domain, "formula does not pick a unique element");
    e.satisfier_count = static_cast<int>(satisfiers.size());
    return e;
}

static void collect_object_refs(const FormulaPtr& f, std::vector<Identifier>& out) {
    struct Collector {
        std::vector<Identifier>& out;
        void operator()(const InObject& a) const { out.push_back(a.object_name); }
        void operator()(const FNot& n) const { collect_object_refs(n.inner, out); }
        void operator()(const FAnd& n) const {
            collect_object_refs(n.lhs, out);
            collect_object_refs(n.rhs, out);
        }
        void operator()(const FOr& n) const {
            collect_object_refs(n.lhs, out);
            collect_object_refs(n.rhs, out);
        }
        void operator()(const FTrue&) const {}
        void operator()(const FFalse&) const {}
        void operator()(const AttrEq&) const {}
        void operator()(const AttrNeq&) const {}
    };
    std::visit(Collector{out}, f->node);
}

CdmResult<std::vector<Element>> candidate_space(const DomainModel& model, const Identifier& base,
                                                const StateId& state) {
    // Objects shadow domains when both carry the name.
    if (const LevelObject* obj = model.find_object(base)) {
        const std::vector<Element>& ext = obj->extension;
        size_t n = ext.size();
        std::vector<Element> subsets;
        subsets.reserve(size_t(1) << n);
        for (size_t bits = 0; bits < (size_t(1) << n); ++bits) {
            std::vector<Element> members;
            for (size_t i = 0; i < n; ++i)
                if (bits & (size_t(1) << i)) members.push_back(ext[i]);
            subsets.push_back(Element::set(obj->level - 1, std::move(members)));
        }
        std::sort(subsets.begin(), subsets.end());
        return subsets;
    }
    if (const VariableDomain* dom = model.find_domain(base)) {
        std::vector<Element> out;
        for (const Identifier& id : dom->members_at(state)) out.push_back(Element::individual(id));
        return out;
    }
    return err(ErrorKind::UnknownReference, base, "comprehension base is neither domain nor object");
}

CdmResult<Comprehension> comprehend(const DomainModel& model, const Identifier& base,
                                    const FormulaPtr& f, const StateId& state, Identifier name,
                                    bool unique_flag) {
    if (model.level_objects.count(name))
        return err(ErrorKind::DuplicateName, name, "object already defined");

    int new_level;
    if (const LevelObject* baseobj = model.find_object(base)) {
        new_level = baseobj->level + 1;
    } else if (model.find_domain(base)) {
        new_level = 1;
    } else {
        return err(ErrorKind::UnknownReference, base,
                   "comprehension base is neither domain nor object");
    }

    // Stratification: referenced objects must sit strictly below the new one.
    std::vector<Identifier> refs;
    collect_object_refs(f, refs);
    for (const Identifier& ref : refs) {
        const LevelObject* robj = model.find_object(ref);
        if (!robj) return err(ErrorKind::UnknownReference, ref, "formula references unknown object");
        if (robj->level >= new_level)
            return err(ErrorKind::LevelMismatch, ref,
                       "formula for level-" + std::to_string(new_level) +
                           " object references level-" + std::to_string(robj->level) + " object");
    }

    auto candidates = candidate_space(model, base, state);
    if (!candidates.ok()) return std::move(candidates).error();

    std::vector<Element> extension;
    for (const Element& cand : candidates.value()) {
        auto r = eval_formula(model, f, cand, state);
        if (!r.ok()) return std::move(r).error();
        if (r.value()) extension.push_back(cand);
    }
    std::sort(extension.begin(), extension.end());

    LevelObject obj{std::move(name), new_level, base, f, std::move(extension), state, unique_flag};
    DomainModel next = model;
    next.object_order.push_back(obj.name);
    next.level_objects.emplace(obj.name, obj);
    return Comprehension{std::move(next), std::move(obj)};
}

CdmResult<bool> member(const DomainModel& model, const LevelObject& obj, const Element& element) {
    if (element.level() != obj.level - 1)
        return err(ErrorKind::LevelMismatch, obj.name,
                   "element of level " + std::to_string(element.level()) +
                       " tested against a level-" + std::to_string(obj.level) + " object");
    // Outside the candidate space membership is plain false.
    if (obj.level == 1) {
        const VariableDomain* dom = model.find_domain(obj.base_name);
        if (!dom) return err(ErrorKind::UnknownReference, obj.base_name);
        if (!dom->members_at(obj.state).count(element.id())) return false;
    } else {
        const LevelObject* baseobj = model.find_object(obj.base_name);
        if (!baseobj) return err(ErrorKind::UnknownReference, obj.base_name);
        for (const Element& m : element.members())
            if (!baseobj->in_extension(m)) return false;
    }
    return eval_formula(model, obj.defining_formula, element, obj.state);
}

CdmResult<DataObject> make_data_object(const DomainModel& model, const Identifier& concept_name,
                                       const Identifier& individual_id, const StateId& state) {
    const Concept* c = model.find_concept(concept_name);
    if (!c) return err(ErrorKind::UnknownConcept, concept_name);
    if (!model.find_individual(c->domain_name, individual_id))
        return err(ErrorKind::UnknownIndividual, c->domain_name + "." + individual_id);
    const VariableDomain* dom = model.find_domain(c->domain_name);
    if (!dom || !dom->members_at(state).count(individual_id))
        return err(ErrorKind::UnknownIndividual, individual_id,
                   "not a member of '" + c->domain_name + "' at state '" + state.index + "'");
    return DataObject{concept_name, individual_id, state};
}

}  // namespace amcm::cdm
