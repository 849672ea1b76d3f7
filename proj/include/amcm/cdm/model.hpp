#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "amcm/result.hpp"
#include "amcm/value.hpp"

namespace amcm::cdm {

using Identifier = std::string;

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

enum class ErrorKind {
    DuplicateName,
    UnknownDomain,
    DuplicateId,
    TypeMismatch,
    UnknownConcept,
    UnknownIndividual,
    UnknownReference,
    NotFound,
    NotUnique,
    LevelMismatch,
};

const char* error_kind_name(ErrorKind kind);

struct Error {
    ErrorKind kind;
    std::string subject;
    std::string message;
    // For NotFound/NotUnique: how many elements satisfied the formula.
    int satisfier_count = -1;

    std::string to_string() const;
};

template <typename T>
using CdmResult = Result<T, Error>;

// ---------------------------------------------------------------------------
// Model entities
// ---------------------------------------------------------------------------

// A named family of functions sharing one definition range (a variable
// domain) and one value range (a content type).
struct Concept {
    Identifier name;
    Identifier domain_name;
    TypeTag value_type = TypeTag::Text;
    std::vector<Identifier> function_names;  // distinct, declaration order
};

struct AttrKey {
    Identifier concept_name;
    Identifier function_name;
    friend auto operator<=>(const AttrKey&, const AttrKey&) = default;
};

struct Individual {
    Identifier id;
    std::map<AttrKey, Literal> attributes;
};

// An assignment index: the moment/world at which membership and formula
// truth are evaluated.
struct StateId {
    Identifier index;
    friend auto operator<=>(const StateId&, const StateId&) = default;
};

// Per-state sets of individuals; membership may differ across states.
struct VariableDomain {
    Identifier name;
    TypeTag element_type = TypeTag::Text;
    std::map<StateId, std::set<Identifier>> membership;

    // States with no entry have empty membership.
    const std::set<Identifier>& members_at(const StateId& state) const;
};

struct DataObject {
    Identifier concept_name;
    Identifier individual_id;
    StateId state;
};

// ---------------------------------------------------------------------------
// Elements: the stratified universe objects range over.
//   level 0: an individual id
//   level k: a finite set of level-(k-1) elements
// ---------------------------------------------------------------------------

class Element {
public:
    static Element individual(Identifier id);
    // member_level: the level of the members (may be needed for empty sets).
    static Element set(int member_level, std::vector<Element> members);

    bool is_individual() const { return rep_.index() == 0; }
    int level() const;

    const Identifier& id() const;
    const std::vector<Element>& members() const;  // sorted, duplicate-free
    bool contains(const Element& e) const;

    int compare(const Element& other) const;
    friend bool operator==(const Element& a, const Element& b) { return a.compare(b) == 0; }
    friend bool operator<(const Element& a, const Element& b) { return a.compare(b) < 0; }

    std::string show() const;

private:
    struct SetRep {
        int member_level = 0;
        std::vector<Element> members;
    };
    explicit Element(std::variant<Identifier, SetRep> rep) : rep_(std::move(rep)) {}
    std::variant<Identifier, SetRep> rep_;
};

// ---------------------------------------------------------------------------
// Formulas
// ---------------------------------------------------------------------------

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

struct FTrue {};
struct FFalse {};
struct AttrEq {
    Identifier concept_name;
    Identifier function_name;
    Literal literal;
};
struct AttrNeq {
    Identifier concept_name;
    Identifier function_name;
    Literal literal;
};
struct FAnd {
    FormulaPtr lhs, rhs;
};
struct FOr {
    FormulaPtr lhs, rhs;
};
struct FNot {
    FormulaPtr inner;
};
struct InObject {
    Identifier object_name;
};

struct Formula {
    std::variant<FTrue, FFalse, AttrEq, AttrNeq, FAnd, FOr, FNot, InObject> node;
};

namespace fml {
FormulaPtr truth();
FormulaPtr falsity();
FormulaPtr attr_eq(Identifier concept_name, Identifier function_name, Literal lit);
FormulaPtr attr_neq(Identifier concept_name, Identifier function_name, Literal lit);
FormulaPtr conj(FormulaPtr lhs, FormulaPtr rhs);
FormulaPtr disj(FormulaPtr lhs, FormulaPtr rhs);
FormulaPtr neg(FormulaPtr inner);
FormulaPtr in_object(Identifier object_name);
}  // namespace fml

int formula_depth(const FormulaPtr& f);
std::string formula_to_string(const FormulaPtr& f);

// ---------------------------------------------------------------------------
// Level objects and the model container
// ---------------------------------------------------------------------------

// A comprehension result, materialized at creation and stamped with its
// state. base_name refers to a variable domain for level 1 and to the
// object one level below otherwise.
struct LevelObject {
    Identifier name;
    int level = 1;
    Identifier base_name;
    FormulaPtr defining_formula;
    std::vector<Element> extension;  // sorted, duplicate-free
    StateId state;
    bool unique_flag = false;  // individualization-style object: |extension| must be 1

    bool in_extension(const Element& e) const;
};

struct IndividualKey {
    Identifier domain;
    Identifier id;
    friend auto operator<=>(const IndividualKey&, const IndividualKey&) = default;
};

struct DomainModel {
    std::map<Identifier, VariableDomain> domains;
    std::map<Identifier, Concept> concepts;
    std::map<IndividualKey, Individual> individuals;
    std::set<StateId> states;
    std::map<Identifier, LevelObject> level_objects;

    // Declaration order, for deterministic downstream emission.
    std::vector<Identifier> domain_order;
    std::vector<Identifier> concept_order;
    std::vector<Identifier> object_order;

    const VariableDomain* find_domain(const Identifier& name) const;
    const Concept* find_concept(const Identifier& name) const;
    const Individual* find_individual(const Identifier& domain, const Identifier& id) const;
    const LevelObject* find_object(const Identifier& name) const;
};

// ---------------------------------------------------------------------------
// Operations. Models are immutable; every mutator returns a new version.
// ---------------------------------------------------------------------------

CdmResult<DomainModel> declare_domain(const DomainModel& model, Identifier name,
                                      TypeTag element_type = TypeTag::Text);

CdmResult<DomainModel> define_concept(const DomainModel& model, Concept c);

CdmResult<DomainModel> add_individual(const DomainModel& model, const Identifier& domain,
                                      Individual ind);

CdmResult<DomainModel> set_state_membership(const DomainModel& model, const Identifier& domain,
                                            const StateId& state,
                                            const std::set<Identifier>& members);

CdmResult<bool> eval_formula(const DomainModel& model, const FormulaPtr& f, const Element& element,
                             const StateId& state);

// Definite description over a domain: the unique satisfier, or an error
// whose payload carries the satisfier count.
CdmResult<Identifier> individualize(const DomainModel& model, const Identifier& domain,
                                    const FormulaPtr& f, const StateId& state);

struct Comprehension {
    DomainModel model;  // with the new object registered
    LevelObject object;
};

// Set comprehension: filters a domain's membership (level 1) or the
// powerset of a lower object's extension (level >= 2).
CdmResult<Comprehension> comprehend(const DomainModel& model, const Identifier& base,
                                    const FormulaPtr& f, const StateId& state, Identifier name,
                                    bool unique_flag = false);

// The candidate space a comprehension over `base` filters.
CdmResult<std::vector<Element>> candidate_space(const DomainModel& model, const Identifier& base,
                                                const StateId& state);

CdmResult<bool> member(const DomainModel& model, const LevelObject& obj, const Element& element);

CdmResult<DataObject> make_data_object(const DomainModel& model, const Identifier& concept_name,
                                       const Identifier& individual_id, const StateId& state);

}  // namespace amcm::cdm
