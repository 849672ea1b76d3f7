#pragma once

#include <string>
#include <vector>

#include "amcm/cdm/model.hpp"

namespace amcm::xlat {

enum class Severity { Error, Warning };

struct Finding {
    Severity severity = Severity::Error;
    std::string code;     // stable machine-readable label, e.g. "missing-attr"
    std::string subject;  // the model entity at fault
    std::string message;

    std::string to_string() const;  // `<severity> <code> <subject>: <message>`
};

struct IntegrityReport {
    std::vector<Finding> findings;

    bool passed() const;  // no Error-severity findings
    std::size_t error_count() const;
    std::size_t warning_count() const;
    std::string summary() const;  // `N errors, M warnings`
};

// Three families of checks over a model, none of which throw:
//  completeness: concepts sit over declared domains; every individual
//    carries every function of every concept over its domain.
//  consistency: attribute values match concept types; attributes refer to
//    declared concepts/functions; level objects are stratified and their
//    derived table names collide with nothing.
//  integrity: state memberships name declared individuals; objects marked
//    unique hold exactly one element.
IntegrityReport check_integrity(const cdm::DomainModel& model);

}  // namespace amcm::xlat
