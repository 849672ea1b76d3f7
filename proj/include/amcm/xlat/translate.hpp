#pragma once

#include <string>
#include <vector>

#include "amcm/cdm/model.hpp"
#include "amcm/lang/ast.hpp"
#include "amcm/tpl/content.hpp"
#include "amcm/tpl/context.hpp"
#include "amcm/xlat/ddl.hpp"
#include "amcm/xlat/integrity.hpp"

namespace amcm::xlat {

enum class XlatErrorKind { IntegrityFailed, IdentifierCollision, ResolveFailed };

struct XlatError {
    XlatErrorKind kind = XlatErrorKind::IntegrityFailed;
    IntegrityReport report;           // IntegrityFailed
    std::vector<std::string> paths;   // IdentifierCollision: the clashing paths
    std::string message;

    std::string to_string() const;
};

template <typename T>
using XlatResult = Result<T, XlatError>;

// Relational mapping, all column order fixed by declaration order:
//   domain D            -> D(id PK, <concept>_<fn> ... per concept over D)
//   state membership    -> D_state(state_id, individual_id) PK both, FK -> D
//   level-1 object O    -> O_members(individual_id) PK, FK -> base domain
//   level-j object O    -> O_sets(set_id) PK plus
//     (j >= 2)             O_members(set_id, member ref) PK both,
//                          FK -> O_sets and the base object's table
// set_id numbers the sorted extension from 1.
XlatResult<DdlDocument> translate_ddl(const cdm::DomainModel& model);

// Store path -> AMCM identifier: `/` becomes `_`, characters outside
// [A-Za-z0-9_] are dropped, and a leading `_` is added when the result
// would be empty or start with a digit.
std::string mangle_path(const std::string& path);

// One assignment per content object in path order, each binding the
// mangled path name to the context-resolved payload. Returns a null
// program for an empty store.
XlatResult<lang::ComPtr> emit_load_program(const tpl::ContentStore& store,
                                           const tpl::PersonalizationContext& ctx);

}  // namespace amcm::xlat
