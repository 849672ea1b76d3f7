#pragma once

#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "amcm/source_pos.hpp"
#include "amcm/value.hpp"

namespace amcm::lang {

struct ExpAst;
using ExpPtr = std::shared_ptr<const ExpAst>;
struct ComAst;
using ComPtr = std::shared_ptr<const ComAst>;

struct LitE {
    Literal value;
};
struct IdentE {
    std::string name;
};
struct ContentRefE {
    std::string path;  // non-empty
};
struct ReadE {};
struct EqE {
    ExpPtr lhs, rhs;
};
struct NeqE {
    ExpPtr lhs, rhs;
};

struct ExpAst {
    SourcePos pos;
    std::variant<LitE, IdentE, ContentRefE, ReadE, EqE, NeqE> node;
};

struct AssignC {
    std::string ident;
    ExpPtr expr;
};
struct SeqC {
    ComPtr first, second;
};
struct IfC {
    ExpPtr cond;
    ComPtr then_branch;
    ComPtr else_branch;  // may be null
};
struct EmitC {
    ExpPtr expr;
};

struct ComAst {
    SourcePos pos;
    std::variant<AssignC, SeqC, IfC, EmitC> node;
};

// Builders. Positions default to 1:1 for programmatically built trees.
ExpPtr mk_lit(Literal value, SourcePos pos = {});
ExpPtr mk_ident(std::string name, SourcePos pos = {});
ExpPtr mk_content(std::string path, SourcePos pos = {});
ExpPtr mk_read(SourcePos pos = {});
ExpPtr mk_eq(ExpPtr lhs, ExpPtr rhs, SourcePos pos = {});
ExpPtr mk_neq(ExpPtr lhs, ExpPtr rhs, SourcePos pos = {});

ComPtr mk_assign(std::string ident, ExpPtr expr, SourcePos pos = {});
ComPtr mk_seq(ComPtr first, ComPtr second, SourcePos pos = {});
ComPtr mk_if(ExpPtr cond, ComPtr then_branch, ComPtr else_branch = nullptr, SourcePos pos = {});
ComPtr mk_emit(ExpPtr expr, SourcePos pos = {});

// Right-associated sequence of a command list; null for an empty list.
ComPtr seq_of(const std::vector<ComPtr>& commands);

// Structural equality, ignoring source positions.
bool same_exp(const ExpPtr& a, const ExpPtr& b);
bool same_com(const ComPtr& a, const ComPtr& b);

}  // namespace amcm::lang
