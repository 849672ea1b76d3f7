#include "amcm/lang/ast.hpp"

#include <utility>

namespace amcm::lang {

ExpPtr mk_lit(Literal value, SourcePos pos) {
    return std::make_shared<const ExpAst>(ExpAst{pos, LitE{std::move(value)}});
}
ExpPtr mk_ident(std::string name, SourcePos pos) {
    return std::make_shared<const ExpAst>(ExpAst{pos, IdentE{std::move(name)}});
}
ExpPtr mk_content(std::string path, SourcePos pos) {
    return std::make_shared<const ExpAst>(ExpAst{pos, ContentRefE{std::move(path)}});
}
ExpPtr mk_read(SourcePos pos) {
    return std::make_shared<const ExpAst>(ExpAst{pos, ReadE{}});
}
ExpPtr mk_eq(ExpPtr lhs, ExpPtr rhs, SourcePos pos) {
    return std::make_shared<const ExpAst>(ExpAst{pos, EqE{std::move(lhs), std::move(rhs)}});
}
ExpPtr mk_neq(ExpPtr lhs, ExpPtr rhs, SourcePos pos) {
    return std::make_shared<const ExpAst>(ExpAst{pos, NeqE{std::move(lhs), std::move(rhs)}});
}

ComPtr mk_assign(std::string ident, ExpPtr expr, SourcePos pos) {
    return std::make_shared<const ComAst>(ComAst{pos, AssignC{std::move(ident), std::move(expr)}});
}
ComPtr mk_seq(ComPtr first, ComPtr second, SourcePos pos) {
    return std::make_shared<const ComAst>(ComAst{pos, SeqC{std::move(first), std::move(second)}});
}
ComPtr mk_if(ExpPtr cond, ComPtr then_branch, ComPtr else_branch, SourcePos pos) {
    return std::make_shared<const ComAst>(
        ComAst{pos, IfC{std::move(cond), std::move(then_branch), std::move(else_branch)}});
}
ComPtr mk_emit(ExpPtr expr, SourcePos pos) {
    return std::make_shared<const ComAst>(ComAst{pos, EmitC{std::move(expr)}});
}

ComPtr seq_of(const std::vector<ComPtr>& commands) {
    if (commands.empty()) return nullptr;
    ComPtr tail = commands.back();
    for (std::size_t i = commands.size() - 1; i-- > 0;) {
        tail = mk_seq(commands[i], std::move(tail), commands[i]->pos);
    }
    return tail;
}

bool same_exp(const ExpPtr& a, const ExpPtr& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    if (a->node.index() != b->node.index()) return false;
    struct Cmp {
        const ExpAst& other;
        bool operator()(const LitE& x) const { return x.value == std::get<LitE>(other.node).value; }
        bool operator()(const IdentE& x) const { return x.name == std::get<IdentE>(other.node).name; }
        bool operator()(const ContentRefE& x) const {
            return x.path == std::get<ContentRefE>(other.node).path;
        }
        bool operator()(const ReadE&) const { return true; }
        bool operator()(const EqE& x) const {
            const auto& y = std::get<EqE>(other.node);
            return same_exp(x.lhs, y.lhs) && same_exp(x.rhs, y.rhs);
        }
        bool operator()(const NeqE& x) const {
            const auto& y = std::get<NeqE>(other.node);
            return same_exp(x.lhs, y.lhs) && same_exp(x.rhs, y.rhs);
        }
    };
    return std::visit(Cmp{*b}, a->node);
}

bool same_com(const ComPtr& a, const ComPtr& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    if (a->node.index() != b->node.index()) return false;
    struct Cmp {
        const ComAst& other;
        bool operator()(const AssignC& x) const {
            const auto& y = std::get<AssignC>(other.node);
            return x.ident == y.ident && same_exp(x.expr, y.expr);
        }
        bool operator()(const SeqC& x) const {
            const auto& y = std::get<SeqC>(other.node);
            return same_com(x.first, y.first) && same_com(x.second, y.second);
        }
        bool operator()(const IfC& x) const {
            const auto& y = std::get<IfC>(other.node);
            return same_exp(x.cond, y.cond) && same_com(x.then_branch, y.then_branch) &&
                   same_com(x.else_branch, y.else_branch);
        }
        bool operator()(const EmitC& x) const {
            return same_exp(x.expr, std::get<EmitC>(other.node).expr);
        }
    };
    return std::visit(Cmp{*b}, a->node);
}

}  // namespace amcm::lang
