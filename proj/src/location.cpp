#include "dlkv/location.hpp"

namespace dlkv {

AgentSet agents_of(const Arena& ar, TermId x) {
    const TermNode& n = ar.term(x);
    switch (n.kind) {
        case TermKind::Const:
            return AgentSet{};
        case TermKind::BasicVar:
            return AgentSet({ar.voc().var(n.sym).owner});
        case TermKind::IfThenElse:
            return agents_of(ar, n.a)
                .united(agents_of(ar, n.b))
                .united(agents_of(ar, n.cond));
        case TermKind::FunApp: {
            AgentSet acc;
            for (TermId t : n.args) acc = acc.united(agents_of(ar, t));
            return acc;
        }
        case TermKind::Desc:
            return AgentSet(n.group);
        case TermKind::AfterEvent:
            throw UnsupportedExpressionError(
                "extended location is defined for static terms only");
    }
    return AgentSet{};
}

AgentSet agents_of(const Arena& ar, FormulaId f) {
    const FormulaNode& n = ar.formula(f);
    switch (n.kind) {
        case FormulaKind::PredApp: {
            AgentSet acc;
            for (TermId t : n.args) acc = acc.united(agents_of(ar, t));
            return acc;
        }
        case FormulaKind::Not:
            return agents_of(ar, n.f);
        case FormulaKind::And:
            return agents_of(ar, n.f).united(agents_of(ar, n.g));
        case FormulaKind::Know:
            return AgentSet(n.group);
        case FormulaKind::CommonCond: {
            // Union of the supergroup and the body's location; the condition
            // is evaluated only at chain targets shared between related
            // states, so it does not contribute.
            AgentSet acc = agents_of(ar, n.g);
            for (const auto& g : n.sgroup) acc = acc.united(AgentSet(g));
            return acc;
        }
        case FormulaKind::Box:
            throw UnsupportedExpressionError(
                "extended location is defined for static formulas only");
    }
    return AgentSet{};
}

}  // namespace dlkv
