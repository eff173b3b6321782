#include "dlkv/reducer.hpp"

#include "dlkv/printer.hpp"

namespace dlkv {

namespace {

std::string join(const std::string& path, const std::string& seg) {
    return path.empty() ? seg : path + "." + seg;
}

}  // namespace

// ── Public surface ──────────────────────────────────────────────────────────

FormulaReduction Reducer::reduce_formula(FormulaId f) {
    FormulaReduction out;
    out.certificate.expr = reduce_f(f, "", out.steps);
    out.certificate.verified_static = arena_.is_static(out.certificate.expr);
    return out;
}

TermReduction Reducer::reduce_term(TermId x) {
    TermReduction out;
    out.certificate.expr = reduce_t(x, "", out.steps);
    out.certificate.verified_static = arena_.is_static(out.certificate.expr);
    return out;
}

EventReduction Reducer::reduce_event(EventId e) {
    EventReduction out;
    out.result = reduce_e(e, "", out.steps);
    return out;
}

// ── Structural recursion ────────────────────────────────────────────────────

FormulaId Reducer::reduce_f(FormulaId f, const std::string& path,
                            std::vector<ReductionStep>& steps) {
    if (arena_.is_static(f)) return f;
    const FormulaNode n = arena_.formula(f);  // copy: arena may grow
    switch (n.kind) {
        case FormulaKind::PredApp: {
            std::vector<TermId> args;
            for (std::size_t i = 0; i < n.args.size(); ++i)
                args.push_back(reduce_t(n.args[i], join(path, std::to_string(i)), steps));
            return arena_.pred_app(n.sym, args);
        }
        case FormulaKind::Not:
            return arena_.not_(reduce_f(n.f, join(path, "0"), steps));
        case FormulaKind::And: {
            FormulaId lhs = reduce_f(n.f, join(path, "0"), steps);
            FormulaId rhs = reduce_f(n.g, join(path, "1"), steps);
            return arena_.and_(lhs, rhs);
        }
        case FormulaKind::Know:
            return arena_.know(Group(n.group), reduce_f(n.f, join(path, "0"), steps));
        case FormulaKind::CommonCond: {
            FormulaId cond = reduce_f(n.f, join(path, "0"), steps);
            FormulaId body = reduce_f(n.g, join(path, "1"), steps);
            return arena_.common(arena_.supergroup_of(n.sgroup), cond, body);
        }
        case FormulaKind::Box: {
            FormulaId body = reduce_f(n.f, join(path, "0"), steps);
            EventId ev = reduce_e(n.event, join(path, "e"), steps);
            FormulaId rho = arena_.event_node(ev).pre_conj;
            return push_box(ev, rho, body, path, steps);
        }
    }
    return f;
}

TermId Reducer::reduce_t(TermId x, const std::string& path,
                         std::vector<ReductionStep>& steps) {
    if (arena_.is_static(x)) return x;
    const TermNode n = arena_.term(x);
    switch (n.kind) {
        case TermKind::Const:
        case TermKind::BasicVar:
            return x;
        case TermKind::IfThenElse: {
            TermId then_branch = reduce_t(n.a, join(path, "0"), steps);
            FormulaId cond = reduce_f(n.cond, join(path, "1"), steps);
            TermId else_branch = reduce_t(n.b, join(path, "2"), steps);
            return arena_.if_then_else(then_branch, cond, else_branch);
        }
        case TermKind::FunApp: {
            std::vector<TermId> args;
            for (std::size_t i = 0; i < n.args.size(); ++i)
                args.push_back(reduce_t(n.args[i], join(path, std::to_string(i)), steps));
            return arena_.fun_app(n.sym, args);
        }
        case TermKind::Desc: {
            TermId base = reduce_t(n.a, join(path, "0"), steps);
            FormulaId cond = reduce_f(n.cond, join(path, "1"), steps);
            return arena_.desc(base, Group(n.group), cond);
        }
        case TermKind::AfterEvent: {
            TermId base = reduce_t(n.a, join(path, "0"), steps);
            EventId ev = reduce_e(n.event, join(path, "e"), steps);
            FormulaId rho = arena_.event_node(ev).pre_conj;
            return push_app(ev, rho, base, path, steps);
        }
    }
    return x;
}

EventId Reducer::reduce_e(EventId e, const std::string& path,
                          std::vector<ReductionStep>& steps) {
    if (arena_.is_static(e)) return e;
    const EventNode n = arena_.event_node(e);
    EventDraft draft;
    for (std::size_t i = 0; i < n.pre.size(); ++i)
        draft.preconditions.push_back(
            reduce_f(n.pre[i], join(path, "pre" + std::to_string(i)), steps));
    for (AgentId a = 0; a < arena_.voc().agent_count(); ++a) {
        std::vector<AgentId> extra;
        for (AgentId src : n.access[a])
            if (src != a) extra.push_back(src);
        if (!extra.empty()) draft.access_grants.emplace_back(a, Group(extra));
    }
    for (VarId v = 0; v < arena_.voc().var_count(); ++v) {
        const TermNode& p = arena_.term(n.post[v]);
        if (p.kind == TermKind::BasicVar && p.sym == v) continue;
        draft.posts.emplace_back(
            v, reduce_t(n.post[v],
                        join(path, "post:" + arena_.voc().var(v).name + "@" +
                                       arena_.voc().agent_name(arena_.voc().var(v).owner)),
                        steps));
    }
    return arena_.event(draft);
}

// ── One-step pushes ─────────────────────────────────────────────────────────

TermId Reducer::guard(TermId t, FormulaId rho) {
    return arena_.if_then_else(t, rho, arena_.constant(arena_.voc().undef()));
}

FormulaId Reducer::push_box(EventId e, FormulaId rho, FormulaId body,
                            const std::string& path,
                            std::vector<ReductionStep>& steps) {
    const FormulaNode n = arena_.formula(body);
    const FormulaId redex = arena_.box(e, body);
    switch (n.kind) {
        case FormulaKind::PredApp: {
            std::vector<TermId> dyn_args;
            for (TermId t : n.args) dyn_args.push_back(arena_.after_event(e, t));
            FormulaId after = arena_.implies(rho, arena_.pred_app(n.sym, dyn_args));
            steps.push_back({"atomic-change", path.empty() ? "/" : path, redex, after});
            std::vector<TermId> args;
            for (std::size_t i = 0; i < n.args.size(); ++i)
                args.push_back(push_app(e, rho, n.args[i],
                                        join(path, "0.1.0." + std::to_string(i)), steps));
            return arena_.implies(rho, arena_.pred_app(n.sym, args));
        }
        case FormulaKind::Not: {
            FormulaId after = arena_.implies(rho, arena_.not_(arena_.box(e, n.f)));
            steps.push_back({"partial-functionality", path.empty() ? "/" : path, redex, after});
            FormulaId sub = push_box(e, rho, n.f, join(path, "0.1.0.0"), steps);
            return arena_.implies(rho, arena_.not_(sub));
        }
        case FormulaKind::And: {
            FormulaId after = arena_.and_(arena_.box(e, n.f), arena_.box(e, n.g));
            steps.push_back({"conjunction-distribution", path.empty() ? "/" : path, redex, after});
            FormulaId lhs = push_box(e, rho, n.f, join(path, "0"), steps);
            FormulaId rhs = push_box(e, rho, n.g, join(path, "1"), steps);
            return arena_.and_(lhs, rhs);
        }
        case FormulaKind::Know: {
            Group g = extend_access(arena_, e, Group(n.group));
            FormulaId after =
                arena_.implies(rho, arena_.know(g, arena_.box(e, n.f)));
            steps.push_back({"knowledge-update", path.empty() ? "/" : path, redex, after});
            FormulaId sub = push_box(e, rho, n.f, join(path, "0.1.0.0"), steps);
            return arena_.implies(rho, arena_.know(g, sub));
        }
        case FormulaKind::CommonCond: {
            Supergroup sg =
                extend_access_super(arena_, e, arena_.supergroup_of(n.sgroup));
            FormulaId after = arena_.implies(
                rho, arena_.common(sg, arena_.and_(rho, arena_.box(e, n.f)),
                                   arena_.box(e, n.g)));
            steps.push_back({"common-update", path.empty() ? "/" : path, redex, after});
            FormulaId cond = push_box(e, rho, n.f, join(path, "0.1.0.0.1"), steps);
            FormulaId inner = push_box(e, rho, n.g, join(path, "0.1.0.1"), steps);
            return arena_.implies(rho,
                                  arena_.common(sg, arena_.and_(rho, cond), inner));
        }
        case FormulaKind::Box:
            // Arguments are static by the caller's contract.
            throw UnsupportedExpressionError("push through a dynamic argument");
    }
    return body;
}

TermId Reducer::push_app(EventId e, FormulaId rho, TermId base,
                         const std::string& path,
                         std::vector<ReductionStep>& steps) {
    const TermNode n = arena_.term(base);
    const TermId redex = arena_.after_event(e, base);
    switch (n.kind) {
        case TermKind::Const: {
            TermId after = guard(base, rho);
            steps.push_back({"preserve-constant", path.empty() ? "/" : path, redex, after});
            return after;
        }
        case TermKind::BasicVar: {
            TermId post = arena_.event_node(e).post[n.sym];
            TermId after = guard(post, rho);
            steps.push_back({"change-basic-value", path.empty() ? "/" : path, redex, after});
            return after;
        }
        case TermKind::IfThenElse: {
            TermId after = guard(
                arena_.if_then_else(arena_.after_event(e, n.a),
                                    arena_.and_(rho, arena_.box(e, n.cond)),
                                    arena_.after_event(e, n.b)),
                rho);
            steps.push_back({"change-disjunctive-term", path.empty() ? "/" : path, redex, after});
            TermId then_branch = push_app(e, rho, n.a, join(path, "0.0"), steps);
            FormulaId cond = push_box(e, rho, n.cond, join(path, "0.1.1"), steps);
            TermId else_branch = push_app(e, rho, n.b, join(path, "0.2"), steps);
            return guard(arena_.if_then_else(then_branch, arena_.and_(rho, cond),
                                             else_branch),
                         rho);
        }
        case TermKind::FunApp: {
            std::vector<TermId> dyn_args;
            for (TermId t : n.args) dyn_args.push_back(arena_.after_event(e, t));
            TermId after = guard(arena_.fun_app(n.sym, dyn_args), rho);
            steps.push_back({"change-functional-term", path.empty() ? "/" : path, redex, after});
            std::vector<TermId> args;
            for (std::size_t i = 0; i < n.args.size(); ++i)
                args.push_back(push_app(e, rho, n.args[i],
                                        join(path, "0." + std::to_string(i)), steps));
            return guard(arena_.fun_app(n.sym, args), rho);
        }
        case TermKind::Desc: {
            Group g = extend_access(arena_, e, Group(n.group));
            TermId after = guard(
                arena_.desc(arena_.after_event(e, n.a), g,
                            arena_.and_(rho, arena_.box(e, n.cond))),
                rho);
            steps.push_back({"change-hypothetical-value", path.empty() ? "/" : path, redex, after});
            TermId inner = push_app(e, rho, n.a, join(path, "0.0"), steps);
            FormulaId cond = push_box(e, rho, n.cond, join(path, "0.1.1"), steps);
            return guard(arena_.desc(inner, g, arena_.and_(rho, cond)), rho);
        }
        case TermKind::AfterEvent:
            throw UnsupportedExpressionError("push through a dynamic argument");
    }
    return base;
}

// ── Simplification ──────────────────────────────────────────────────────────

FormulaId simplify(Arena& ar, FormulaId f) {
    const FormulaNode n = ar.formula(f);
    switch (n.kind) {
        case FormulaKind::PredApp: {
            std::vector<TermId> args;
            for (TermId t : n.args) args.push_back(simplify(ar, t));
            return ar.pred_app(n.sym, args);
        }
        case FormulaKind::Not: {
            FormulaId sub = simplify(ar, n.f);
            const FormulaNode& sn = ar.formula(sub);
            if (sn.kind == FormulaKind::Not) return sn.f;
            return ar.not_(sub);
        }
        case FormulaKind::And: {
            FormulaId lhs = simplify(ar, n.f);
            FormulaId rhs = simplify(ar, n.g);
            if (lhs == ar.bottom() || rhs == ar.bottom()) return ar.bottom();
            if (lhs == ar.top()) return rhs;
            if (rhs == ar.top()) return lhs;
            return ar.and_(lhs, rhs);
        }
        case FormulaKind::Know:
            return ar.know(Group(n.group), simplify(ar, n.f));
        case FormulaKind::CommonCond:
            return ar.common(ar.supergroup_of(n.sgroup), simplify(ar, n.f),
                             simplify(ar, n.g));
        case FormulaKind::Box:
            return ar.box(n.event, simplify(ar, n.f));
    }
    return f;
}

TermId simplify(Arena& ar, TermId x) {
    const TermNode n = ar.term(x);
    switch (n.kind) {
        case TermKind::Const:
        case TermKind::BasicVar:
            return x;
        case TermKind::IfThenElse: {
            FormulaId cond = simplify(ar, n.cond);
            TermId then_branch = simplify(ar, n.a);
            TermId else_branch = simplify(ar, n.b);
            if (cond == ar.top()) return then_branch;
            if (cond == ar.bottom()) return else_branch;
            return ar.if_then_else(then_branch, cond, else_branch);
        }
        case TermKind::FunApp: {
            std::vector<TermId> args;
            for (TermId t : n.args) args.push_back(simplify(ar, t));
            return ar.fun_app(n.sym, args);
        }
        case TermKind::Desc:
            return ar.desc(simplify(ar, n.a), Group(n.group), simplify(ar, n.cond));
        case TermKind::AfterEvent:
            return ar.after_event(n.event, simplify(ar, n.a));
    }
    return x;
}

std::string format_step(const Arena& ar, const ReductionStep& step) {
    auto render = [&](const ExprRef& e) {
        if (std::holds_alternative<TermId>(e)) return print(ar, std::get<TermId>(e));
        return print(ar, std::get<FormulaId>(e));
    };
    return step.rule + " @ " + (step.path.empty() ? "/" : step.path) + " : " +
           render(step.before) + " ==> " + render(step.after);
}

}  // namespace dlkv
