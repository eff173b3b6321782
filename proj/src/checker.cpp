#include "dlkv/checker.hpp"

#include <algorithm>

namespace dlkv {

Checker::PerModel& Checker::cache_for(const ModelPtr& m) {
    PerModel& pm = cache_[m.get()];
    if (!pm.keep_alive) pm.keep_alive = m;
    return pm;
}

const Partition& Checker::group_partition(const ModelPtr& m,
                                          const std::vector<AgentId>& g) {
    PerModel& pm = cache_for(m);
    auto it = pm.group_parts.find(g);
    if (it != pm.group_parts.end()) return it->second;
    Partition acc = m->partition(g.front());
    for (std::size_t i = 1; i < g.size(); ++i)
        acc = Partition::intersect(acc, m->partition(g[i]));
    return pm.group_parts.emplace(g, std::move(acc)).first->second;
}

bool Checker::check_formula(const ModelPtr& m, StateId s, FormulaId f) {
    return extension(m, f).at(s);
}

ValueId Checker::eval_term(const ModelPtr& m, StateId s, TermId x) {
    return term_values(m, x).at(s);
}

const std::vector<bool>& Checker::extension(const ModelPtr& m, FormulaId f) {
    PerModel& pm = cache_for(m);
    auto it = pm.formula_ext.find(f.v);
    if (it != pm.formula_ext.end()) return it->second;
    std::vector<bool> ext = compute_extension(m, f);
    return pm.formula_ext.emplace(f.v, std::move(ext)).first->second;
}

const std::vector<ValueId>& Checker::term_values(const ModelPtr& m, TermId x) {
    PerModel& pm = cache_for(m);
    auto it = pm.term_vals.find(x.v);
    if (it != pm.term_vals.end()) return it->second;
    std::vector<ValueId> vals = compute_values(m, x);
    return pm.term_vals.emplace(x.v, std::move(vals)).first->second;
}

std::vector<StateId> Checker::check_everywhere(const ModelPtr& m, FormulaId f) {
    const std::vector<bool>& ext = extension(m, f);
    std::vector<StateId> out;
    for (std::size_t s = 0; s < ext.size(); ++s)
        if (ext[s]) out.push_back(static_cast<StateId>(s));
    return out;
}

std::vector<ValueId> Checker::compute_values(const ModelPtr& m, TermId x) {
    const std::size_t n = m->state_count();
    const TermNode& node = arena_.term(x);
    std::vector<ValueId> out(n, m->fom().undef_value());

    switch (node.kind) {
        case TermKind::Const: {
            ValueId v = m->fom().constant_value(node.sym);
            std::fill(out.begin(), out.end(), v);
            break;
        }
        case TermKind::BasicVar: {
            for (std::size_t s = 0; s < n; ++s)
                out[s] = m->value(static_cast<StateId>(s), node.sym);
            break;
        }
        case TermKind::IfThenElse: {
            const auto& cond = extension(m, node.cond);
            const auto& then_vals = term_values(m, node.a);
            const auto& else_vals = term_values(m, node.b);
            for (std::size_t s = 0; s < n; ++s)
                out[s] = cond[s] ? then_vals[s] : else_vals[s];
            break;
        }
        case TermKind::FunApp: {
            std::vector<const std::vector<ValueId>*> arg_vals;
            for (TermId t : node.args) arg_vals.push_back(&term_values(m, t));
            std::vector<ValueId> tuple(node.args.size());
            for (std::size_t s = 0; s < n; ++s) {
                for (std::size_t i = 0; i < tuple.size(); ++i)
                    tuple[i] = (*arg_vals[i])[s];
                out[s] = m->fom().apply_function(node.sym, tuple);
            }
            break;
        }
        case TermKind::Desc: {
            // The unique value of the base over condition-satisfying states of
            // the group's block; undefined when there is no witness or no
            // agreement (no witness stays undefined even on one-value domains).
            const auto& base_vals = term_values(m, node.a);
            const auto& cond = extension(m, node.cond);
            const Partition& part = group_partition(m, node.group);
            for (const auto& block : part.blocks()) {
                bool witness = false, unique = true;
                ValueId v = m->fom().undef_value();
                for (StateId w : block) {
                    if (!cond[w]) continue;
                    if (!witness) {
                        witness = true;
                        v = base_vals[w];
                    } else if (base_vals[w] != v) {
                        unique = false;
                        break;
                    }
                }
                ValueId result =
                    (witness && unique) ? v : m->fom().undef_value();
                for (StateId w : block) out[w] = result;
            }
            break;
        }
        case TermKind::AfterEvent: {
            const auto& pre = extension(m, arena_.event_node(node.event).pre_conj);
            auto [child, trace] = update(m, node.event);
            const auto& child_vals = term_values(child, node.a);
            for (std::size_t s = 0; s < n; ++s)
                if (pre[s]) out[s] = child_vals[trace.to_child[s]];
            break;
        }
    }
    return out;
}

std::vector<bool> Checker::compute_extension(const ModelPtr& m, FormulaId f) {
    const std::size_t n = m->state_count();
    const FormulaNode& node = arena_.formula(f);
    std::vector<bool> out(n, false);

    switch (node.kind) {
        case FormulaKind::PredApp: {
            std::vector<const std::vector<ValueId>*> arg_vals;
            for (TermId t : node.args) arg_vals.push_back(&term_values(m, t));
            std::vector<ValueId> tuple(node.args.size());
            for (std::size_t s = 0; s < n; ++s) {
                for (std::size_t i = 0; i < tuple.size(); ++i)
                    tuple[i] = (*arg_vals[i])[s];
                out[s] = m->fom().holds(node.sym, tuple);
            }
            break;
        }
        case FormulaKind::Not: {
            const auto& sub = extension(m, node.f);
            for (std::size_t s = 0; s < n; ++s) out[s] = !sub[s];
            break;
        }
        case FormulaKind::And: {
            const auto& lhs = extension(m, node.f);
            const auto& rhs = extension(m, node.g);
            for (std::size_t s = 0; s < n; ++s) out[s] = lhs[s] && rhs[s];
            break;
        }
        case FormulaKind::Know: {
            const auto& body = extension(m, node.f);
            const Partition& part = group_partition(m, node.group);
            for (const auto& block : part.blocks()) {
                bool all = true;
                for (StateId w : block)
                    if (!body[w]) { all = false; break; }
                for (StateId w : block) out[w] = all;
            }
            break;
        }
        case FormulaKind::CommonCond: {
            const auto& theta = extension(m, node.f);
            const auto& body = extension(m, node.g);
            // Backward closure of body failures: s is bad when ~body(s), or
            // some chain step s ~_A u into a condition state u reaches a bad
            // state.  Worklist marks whole blocks at once.
            std::vector<const Partition*> parts;
            for (const auto& g : node.sgroup) parts.push_back(&group_partition(m, g));
            std::vector<bool> bad(n, false);
            std::vector<StateId> work;
            for (std::size_t s = 0; s < n; ++s)
                if (!body[s]) {
                    bad[s] = true;
                    work.push_back(static_cast<StateId>(s));
                }
            std::vector<std::vector<std::uint8_t>> block_done(parts.size());
            for (std::size_t p = 0; p < parts.size(); ++p)
                block_done[p].assign(parts[p]->block_count(), 0);
            while (!work.empty()) {
                StateId u = work.back();
                work.pop_back();
                if (!theta[u]) continue;  // no chain step may enter u
                for (std::size_t p = 0; p < parts.size(); ++p) {
                    std::uint32_t b = parts[p]->block_of(u);
                    if (block_done[p][b]) continue;
                    block_done[p][b] = 1;
                    for (std::size_t s = 0; s < n; ++s) {
                        if (parts[p]->block_of(s) == b && !bad[s]) {
                            bad[s] = true;
                            work.push_back(static_cast<StateId>(s));
                        }
                    }
                }
            }
            for (std::size_t s = 0; s < n; ++s) out[s] = !bad[s];
            break;
        }
        case FormulaKind::Box: {
            const auto& pre = extension(m, arena_.event_node(node.event).pre_conj);
            auto [child, trace] = update(m, node.event);
            const auto& child_ext = extension(child, node.f);
            for (std::size_t s = 0; s < n; ++s)
                out[s] = !pre[s] || child_ext[trace.to_child[s]];
            break;
        }
    }
    return out;
}

std::pair<ModelPtr, UpdateTrace> Checker::update(const ModelPtr& m, EventId e) {
    PerModel& pm = cache_for(m);
    auto it = pm.updates.find(e.v);
    if (it != pm.updates.end()) return it->second;

    const EventNode& ev = arena_.event_node(e);
    const std::size_t n = m->state_count();
    const Vocabulary& voc = m->voc();

    UpdateTrace trace;
    trace.to_child.assign(n, UpdateTrace::npos);
    const auto& pre = extension(m, ev.pre_conj);
    for (std::size_t s = 0; s < n; ++s) {
        if (pre[s]) {
            trace.to_child[s] = static_cast<std::uint32_t>(trace.survivors.size());
            trace.survivors.push_back(static_cast<StateId>(s));
        }
    }

    // New values are computed in the parent model before restriction.
    std::vector<const std::vector<ValueId>*> post_vals;
    for (VarId v = 0; v < voc.var_count(); ++v)
        post_vals.push_back(&term_values(m, ev.post[v]));

    std::vector<std::string> names;
    names.reserve(trace.survivors.size());
    for (StateId s : trace.survivors) names.push_back(m->state_name(s));

    std::vector<ValueId> valuation(trace.survivors.size() * voc.var_count());
    for (std::size_t i = 0; i < trace.survivors.size(); ++i)
        for (VarId v = 0; v < voc.var_count(); ++v)
            valuation[i * voc.var_count() + v] = (*post_vals[v])[trace.survivors[i]];

    std::vector<Partition> parts;
    parts.reserve(voc.agent_count());
    for (AgentId a = 0; a < voc.agent_count(); ++a)
        parts.push_back(group_partition(m, ev.access[a]).restricted(trace.survivors));

    auto child = std::make_shared<const EpistemicModel>(
        m->fom_ptr(), std::move(names), std::move(parts), std::move(valuation));
    return pm.updates.emplace(e.v, std::make_pair(std::move(child), std::move(trace)))
        .first->second;
}

}  // namespace dlkv
