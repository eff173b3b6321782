#include "dlkv/ast.hpp"

#include <algorithm>
#include <functional>

namespace dlkv {

namespace {

void hash_mix(std::size_t& h, std::size_t v) {
    h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
}

std::size_t hash_term_node(const TermNode& n) {
    std::size_t h = static_cast<std::size_t>(n.kind);
    hash_mix(h, n.sym);
    hash_mix(h, n.a.v);
    hash_mix(h, n.b.v);
    hash_mix(h, n.cond.v);
    hash_mix(h, n.event.v);
    for (AgentId a : n.group) hash_mix(h, a);
    for (TermId t : n.args) hash_mix(h, t.v);
    return h;
}

std::size_t hash_formula_node(const FormulaNode& n) {
    std::size_t h = static_cast<std::size_t>(n.kind) + 0x517cc1b7;
    hash_mix(h, n.sym);
    hash_mix(h, n.f.v);
    hash_mix(h, n.g.v);
    hash_mix(h, n.event.v);
    for (AgentId a : n.group) hash_mix(h, a);
    for (const auto& g : n.sgroup) {
        hash_mix(h, g.size());
        for (AgentId a : g) hash_mix(h, a);
    }
    for (TermId t : n.args) hash_mix(h, t.v);
    return h;
}

std::size_t hash_event_node(const EventNode& n) {
    std::size_t h = 0x2545f491;
    for (FormulaId f : n.pre) hash_mix(h, f.v);
    for (const auto& g : n.access) {
        hash_mix(h, g.size());
        for (AgentId a : g) hash_mix(h, a);
    }
    for (TermId t : n.post) hash_mix(h, t.v);
    return h;
}

std::vector<AgentId> sorted_members(const Group& g) { return g.members(); }

}  // namespace

Arena::Arena(Vocabulary voc)
    : voc_(std::make_shared<const Vocabulary>(std::move(voc))) {}

// ── Interning ───────────────────────────────────────────────────────────────

TermId Arena::intern_term(TermNode n) {
    std::size_t h = hash_term_node(n);
    auto& bucket = term_buckets_[h];
    for (TermId id : bucket)
        if (terms_[id.v] == n) return id;
    terms_.push_back(std::move(n));
    term_static_.push_back(2);  // unknown
    term_size_.push_back(0);
    TermId id{static_cast<std::uint32_t>(terms_.size() - 1)};
    bucket.push_back(id);
    return id;
}

FormulaId Arena::intern_formula(FormulaNode n) {
    std::size_t h = hash_formula_node(n);
    auto& bucket = formula_buckets_[h];
    for (FormulaId id : bucket)
        if (formulas_[id.v] == n) return id;
    formulas_.push_back(std::move(n));
    formula_static_.push_back(2);
    formula_size_.push_back(0);
    FormulaId id{static_cast<std::uint32_t>(formulas_.size() - 1)};
    bucket.push_back(id);
    return id;
}

EventId Arena::intern_event(EventNode n) {
    std::size_t h = hash_event_node(n);
    auto& bucket = event_buckets_[h];
    for (EventId id : bucket)
        if (events_[id.v].same_shape(n)) return id;
    events_.push_back(std::move(n));
    event_static_.push_back(2);
    event_size_.push_back(0);
    EventId id{static_cast<std::uint32_t>(events_.size() - 1)};
    bucket.push_back(id);
    return id;
}

// ── Primitive terms ─────────────────────────────────────────────────────────

TermId Arena::constant(ConstId c) {
    if (c >= voc().constant_count()) throw VocabularyError("constant id out of range");
    TermNode n;
    n.kind = TermKind::Const;
    n.sym = c;
    return intern_term(std::move(n));
}

TermId Arena::constant(std::string_view name) {
    return constant(voc().require_constant(name));
}

TermId Arena::basic_var(VarId v) {
    if (v >= voc().var_count()) throw VocabularyError("variable id out of range");
    TermNode n;
    n.kind = TermKind::BasicVar;
    n.sym = v;
    return intern_term(std::move(n));
}

TermId Arena::basic_var(std::string_view qualified) {
    if (auto v = voc().find_var(qualified)) return basic_var(*v);
    throw VocabularyError("unknown basic variable: " + std::string(qualified));
}

TermId Arena::if_then_else(TermId then_branch, FormulaId cond, TermId else_branch) {
    TermNode n;
    n.kind = TermKind::IfThenElse;
    n.a = then_branch;
    n.b = else_branch;
    n.cond = cond;
    return intern_term(std::move(n));
}

TermId Arena::fun_app(FunId f, std::span<const TermId> args) {
    if (f >= voc().function_count()) throw VocabularyError("function id out of range");
    if (voc().function(f).arity != args.size())
        throw VocabularyError("arity mismatch for function " + voc().function(f).name);
    TermNode n;
    n.kind = TermKind::FunApp;
    n.sym = f;
    n.args.assign(args.begin(), args.end());
    return intern_term(std::move(n));
}

TermId Arena::desc(TermId base, const Group& group, FormulaId cond) {
    voc().check_group(group);
    TermNode n;
    n.kind = TermKind::Desc;
    n.a = base;
    n.cond = cond;
    n.group = sorted_members(group);
    return intern_term(std::move(n));
}

TermId Arena::after_event(EventId e, TermId base) {
    TermNode n;
    n.kind = TermKind::AfterEvent;
    n.event = e;
    n.a = base;
    return intern_term(std::move(n));
}

// ── Primitive formulas ──────────────────────────────────────────────────────

FormulaId Arena::pred_app(PredId p, std::span<const TermId> args) {
    if (p >= voc().predicate_count()) throw VocabularyError("predicate id out of range");
    if (voc().predicate(p).arity != args.size())
        throw VocabularyError("arity mismatch for predicate " + voc().predicate(p).name);
    FormulaNode n;
    n.kind = FormulaKind::PredApp;
    n.sym = p;
    n.args.assign(args.begin(), args.end());
    return intern_formula(std::move(n));
}

FormulaId Arena::eq(TermId x, TermId y) {
    const TermId args[] = {x, y};
    return pred_app(voc().eq(), args);
}

FormulaId Arena::not_(FormulaId f) {
    FormulaNode n;
    n.kind = FormulaKind::Not;
    n.f = f;
    return intern_formula(std::move(n));
}

FormulaId Arena::and_(FormulaId f, FormulaId g) {
    FormulaNode n;
    n.kind = FormulaKind::And;
    n.f = f;
    n.g = g;
    return intern_formula(std::move(n));
}

FormulaId Arena::know(const Group& g, FormulaId body) {
    voc().check_group(g);
    FormulaNode n;
    n.kind = FormulaKind::Know;
    n.f = body;
    n.group = sorted_members(g);
    return intern_formula(std::move(n));
}

FormulaId Arena::common(const Supergroup& sg, FormulaId cond, FormulaId body) {
    voc().check_supergroup(sg);
    FormulaNode n;
    n.kind = FormulaKind::CommonCond;
    n.f = cond;
    n.g = body;
    for (const Group& g : sg.groups()) n.sgroup.push_back(g.members());
    return intern_formula(std::move(n));
}

FormulaId Arena::box(EventId e, FormulaId body) {
    FormulaNode n;
    n.kind = FormulaKind::Box;
    n.event = e;
    n.f = body;
    return intern_formula(std::move(n));
}

// ── Derived forms ───────────────────────────────────────────────────────────

FormulaId Arena::top() {
    TermId u = constant(voc().undef());
    return eq(u, u);
}

FormulaId Arena::bottom() { return not_(top()); }

FormulaId Arena::implies(FormulaId f, FormulaId g) {
    return not_(and_(f, not_(g)));
}

FormulaId Arena::or_(FormulaId f, FormulaId g) {
    return not_(and_(not_(f), not_(g)));
}

FormulaId Arena::iff(FormulaId f, FormulaId g) {
    return and_(implies(f, g), implies(g, f));
}

FormulaId Arena::conj(std::span<const FormulaId> fs) {
    if (fs.empty()) return top();
    FormulaId acc = fs[0];
    for (std::size_t i = 1; i < fs.size(); ++i) acc = and_(acc, fs[i]);
    return acc;
}

FormulaId Arena::undefined(TermId x) { return eq(x, constant(voc().undef())); }

FormulaId Arena::defined(TermId x) { return not_(undefined(x)); }

FormulaId Arena::all_defined(std::span<const TermId> xs) {
    if (xs.empty()) return top();
    FormulaId acc = defined(xs[0]);
    for (std::size_t i = 1; i < xs.size(); ++i) acc = and_(acc, defined(xs[i]));
    return acc;
}

TermId Arena::test(FormulaId f) {
    return if_then_else(constant(voc().one()), f, constant(voc().zero()));
}

TermId Arena::hypothetical(TermId x, const Group& g, FormulaId theta) {
    return desc(x, g, theta);
}

FormulaId Arena::know_cond(const Group& g, FormulaId theta, FormulaId body) {
    return know(g, implies(theta, body));
}

FormulaId Arena::knows_value_cond(const Group& g, FormulaId theta, TermId x) {
    return know_cond(g, theta, eq(x, desc(x, g, theta)));
}

FormulaId Arena::knows_value(const Group& g, TermId x) {
    return knows_value_cond(g, top(), x);
}

FormulaId Arena::knows_values_cond(const Group& g, FormulaId theta,
                                   std::span<const TermId> xs) {
    if (xs.empty()) return top();
    FormulaId acc = knows_value_cond(g, theta, xs[0]);
    for (std::size_t i = 1; i < xs.size(); ++i)
        acc = and_(acc, knows_value_cond(g, theta, xs[i]));
    return acc;
}

FormulaId Arena::knows_values(const Group& g, std::span<const TermId> xs) {
    return knows_values_cond(g, top(), xs);
}

FormulaId Arena::diamond_know(const Group& g, FormulaId body) {
    return not_(know(g, not_(body)));
}

FormulaId Arena::diamond_know_cond(const Group& g, FormulaId theta, FormulaId body) {
    return not_(know_cond(g, theta, not_(body)));
}

FormulaId Arena::diamond_common(const Supergroup& sg, FormulaId theta, FormulaId body) {
    return not_(common(sg, theta, not_(body)));
}

FormulaId Arena::diamond_box(EventId e, FormulaId body) {
    return not_(box(e, not_(body)));
}

FormulaId Arena::common_plain(const Supergroup& sg, FormulaId body) {
    return common(sg, top(), body);
}

FormulaId Arena::common_flat(const Group& flat, FormulaId cond, FormulaId body) {
    return common(Supergroup::singletons(flat), cond, body);
}

FormulaId Arena::common_flat_plain(const Group& flat, FormulaId body) {
    return common_flat(flat, top(), body);
}

FormulaId Arena::common_knows_values(const Supergroup& sg, std::span<const TermId> xs) {
    std::vector<FormulaId> parts;
    for (const Group& g : sg.groups()) parts.push_back(knows_values(g, xs));
    return common_plain(sg, conj(parts));
}

FormulaId Arena::common_knows_values_flat(const Group& flat,
                                          std::span<const TermId> xs) {
    return common_knows_values(Supergroup::singletons(flat), xs);
}

FormulaId Arena::single_neg(FormulaId f) {
    const FormulaNode& n = formula(f);
    if (n.kind == FormulaKind::Not) return n.f;
    return not_(f);
}

// ── Events ──────────────────────────────────────────────────────────────────

FormulaId Arena::required_post_knowledge(AgentId owner, TermId t) {
    return knows_value(Group::singleton(owner), t);
}

EventId Arena::event(const EventDraft& draft) {
    const std::size_t n_agents = voc().agent_count();
    const std::size_t n_vars = voc().var_count();

    EventNode node;
    node.access.resize(n_agents);
    for (std::size_t a = 0; a < n_agents; ++a)
        node.access[a] = {static_cast<AgentId>(a)};
    for (const auto& [who, sources] : draft.access_grants) {
        if (who >= n_agents) throw VocabularyError("access grant for unknown agent");
        voc().check_group(sources);
        AgentSet merged =
            AgentSet(node.access[who]).united(sources.agents());
        node.access[who] = merged.members();
    }

    node.post.resize(n_vars);
    for (std::size_t v = 0; v < n_vars; ++v)
        node.post[v] = basic_var(static_cast<VarId>(v));
    for (const auto& [v, t] : draft.posts) {
        if (v >= n_vars) throw VocabularyError("postcondition for unknown variable");
        node.post[v] = t;
    }

    node.pre = draft.preconditions;
    if (draft.insert_required_knowledge) {
        for (std::size_t v = 0; v < n_vars; ++v) {
            TermId t = node.post[v];
            if (t == basic_var(static_cast<VarId>(v))) continue;
            FormulaId k = required_post_knowledge(voc().var(static_cast<VarId>(v)).owner, t);
            if (std::find(node.pre.begin(), node.pre.end(), k) == node.pre.end())
                node.pre.push_back(k);
        }
    }
    std::sort(node.pre.begin(), node.pre.end());
    node.pre.erase(std::unique(node.pre.begin(), node.pre.end()), node.pre.end());

    node.pre_conj = conj(node.pre);
    return intern_event(std::move(node));
}

EventId Arena::trivial_event() { return event(EventDraft{}); }

EventId Arena::announcement(FormulaId f) {
    EventDraft d;
    d.preconditions = {f};
    return event(d);
}

EventId Arena::grant_access(AgentId who, const AgentSet& sources) {
    EventDraft d;
    d.access_grants.emplace_back(who, Group(sources));
    return event(d);
}

Supergroup Arena::supergroup_of(const std::vector<std::vector<AgentId>>& sg) const {
    std::vector<Group> gs;
    gs.reserve(sg.size());
    for (const auto& g : sg) gs.emplace_back(g);
    return Supergroup(std::move(gs));
}

// ── Structural queries ──────────────────────────────────────────────────────

bool Arena::is_static(TermId x) const {
    std::uint8_t& memo = term_static_[x.v];
    if (memo != 2) return memo != 0;
    const TermNode& n = term(x);
    bool s = true;
    switch (n.kind) {
        case TermKind::Const:
        case TermKind::BasicVar: break;
        case TermKind::IfThenElse:
            s = is_static(n.a) && is_static(n.cond) && is_static(n.b);
            break;
        case TermKind::FunApp:
            for (TermId t : n.args) s = s && is_static(t);
            break;
        case TermKind::Desc:
            s = is_static(n.a) && is_static(n.cond);
            break;
        case TermKind::AfterEvent:
            s = false;
            break;
    }
    memo = s ? 1 : 0;
    return s;
}

bool Arena::is_static(FormulaId f) const {
    std::uint8_t& memo = formula_static_[f.v];
    if (memo != 2) return memo != 0;
    const FormulaNode& n = formula(f);
    bool s = true;
    switch (n.kind) {
        case FormulaKind::PredApp:
            for (TermId t : n.args) s = s && is_static(t);
            break;
        case FormulaKind::Not: s = is_static(n.f); break;
        case FormulaKind::And: s = is_static(n.f) && is_static(n.g); break;
        case FormulaKind::Know: s = is_static(n.f); break;
        case FormulaKind::CommonCond: s = is_static(n.f) && is_static(n.g); break;
        case FormulaKind::Box: s = false; break;
    }
    memo = s ? 1 : 0;
    return s;
}

bool Arena::is_static(EventId e) const {
    std::uint8_t& memo = event_static_[e.v];
    if (memo != 2) return memo != 0;
    const EventNode& n = event_node(e);
    bool s = true;
    for (FormulaId f : n.pre) s = s && is_static(f);
    for (std::size_t v = 0; v < n.post.size(); ++v) s = s && is_static(n.post[v]);
    memo = s ? 1 : 0;
    return s;
}

std::size_t Arena::node_size(TermId x) const {
    std::size_t& memo = term_size_[x.v];
    if (memo != 0) return memo;
    const TermNode& n = term(x);
    std::size_t s = 1;
    switch (n.kind) {
        case TermKind::Const:
        case TermKind::BasicVar: break;
        case TermKind::IfThenElse:
            s += node_size(n.a) + node_size(n.cond) + node_size(n.b);
            break;
        case TermKind::FunApp:
            for (TermId t : n.args) s += node_size(t);
            break;
        case TermKind::Desc:
            s += node_size(n.a) + node_size(n.cond);
            break;
        case TermKind::AfterEvent:
            s += node_size(n.event) + node_size(n.a);
            break;
    }
    memo = s;
    return s;
}

std::size_t Arena::node_size(FormulaId f) const {
    std::size_t& memo = formula_size_[f.v];
    if (memo != 0) return memo;
    const FormulaNode& n = formula(f);
    std::size_t s = 1;
    switch (n.kind) {
        case FormulaKind::PredApp:
            for (TermId t : n.args) s += node_size(t);
            break;
        case FormulaKind::Not: s += node_size(n.f); break;
        case FormulaKind::And: s += node_size(n.f) + node_size(n.g); break;
        case FormulaKind::Know: s += node_size(n.f); break;
        case FormulaKind::CommonCond: s += node_size(n.f) + node_size(n.g); break;
        case FormulaKind::Box: s += node_size(n.event) + node_size(n.f); break;
    }
    memo = s;
    return s;
}

std::size_t Arena::node_size(EventId e) const {
    std::size_t& memo = event_size_[e.v];
    if (memo != 0) return memo;
    const EventNode& n = event_node(e);
    std::size_t s = 1;
    for (FormulaId f : n.pre) s += node_size(f);
    for (std::size_t v = 0; v < n.post.size(); ++v) {
        const TermNode& p = term(n.post[v]);
        if (p.kind == TermKind::BasicVar && p.sym == v) continue;  // identity
        s += node_size(n.post[v]);
    }
    memo = s;
    return s;
}

// ── Event operations ────────────────────────────────────────────────────────

Group extend_access(const Arena& ar, EventId e, const Group& a) {
    ar.voc().check_group(a);
    const EventNode& n = ar.event_node(e);
    AgentSet acc;
    for (AgentId agent : a.members())
        acc = acc.united(AgentSet(n.access[agent]));
    return Group(acc);
}

Supergroup extend_access_super(const Arena& ar, EventId e, const Supergroup& sg) {
    std::vector<Group> gs;
    gs.reserve(sg.size());
    for (const Group& g : sg.groups()) gs.push_back(extend_access(ar, e, g));
    return Supergroup(std::move(gs));
}

std::vector<EventViolation> validate_event(Arena& ar, EventId e) {
    std::vector<EventViolation> out;
    const Vocabulary& voc = ar.voc();
    for (AgentId a = 0; a < voc.agent_count(); ++a) {
        const auto& acc = ar.event_node(e).access[a];
        if (!std::binary_search(acc.begin(), acc.end(), a))
            out.push_back({voc.agent_name(a) + " not in own access set"});
    }
    for (VarId v = 0; v < voc.var_count(); ++v) {
        TermId t = ar.event_node(e).post[v];
        if (ar.term(t).kind == TermKind::BasicVar && ar.term(t).sym == v)
            continue;  // identity post needs no announced knowledge
        AgentId owner = voc.var(v).owner;
        // Accept either the mechanical expansion of K_a(post) or its bare
        // equality-under-knowledge form.
        FormulaId expanded = ar.required_post_knowledge(owner, t);
        FormulaId bare = ar.know(Group::singleton(owner),
                                 ar.eq(t, ar.desc(t, Group::singleton(owner), ar.top())));
        bool found = false;
        for (FormulaId f : ar.event_node(e).pre)
            if (f == expanded || f == bare) { found = true; break; }
        if (!found)
            out.push_back({"owner " + voc.agent_name(owner) +
                           " does not announce knowledge of new value of " +
                           voc.var(v).name + "@" + voc.agent_name(owner)});
    }
    return out;
}

}  // namespace dlkv
