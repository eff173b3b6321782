// ============================================================================
// dlkv/ast.hpp — interned ASTs for terms, formulas and events
// ============================================================================
//
// Design notes:
//
//   Terms, formulas and events form three mutually recursive node spaces,
//   each stored in an interned arena.  Two structurally identical expressions
//   share the same id, so structural equality is id equality and sets of
//   formulas are sorted id vectors.
//
//   Only the primitive grammar is ever stored:
//     term     x ::= c | v | if-then-else | F(xs) | desc | after-event
//     formula  f ::= P(xs) | ~f | f & f | K_A f | C_AA^f f | [e] f
//   Every derived form (top, bot, ->, v, <->, defined/undefined, conditional
//   knowledge, knowledge of values, diamonds, flat common knowledge, tests)
//   is a constructor that immediately builds its primitive expansion; that
//   expansion is the normalize operation, and it is idempotent by
//   construction.
//
//   Events are triples (preconditions, access map, postcondition map); the
//   access map is total over the vocabulary's agents and the postcondition
//   map is total over its basic variables (identity by default).  The
//   conjunction of the precondition set is computed once at intern time.
//
// ============================================================================

#ifndef DLKV_AST_HPP
#define DLKV_AST_HPP

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "dlkv/vocabulary.hpp"

namespace dlkv {

// ── Ids ─────────────────────────────────────────────────────────────────────

struct TermId {
    std::uint32_t v = UINT32_MAX;
    bool valid() const noexcept { return v != UINT32_MAX; }
    auto operator<=>(const TermId&) const = default;
};

struct FormulaId {
    std::uint32_t v = UINT32_MAX;
    bool valid() const noexcept { return v != UINT32_MAX; }
    auto operator<=>(const FormulaId&) const = default;
};

struct EventId {
    std::uint32_t v = UINT32_MAX;
    bool valid() const noexcept { return v != UINT32_MAX; }
    auto operator<=>(const EventId&) const = default;
};

// ── Nodes ───────────────────────────────────────────────────────────────────

enum class TermKind : std::uint8_t {
    Const,       // sym = ConstId
    BasicVar,    // sym = VarId
    IfThenElse,  // a = then-branch, cond, b = else-branch
    FunApp,      // sym = FunId, args
    Desc,        // a = base, group, cond       (hypothetical value x_A^phi)
    AfterEvent,  // event, a = base             (e(x))
};

struct TermNode {
    TermKind kind{};
    std::uint32_t sym = 0;
    TermId a, b;
    FormulaId cond;
    EventId event;
    std::vector<AgentId> group;    // Desc
    std::vector<TermId> args;      // FunApp

    bool operator==(const TermNode&) const = default;
};

enum class FormulaKind : std::uint8_t {
    PredApp,     // sym = PredId, args
    Not,         // f
    And,         // f, g
    Know,        // group, f                     (K_A f)
    CommonCond,  // sgroups, f = condition, g = body  (C_AA^f g)
    Box,         // event, f                     ([e] f)
};

struct FormulaNode {
    FormulaKind kind{};
    std::uint32_t sym = 0;
    FormulaId f, g;
    EventId event;
    std::vector<AgentId> group;               // Know
    std::vector<std::vector<AgentId>> sgroup; // CommonCond
    std::vector<TermId> args;                 // PredApp

    bool operator==(const FormulaNode&) const = default;
};

struct EventNode {
    std::vector<FormulaId> pre;     // sorted, unique (the set Phi)
    std::vector<std::vector<AgentId>> access;  // per agent, sorted groups
    std::vector<TermId> post;       // per basic variable
    FormulaId pre_conj;             // cached /\Phi (top when empty)

    bool same_shape(const EventNode& o) const {
        return pre == o.pre && access == o.access && post == o.post;
    }
};

// ── Event drafts ────────────────────────────────────────────────────────────
// Mutable description used to assemble an event before interning.  Fields
// left empty default to the trivial component.

struct EventDraft {
    std::vector<FormulaId> preconditions;
    std::vector<std::pair<AgentId, Group>> access_grants;  // merged with {a}
    std::vector<std::pair<VarId, TermId>> posts;
    // When set, the expanded "owner knows the assigned value" formula is
    // added to the preconditions for every non-identity post that lacks it.
    bool insert_required_knowledge = false;
};

// ── Violations (event well-formedness) ──────────────────────────────────────

struct EventViolation {
    std::string message;
};

// ── Arena ───────────────────────────────────────────────────────────────────

class Arena {
public:
    explicit Arena(Vocabulary voc);

    const Vocabulary& voc() const noexcept { return *voc_; }
    std::shared_ptr<const Vocabulary> voc_ptr() const noexcept { return voc_; }

    // ── Primitive term constructors ─────────────────────────────────────
    TermId constant(ConstId c);
    TermId constant(std::string_view name);
    TermId basic_var(VarId v);
    TermId basic_var(std::string_view qualified);
    TermId if_then_else(TermId then_branch, FormulaId cond, TermId else_branch);
    TermId fun_app(FunId f, std::span<const TermId> args);
    TermId desc(TermId base, const Group& group, FormulaId cond);
    TermId after_event(EventId e, TermId base);

    // ── Primitive formula constructors ──────────────────────────────────
    FormulaId pred_app(PredId p, std::span<const TermId> args);
    FormulaId eq(TermId x, TermId y);
    FormulaId not_(FormulaId f);
    FormulaId and_(FormulaId f, FormulaId g);
    FormulaId know(const Group& g, FormulaId body);
    FormulaId common(const Supergroup& sg, FormulaId cond, FormulaId body);
    FormulaId box(EventId e, FormulaId body);

    // ── Derived forms (normalize: expanded immediately) ─────────────────
    FormulaId top();                               // undef = undef
    FormulaId bottom();                            // ~top
    FormulaId implies(FormulaId f, FormulaId g);   // ~(f & ~g)
    FormulaId or_(FormulaId f, FormulaId g);       // ~(~f & ~g)
    FormulaId iff(FormulaId f, FormulaId g);       // (f->g) & (g->f)
    FormulaId conj(std::span<const FormulaId> fs); // left fold; top if empty
    FormulaId undefined(TermId x);                 // x = undef
    FormulaId defined(TermId x);                   // ~(x = undef)
    FormulaId all_defined(std::span<const TermId> xs);
    TermId test(FormulaId f);                      // 1 if f else 0
    TermId hypothetical(TermId x, const Group& g, FormulaId theta);  // desc

    FormulaId know_cond(const Group& g, FormulaId theta, FormulaId body);
    FormulaId knows_value_cond(const Group& g, FormulaId theta, TermId x);
    FormulaId knows_value(const Group& g, TermId x);
    FormulaId knows_values_cond(const Group& g, FormulaId theta,
                                std::span<const TermId> xs);
    FormulaId knows_values(const Group& g, std::span<const TermId> xs);
    FormulaId diamond_know(const Group& g, FormulaId body);
    FormulaId diamond_know_cond(const Group& g, FormulaId theta, FormulaId body);
    FormulaId diamond_common(const Supergroup& sg, FormulaId theta, FormulaId body);
    FormulaId diamond_box(EventId e, FormulaId body);
    FormulaId common_plain(const Supergroup& sg, FormulaId body);   // cond = top
    FormulaId common_flat(const Group& flat, FormulaId cond, FormulaId body);
    FormulaId common_flat_plain(const Group& flat, FormulaId body);
    FormulaId common_knows_values(const Supergroup& sg, std::span<const TermId> xs);
    FormulaId common_knows_values_flat(const Group& flat, std::span<const TermId> xs);

    // Single negation: body of a negation, else the negation.
    FormulaId single_neg(FormulaId f);

    // ── Events ──────────────────────────────────────────────────────────
    EventId event(const EventDraft& draft);
    EventId trivial_event();
    EventId announcement(FormulaId f);
    EventId grant_access(AgentId who, const AgentSet& sources);

    // Expanded "owner a knows value of term t": K_{a}(top -> (t = t_{a}^top)).
    FormulaId required_post_knowledge(AgentId owner, TermId t);

    // ── Accessors ───────────────────────────────────────────────────────
    const TermNode& term(TermId id) const { return terms_.at(id.v); }
    const FormulaNode& formula(FormulaId id) const { return formulas_.at(id.v); }
    const EventNode& event_node(EventId id) const { return events_.at(id.v); }
    std::size_t term_count() const noexcept { return terms_.size(); }
    std::size_t formula_count() const noexcept { return formulas_.size(); }
    std::size_t event_count() const noexcept { return events_.size(); }

    Group group_of(const std::vector<AgentId>& members) const {
        return Group(members);
    }
    Supergroup supergroup_of(const std::vector<std::vector<AgentId>>& sg) const;

    // ── Structural queries ──────────────────────────────────────────────
    bool is_static(TermId x) const;
    bool is_static(FormulaId f) const;
    bool is_static(EventId e) const;
    std::size_t node_size(TermId x) const;    // node count, events included
    std::size_t node_size(FormulaId f) const;
    std::size_t node_size(EventId e) const;

private:
    TermId intern_term(TermNode n);
    FormulaId intern_formula(FormulaNode n);
    EventId intern_event(EventNode n);

    std::shared_ptr<const Vocabulary> voc_;
    std::vector<TermNode> terms_;
    std::vector<FormulaNode> formulas_;
    std::vector<EventNode> events_;
    std::unordered_map<std::size_t, std::vector<TermId>> term_buckets_;
    std::unordered_map<std::size_t, std::vector<FormulaId>> formula_buckets_;
    std::unordered_map<std::size_t, std::vector<EventId>> event_buckets_;
    mutable std::vector<std::uint8_t> term_static_, formula_static_, event_static_;
    mutable std::vector<std::size_t> term_size_, formula_size_, event_size_;
};

// ── Core operations on events ───────────────────────────────────────────────

// e(A) and e[AA]: pointwise union of the access map over a group / supergroup.
Group extend_access(const Arena& ar, EventId e, const Group& a);
Supergroup extend_access_super(const Arena& ar, EventId e, const Supergroup& sg);

// Reports every violated well-formedness constraint of an event: an agent
// missing from her own access set, or a reassigned variable whose owner's
// knowledge of the new value is not among the preconditions.  Takes the
// arena mutably because the expected knowledge formulas are interned on
// the fly.
std::vector<EventViolation> validate_event(Arena& ar, EventId e);

}  // namespace dlkv

#endif  // DLKV_AST_HPP
