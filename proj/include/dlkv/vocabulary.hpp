// ============================================================================
// dlkv/vocabulary.hpp — vocabularies, agent sets, groups and supergroups
// ============================================================================
//
// A Vocabulary fixes the symbol universe for one engine instance: agents,
// constants (always containing the distinguished 0, 1 and undef), located
// basic variables, predicates (always containing the binary eq) and function
// symbols.  Symbols are referred to by dense integer ids everywhere else.
//
// ============================================================================

#ifndef DLKV_VOCABULARY_HPP
#define DLKV_VOCABULARY_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace dlkv {

using AgentId = std::uint32_t;
using ConstId = std::uint32_t;
using VarId = std::uint32_t;
using PredId = std::uint32_t;
using FunId = std::uint32_t;

// ── Errors ──────────────────────────────────────────────────────────────────

// Unknown symbol, arity mismatch, owner not declared, and the like.
struct VocabularyError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A dynamic operator appeared where only static material is allowed.
struct UnsupportedExpressionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Configurable cap exceeded (closure growth, type enumeration).
struct ResourceLimitError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ── AgentSet ────────────────────────────────────────────────────────────────
// A finite, possibly empty set of agents, kept sorted and duplicate-free.
// Used for extended locations; Group adds the non-emptiness invariant.

class AgentSet {
public:
    AgentSet() = default;
    explicit AgentSet(std::vector<AgentId> members);

    bool contains(AgentId a) const;
    bool subset_of(const AgentSet& other) const;
    AgentSet united(const AgentSet& other) const;
    bool empty() const noexcept { return members_.empty(); }
    std::size_t size() const noexcept { return members_.size(); }

    const std::vector<AgentId>& members() const noexcept { return members_; }
    auto begin() const noexcept { return members_.begin(); }
    auto end() const noexcept { return members_.end(); }

    bool operator==(const AgentSet&) const = default;
    auto operator<=>(const AgentSet&) const = default;

private:
    std::vector<AgentId> members_;  // sorted, unique
};

// ── Group ───────────────────────────────────────────────────────────────────
// A finite non-empty set of agents.

class Group {
public:
    explicit Group(std::vector<AgentId> members) : set_(std::move(members)) {
        if (set_.empty()) throw VocabularyError("group must be non-empty");
    }
    explicit Group(AgentSet set) : set_(std::move(set)) {
        if (set_.empty()) throw VocabularyError("group must be non-empty");
    }
    static Group singleton(AgentId a) { return Group(std::vector<AgentId>{a}); }

    const AgentSet& agents() const noexcept { return set_; }
    const std::vector<AgentId>& members() const noexcept { return set_.members(); }
    bool contains(AgentId a) const { return set_.contains(a); }
    bool subset_of(const Group& other) const { return set_.subset_of(other.set_); }
    Group united(const Group& other) const { return Group(set_.united(other.set_)); }
    std::size_t size() const noexcept { return set_.size(); }

    bool operator==(const Group&) const = default;
    auto operator<=>(const Group&) const = default;

private:
    AgentSet set_;
};

// ── Supergroup ──────────────────────────────────────────────────────────────
// A finite non-empty set of groups.

class Supergroup {
public:
    explicit Supergroup(std::vector<Group> groups);
    static Supergroup singletons(const Group& flat);  // {{a} : a in flat}

    const std::vector<Group>& groups() const noexcept { return groups_; }
    std::size_t size() const noexcept { return groups_.size(); }
    AgentSet all_agents() const;

    bool operator==(const Supergroup&) const = default;
    auto operator<=>(const Supergroup&) const = default;

private:
    std::vector<Group> groups_;  // sorted, unique
};

// ── Vocabulary ──────────────────────────────────────────────────────────────

struct BasicVarDecl {
    std::string name;
    AgentId owner;
};

struct PredDecl {
    std::string name;
    std::uint32_t arity;
};

struct FunDecl {
    std::string name;
    std::uint32_t arity;
};

class Vocabulary {
public:
    // Seeds the distinguished constants "0", "1", "undef" and the binary "=".
    Vocabulary();

    AgentId add_agent(std::string name);
    ConstId add_constant(std::string name);
    VarId add_basic_var(std::string name, AgentId owner);
    PredId add_predicate(std::string name, std::uint32_t arity);
    FunId add_function(std::string name, std::uint32_t arity);

    std::size_t agent_count() const noexcept { return agents_.size(); }
    std::size_t constant_count() const noexcept { return constants_.size(); }
    std::size_t var_count() const noexcept { return vars_.size(); }
    std::size_t predicate_count() const noexcept { return preds_.size(); }
    std::size_t function_count() const noexcept { return funs_.size(); }

    const std::string& agent_name(AgentId a) const { return agents_.at(a); }
    const std::string& constant_name(ConstId c) const { return constants_.at(c); }
    const BasicVarDecl& var(VarId v) const { return vars_.at(v); }
    const PredDecl& predicate(PredId p) const { return preds_.at(p); }
    const FunDecl& function(FunId f) const { return funs_.at(f); }

    std::optional<AgentId> find_agent(std::string_view name) const;
    std::optional<ConstId> find_constant(std::string_view name) const;
    std::optional<VarId> find_var(std::string_view name, AgentId owner) const;
    std::optional<VarId> find_var(std::string_view qualified) const;  // "name@owner"
    std::optional<PredId> find_predicate(std::string_view name) const;
    std::optional<FunId> find_function(std::string_view name) const;

    AgentId require_agent(std::string_view name) const;
    ConstId require_constant(std::string_view name) const;
    VarId require_var(std::string_view name, AgentId owner) const;
    PredId require_predicate(std::string_view name) const;
    FunId require_function(std::string_view name) const;

    ConstId zero() const noexcept { return zero_; }
    ConstId one() const noexcept { return one_; }
    ConstId undef() const noexcept { return undef_; }
    PredId eq() const noexcept { return eq_; }

    // All declared agents as one set / group (throws if there are none).
    AgentSet all_agents() const;

    void check_group(const Group& g) const;
    void check_supergroup(const Supergroup& g) const;

private:
    std::vector<std::string> agents_;
    std::vector<std::string> constants_;
    std::vector<BasicVarDecl> vars_;
    std::vector<PredDecl> preds_;
    std::vector<FunDecl> funs_;
    ConstId zero_, one_, undef_;
    PredId eq_;
};

}  // namespace dlkv

#endif  // DLKV_VOCABULARY_HPP
