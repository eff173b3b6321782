#include "dlkv/vocabulary.hpp"

#include <algorithm>

namespace dlkv {

// ── AgentSet ────────────────────────────────────────────────────────────────

AgentSet::AgentSet(std::vector<AgentId> members) : members_(std::move(members)) {
    std::sort(members_.begin(), members_.end());
    members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
}

bool AgentSet::contains(AgentId a) const {
    return std::binary_search(members_.begin(), members_.end(), a);
}

bool AgentSet::subset_of(const AgentSet& other) const {
    return std::includes(other.members_.begin(), other.members_.end(),
                         members_.begin(), members_.end());
}

AgentSet AgentSet::united(const AgentSet& other) const {
    std::vector<AgentId> u;
    u.reserve(members_.size() + other.members_.size());
    std::set_union(members_.begin(), members_.end(), other.members_.begin(),
                   other.members_.end(), std::back_inserter(u));
    AgentSet result;
    result.members_ = std::move(u);
    return result;
}

// ── Supergroup ──────────────────────────────────────────────────────────────

Supergroup::Supergroup(std::vector<Group> groups) : groups_(std::move(groups)) {
    if (groups_.empty()) throw VocabularyError("supergroup must be non-empty");
    std::sort(groups_.begin(), groups_.end());
    groups_.erase(std::unique(groups_.begin(), groups_.end()), groups_.end());
}

Supergroup Supergroup::singletons(const Group& flat) {
    std::vector<Group> gs;
    gs.reserve(flat.size());
    for (AgentId a : flat.members()) gs.push_back(Group::singleton(a));
    return Supergroup(std::move(gs));
}

AgentSet Supergroup::all_agents() const {
    AgentSet acc;
    for (const Group& g : groups_) acc = acc.united(g.agents());
    return acc;
}

// ── Vocabulary ──────────────────────────────────────────────────────────────

Vocabulary::Vocabulary() {
    zero_ = add_constant("0");
    one_ = add_constant("1");
    undef_ = add_constant("undef");
    eq_ = add_predicate("=", 2);
}

AgentId Vocabulary::add_agent(std::string name) {
    if (find_agent(name)) throw VocabularyError("duplicate agent: " + name);
    agents_.push_back(std::move(name));
    return static_cast<AgentId>(agents_.size() - 1);
}

ConstId Vocabulary::add_constant(std::string name) {
    if (find_constant(name)) throw VocabularyError("duplicate constant: " + name);
    constants_.push_back(std::move(name));
    return static_cast<ConstId>(constants_.size() - 1);
}

VarId Vocabulary::add_basic_var(std::string name, AgentId owner) {
    if (owner >= agents_.size())
        throw VocabularyError("variable owner out of range: " + name);
    if (find_var(name, owner))
        throw VocabularyError("duplicate basic variable: " + name + "@" + agents_[owner]);
    vars_.push_back({std::move(name), owner});
    return static_cast<VarId>(vars_.size() - 1);
}

PredId Vocabulary::add_predicate(std::string name, std::uint32_t arity) {
    if (find_predicate(name)) throw VocabularyError("duplicate predicate: " + name);
    preds_.push_back({std::move(name), arity});
    return static_cast<PredId>(preds_.size() - 1);
}

FunId Vocabulary::add_function(std::string name, std::uint32_t arity) {
    if (find_function(name)) throw VocabularyError("duplicate function: " + name);
    funs_.push_back({std::move(name), arity});
    return static_cast<FunId>(funs_.size() - 1);
}

std::optional<AgentId> Vocabulary::find_agent(std::string_view name) const {
    for (std::size_t i = 0; i < agents_.size(); ++i)
        if (agents_[i] == name) return static_cast<AgentId>(i);
    return std::nullopt;
}

std::optional<ConstId> Vocabulary::find_constant(std::string_view name) const {
    for (std::size_t i = 0; i < constants_.size(); ++i)
        if (constants_[i] == name) return static_cast<ConstId>(i);
    return std::nullopt;
}

std::optional<VarId> Vocabulary::find_var(std::string_view name, AgentId owner) const {
    for (std::size_t i = 0; i < vars_.size(); ++i)
        if (vars_[i].owner == owner && vars_[i].name == name)
            return static_cast<VarId>(i);
    return std::nullopt;
}

std::optional<VarId> Vocabulary::find_var(std::string_view qualified) const {
    auto at = qualified.find('@');
    if (at == std::string_view::npos) return std::nullopt;
    auto owner = find_agent(qualified.substr(at + 1));
    if (!owner) return std::nullopt;
    return find_var(qualified.substr(0, at), *owner);
}

AgentId Vocabulary::require_agent(std::string_view name) const {
    if (auto a = find_agent(name)) return *a;
    throw VocabularyError("unknown agent: " + std::string(name));
}

ConstId Vocabulary::require_constant(std::string_view name) const {
    if (auto c = find_constant(name)) return *c;
    throw VocabularyError("unknown constant: " + std::string(name));
}

VarId Vocabulary::require_var(std::string_view name, AgentId owner) const {
    if (auto v = find_var(name, owner)) return *v;
    throw VocabularyError("unknown basic variable: " + std::string(name) + "@" +
                          agent_name(owner));
}

std::optional<PredId> Vocabulary::find_predicate(std::string_view name) const {
    for (std::size_t i = 0; i < preds_.size(); ++i)
        if (preds_[i].name == name) return static_cast<PredId>(i);
    return std::nullopt;
}

std::optional<FunId> Vocabulary::find_function(std::string_view name) const {
    for (std::size_t i = 0; i < funs_.size(); ++i)
        if (funs_[i].name == name) return static_cast<FunId>(i);
    return std::nullopt;
}

PredId Vocabulary::require_predicate(std::string_view name) const {
    if (auto p = find_predicate(name)) return *p;
    throw VocabularyError("unknown predicate: " + std::string(name));
}

FunId Vocabulary::require_function(std::string_view name) const {
    if (auto f = find_function(name)) return *f;
    throw VocabularyError("unknown function: " + std::string(name));
}

AgentSet Vocabulary::all_agents() const {
    std::vector<AgentId> all(agents_.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<AgentId>(i);
    return AgentSet(std::move(all));
}

void Vocabulary::check_group(const Group& g) const {
    for (AgentId a : g.members())
        if (a >= agents_.size()) throw VocabularyError("agent id out of range");
}

void Vocabulary::check_supergroup(const Supergroup& sg) const {
    for (const Group& g : sg.groups()) check_group(g);
}

}  // namespace dlkv
