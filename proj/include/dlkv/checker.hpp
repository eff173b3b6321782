// ============================================================================
// dlkv/checker.hpp — satisfaction, term interpretation and event update
// ============================================================================
//
// Design notes:
//
//   All three semantic notions are computed whole-model at a time: the
//   extension of a formula is its truth vector over all states, the values
//   of a term its value vector.  Both are cached per (model, expression), so
//   common-knowledge reachability and hypothetical-value lookups reuse work.
//
//   Updates are materialized eagerly as fresh models and memoized per
//   (model identity, event) within one Checker session; nested dynamic
//   operators re-enter the same update.  An empty surviving set yields a
//   legal zero-state model.
//
//   Conditional common knowledge is computed by one backward reachability
//   pass per formula: a state is bad when a failure of the body is reachable
//   through chains whose targets satisfy the condition.
//
// ============================================================================

#ifndef DLKV_CHECKER_HPP
#define DLKV_CHECKER_HPP

#include <map>
#include <unordered_map>
#include <vector>

#include "dlkv/ast.hpp"
#include "dlkv/model.hpp"

namespace dlkv {

// Surviving states, their parent indices, and the per-agent partitions of
// the updated model.
struct UpdateTrace {
    std::vector<StateId> survivors;        // parent ids, ascending
    std::vector<std::uint32_t> to_child;   // parent -> child index or npos
    static constexpr std::uint32_t npos = UINT32_MAX;
};

class Checker {
public:
    explicit Checker(const Arena& arena) : arena_(arena) {}

    const Arena& arena() const noexcept { return arena_; }

    bool check_formula(const ModelPtr& m, StateId s, FormulaId f);
    ValueId eval_term(const ModelPtr& m, StateId s, TermId x);

    // Truth of f at every state / value of x at every state (cached).
    const std::vector<bool>& extension(const ModelPtr& m, FormulaId f);
    const std::vector<ValueId>& term_values(const ModelPtr& m, TermId x);

    // States where f holds, in model order.
    std::vector<StateId> check_everywhere(const ModelPtr& m, FormulaId f);

    // The updated model e(m) with its trace; memoized per (model, event).
    std::pair<ModelPtr, UpdateTrace> update(const ModelPtr& m, EventId e);

private:
    struct PerModel {
        ModelPtr keep_alive;
        std::unordered_map<std::uint32_t, std::vector<bool>> formula_ext;
        std::unordered_map<std::uint32_t, std::vector<ValueId>> term_vals;
        std::map<std::uint32_t, std::pair<ModelPtr, UpdateTrace>> updates;
        std::map<std::vector<AgentId>, Partition> group_parts;
    };

    PerModel& cache_for(const ModelPtr& m);
    const Partition& group_partition(const ModelPtr& m, const std::vector<AgentId>& g);
    std::vector<bool> compute_extension(const ModelPtr& m, FormulaId f);
    std::vector<ValueId> compute_values(const ModelPtr& m, TermId x);

    const Arena& arena_;
    std::map<const EpistemicModel*, PerModel> cache_;
};

}  // namespace dlkv

#endif  // DLKV_CHECKER_HPP
