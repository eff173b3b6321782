// ============================================================================
// dlkv/model.hpp — finite first-order models and epistemic data models
// ============================================================================
//
// Design notes:
//
//   Domains are finite ordered value lists with one designated undefined
//   value.  Function and predicate interpretations are total row-major
//   tables over value tuples; equality is always the identity relation and
//   is not stored.  Two builtins cover the arithmetic the bundled scenario
//   needs: saturating addition (undefined-absorbing) and the order
//   predicates leq/lt on numeric domains.
//
//   Epistemic models store each agent's indistinguishability relation as a
//   partition (block id per state), never as an edge list, so equivalence
//   holds by construction.  Group relations are partition intersections.
//
//   Models are immutable after construction and shared via shared_ptr; the
//   checker's update operation produces fresh models referring to the same
//   first-order part.
//
// ============================================================================

#ifndef DLKV_MODEL_HPP
#define DLKV_MODEL_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "dlkv/vocabulary.hpp"

namespace dlkv {

using ValueId = std::uint32_t;
using StateId = std::uint32_t;

// ── Partition ───────────────────────────────────────────────────────────────
// Canonical partition of {0..n-1}: blocks numbered by first occurrence.

class Partition {
public:
    Partition() = default;
    // From block ids (renumbered canonically).
    static Partition from_block_ids(const std::vector<std::uint32_t>& raw);
    static Partition identity(std::size_t n);
    static Partition universal(std::size_t n);
    static Partition intersect(const Partition& p, const Partition& q);
    // Keeps only `selected` elements (in order); blocks renumbered.
    Partition restricted(const std::vector<StateId>& selected) const;

    std::uint32_t block_of(std::size_t i) const { return block_of_.at(i); }
    std::uint32_t block_count() const noexcept { return block_count_; }
    std::size_t size() const noexcept { return block_of_.size(); }
    bool same_block(std::size_t i, std::size_t j) const {
        return block_of_.at(i) == block_of_.at(j);
    }
    std::vector<std::vector<StateId>> blocks() const;
    // True when every block of this partition lies inside a block of `coarser`.
    bool refines(const Partition& coarser) const;

    bool operator==(const Partition&) const = default;

private:
    std::vector<std::uint32_t> block_of_;
    std::uint32_t block_count_ = 0;
};

// ── FirstOrderModel ─────────────────────────────────────────────────────────

enum class FunBuiltin : std::uint8_t { None, SaturatingAdd };
enum class PredBuiltin : std::uint8_t { None, Leq, Lt };

class FirstOrderModel {
public:
    FirstOrderModel(std::shared_ptr<const Vocabulary> voc,
                    std::vector<std::string> values, ValueId undef_value);

    const Vocabulary& voc() const noexcept { return *voc_; }
    std::shared_ptr<const Vocabulary> voc_ptr() const noexcept { return voc_; }

    std::size_t domain_size() const noexcept { return values_.size(); }
    const std::string& value_name(ValueId v) const { return values_.at(v); }
    std::optional<ValueId> find_value(std::string_view name) const;
    ValueId undef_value() const noexcept { return undef_; }
    // Numeric reading of a value name, when the whole domain is numeric.
    std::optional<long> numeric(ValueId v) const;

    void set_constant(ConstId c, ValueId v);
    ValueId constant_value(ConstId c) const;

    void set_function_builtin(FunId f, FunBuiltin b);
    void set_function_table(FunId f, std::vector<ValueId> table);  // row-major
    ValueId apply_function(FunId f, const std::vector<ValueId>& args) const;

    void set_predicate_builtin(PredId p, PredBuiltin b);
    void set_predicate_table(PredId p, std::vector<bool> table);
    bool holds(PredId p, const std::vector<ValueId>& args) const;

    bool function_defined(FunId f) const;
    bool predicate_defined(PredId p) const;
    FunBuiltin function_builtin(FunId f) const { return fun_builtin_.at(f); }
    PredBuiltin predicate_builtin(PredId p) const { return pred_builtin_.at(p); }
    const std::vector<ValueId>& function_table(FunId f) const { return fun_table_.at(f); }
    const std::vector<bool>& predicate_table(PredId p) const { return pred_table_.at(p); }

private:
    std::size_t tuple_index(const std::vector<ValueId>& args) const;

    std::shared_ptr<const Vocabulary> voc_;
    std::vector<std::string> values_;
    ValueId undef_;
    std::vector<ValueId> const_val_;
    std::vector<FunBuiltin> fun_builtin_;
    std::vector<std::vector<ValueId>> fun_table_;
    std::vector<std::uint8_t> fun_set_;
    std::vector<PredBuiltin> pred_builtin_;
    std::vector<std::vector<bool>> pred_table_;
    std::vector<std::uint8_t> pred_set_;
};

// ── EpistemicModel ──────────────────────────────────────────────────────────

class EpistemicModel {
public:
    EpistemicModel(std::shared_ptr<const FirstOrderModel> fom,
                   std::vector<std::string> state_names,
                   std::vector<Partition> agent_partitions,  // per agent
                   std::vector<ValueId> valuation);          // [state][var]

    const FirstOrderModel& fom() const noexcept { return *fom_; }
    std::shared_ptr<const FirstOrderModel> fom_ptr() const noexcept { return fom_; }
    const Vocabulary& voc() const noexcept { return fom_->voc(); }

    std::size_t state_count() const noexcept { return state_names_.size(); }
    const std::string& state_name(StateId s) const { return state_names_.at(s); }
    std::optional<StateId> find_state(std::string_view name) const;
    const Partition& partition(AgentId a) const { return partitions_.at(a); }
    ValueId value(StateId s, VarId v) const {
        return valuation_.at(s * voc().var_count() + v);
    }
    const std::vector<ValueId>& valuation() const noexcept { return valuation_; }

    bool operator==(const EpistemicModel&) const = delete;

private:
    std::shared_ptr<const FirstOrderModel> fom_;
    std::vector<std::string> state_names_;
    std::vector<Partition> partitions_;
    std::vector<ValueId> valuation_;
};

using ModelPtr = std::shared_ptr<const EpistemicModel>;

// ── Operations ──────────────────────────────────────────────────────────────

struct ModelViolation {
    std::string message;
};

// Checks the "agents know their own data" constraint and interpretation
// totality; violations are data, not failures.
std::vector<ModelViolation> validate_model(const EpistemicModel& m);

struct GroupRelation {
    Group group;
    Partition partition;
};

// Intersection of the member partitions.
GroupRelation group_rel(const EpistemicModel& m, const Group& a);

// The initial model of the numbers-game scenario, truncated to values in
// [0, max].  Agents a, b, d, e; variables na@a, nb@b, nd@d; saturating plus;
// builtin leq and lt; one numeral constant per domain value.  States are all
// triples with one component the sum of the other two; a, b, d each see
// their own number and e sees nothing.
ModelPtr build_numbers_game(long max);

}  // namespace dlkv

#endif  // DLKV_MODEL_HPP
