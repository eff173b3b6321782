#include "dlkv/model.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <map>

namespace dlkv {

// ── Partition ───────────────────────────────────────────────────────────────

Partition Partition::from_block_ids(const std::vector<std::uint32_t>& raw) {
    Partition p;
    p.block_of_.resize(raw.size());
    std::map<std::uint32_t, std::uint32_t> renumber;
    for (std::size_t i = 0; i < raw.size(); ++i) {
        auto [it, fresh] = renumber.try_emplace(raw[i], p.block_count_);
        if (fresh) ++p.block_count_;
        p.block_of_[i] = it->second;
    }
    return p;
}

Partition Partition::identity(std::size_t n) {
    std::vector<std::uint32_t> ids(n);
    for (std::size_t i = 0; i < n; ++i) ids[i] = static_cast<std::uint32_t>(i);
    return from_block_ids(ids);
}

Partition Partition::universal(std::size_t n) {
    return from_block_ids(std::vector<std::uint32_t>(n, 0));
}

Partition Partition::intersect(const Partition& p, const Partition& q) {
    std::vector<std::uint32_t> ids(p.size());
    std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint32_t> pairs;
    std::uint32_t next = 0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        auto key = std::make_pair(p.block_of(i), q.block_of(i));
        auto [it, fresh] = pairs.try_emplace(key, next);
        if (fresh) ++next;
        ids[i] = it->second;
    }
    return from_block_ids(ids);
}

Partition Partition::restricted(const std::vector<StateId>& selected) const {
    std::vector<std::uint32_t> ids(selected.size());
    for (std::size_t i = 0; i < selected.size(); ++i) ids[i] = block_of(selected[i]);
    return from_block_ids(ids);
}

std::vector<std::vector<StateId>> Partition::blocks() const {
    std::vector<std::vector<StateId>> out(block_count_);
    for (std::size_t i = 0; i < block_of_.size(); ++i)
        out[block_of_[i]].push_back(static_cast<StateId>(i));
    return out;
}

bool Partition::refines(const Partition& coarser) const {
    std::map<std::uint32_t, std::uint32_t> image;
    for (std::size_t i = 0; i < block_of_.size(); ++i) {
        auto [it, fresh] = image.try_emplace(block_of_[i], coarser.block_of(i));
        if (!fresh && it->second != coarser.block_of(i)) return false;
    }
    return true;
}

// ── FirstOrderModel ─────────────────────────────────────────────────────────

FirstOrderModel::FirstOrderModel(std::shared_ptr<const Vocabulary> voc,
                                 std::vector<std::string> values,
                                 ValueId undef_value)
    : voc_(std::move(voc)), values_(std::move(values)), undef_(undef_value) {
    if (undef_ >= values_.size())
        throw VocabularyError("undefined value outside the domain");
    const_val_.assign(voc_->constant_count(), undef_);
    fun_builtin_.assign(voc_->function_count(), FunBuiltin::None);
    fun_table_.resize(voc_->function_count());
    fun_set_.assign(voc_->function_count(), 0);
    pred_builtin_.assign(voc_->predicate_count(), PredBuiltin::None);
    pred_table_.resize(voc_->predicate_count());
    pred_set_.assign(voc_->predicate_count(), 0);
    const_val_[voc_->undef()] = undef_;
}

std::optional<ValueId> FirstOrderModel::find_value(std::string_view name) const {
    for (std::size_t i = 0; i < values_.size(); ++i)
        if (values_[i] == name) return static_cast<ValueId>(i);
    return std::nullopt;
}

std::optional<long> FirstOrderModel::numeric(ValueId v) const {
    const std::string& s = values_.at(v);
    long out = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
    return out;
}

void FirstOrderModel::set_constant(ConstId c, ValueId v) {
    if (c == voc_->undef() && v != undef_)
        throw VocabularyError("undef must denote the undefined value");
    const_val_.at(c) = v;
}

ValueId FirstOrderModel::constant_value(ConstId c) const { return const_val_.at(c); }

std::size_t FirstOrderModel::tuple_index(const std::vector<ValueId>& args) const {
    std::size_t idx = 0;
    for (ValueId a : args) idx = idx * values_.size() + a;
    return idx;
}

void FirstOrderModel::set_function_builtin(FunId f, FunBuiltin b) {
    fun_builtin_.at(f) = b;
    fun_set_.at(f) = 1;
}

void FirstOrderModel::set_function_table(FunId f, std::vector<ValueId> table) {
    std::size_t expect = 1;
    for (std::uint32_t i = 0; i < voc_->function(f).arity; ++i) expect *= values_.size();
    if (table.size() != expect)
        throw VocabularyError("function table for " + voc_->function(f).name +
                              " is not total");
    fun_table_.at(f) = std::move(table);
    fun_set_.at(f) = 1;
}

ValueId FirstOrderModel::apply_function(FunId f, const std::vector<ValueId>& args) const {
    if (!fun_set_.at(f))
        throw VocabularyError("function " + voc_->function(f).name +
                              " has no interpretation");
    if (fun_builtin_[f] == FunBuiltin::SaturatingAdd) {
        auto x = numeric(args.at(0));
        auto y = numeric(args.at(1));
        if (!x || !y) return undef_;
        long cap = 0;
        for (std::size_t i = 0; i < values_.size(); ++i)
            if (auto n = numeric(static_cast<ValueId>(i))) cap = std::max(cap, *n);
        long sum = std::min(*x + *y, cap);
        return *find_value(std::to_string(sum));
    }
    return fun_table_[f].at(tuple_index(args));
}

void FirstOrderModel::set_predicate_builtin(PredId p, PredBuiltin b) {
    pred_builtin_.at(p) = b;
    pred_set_.at(p) = 1;
}

void FirstOrderModel::set_predicate_table(PredId p, std::vector<bool> table) {
    std::size_t expect = 1;
    for (std::uint32_t i = 0; i < voc_->predicate(p).arity; ++i) expect *= values_.size();
    if (table.size() != expect)
        throw VocabularyError("predicate table for " + voc_->predicate(p).name +
                              " is not total");
    pred_table_.at(p) = std::move(table);
    pred_set_.at(p) = 1;
}

bool FirstOrderModel::holds(PredId p, const std::vector<ValueId>& args) const {
    if (p == voc_->eq()) return args.at(0) == args.at(1);
    if (!pred_set_.at(p))
        throw VocabularyError("predicate " + voc_->predicate(p).name +
                              " has no interpretation");
    if (pred_builtin_[p] != PredBuiltin::None) {
        auto x = numeric(args.at(0));
        auto y = numeric(args.at(1));
        if (!x || !y) return false;
        return pred_builtin_[p] == PredBuiltin::Leq ? *x <= *y : *x < *y;
    }
    return pred_table_[p].at(tuple_index(args));
}

bool FirstOrderModel::function_defined(FunId f) const { return fun_set_.at(f) != 0; }
bool FirstOrderModel::predicate_defined(PredId p) const {
    return p == voc_->eq() || pred_set_.at(p) != 0;
}

// ── EpistemicModel ──────────────────────────────────────────────────────────

EpistemicModel::EpistemicModel(std::shared_ptr<const FirstOrderModel> fom,
                               std::vector<std::string> state_names,
                               std::vector<Partition> agent_partitions,
                               std::vector<ValueId> valuation)
    : fom_(std::move(fom)),
      state_names_(std::move(state_names)),
      partitions_(std::move(agent_partitions)),
      valuation_(std::move(valuation)) {
    const std::size_t n = state_names_.size();
    if (partitions_.size() != fom_->voc().agent_count())
        throw VocabularyError("one partition per agent required");
    for (const Partition& p : partitions_)
        if (p.size() != n) throw VocabularyError("partition size mismatch");
    if (valuation_.size() != n * fom_->voc().var_count())
        throw VocabularyError("valuation must be total");
}

std::optional<StateId> EpistemicModel::find_state(std::string_view name) const {
    for (std::size_t i = 0; i < state_names_.size(); ++i)
        if (state_names_[i] == name) return static_cast<StateId>(i);
    return std::nullopt;
}

// ── Operations ──────────────────────────────────────────────────────────────

std::vector<ModelViolation> validate_model(const EpistemicModel& m) {
    std::vector<ModelViolation> out;
    const Vocabulary& voc = m.voc();
    for (VarId v = 0; v < voc.var_count(); ++v) {
        AgentId owner = voc.var(v).owner;
        const Partition& p = m.partition(owner);
        for (const auto& block : p.blocks()) {
            for (std::size_t i = 1; i < block.size(); ++i) {
                if (m.value(block[i], v) != m.value(block[0], v)) {
                    out.push_back({"agent " + voc.agent_name(owner) +
                                   " cannot distinguish " + m.state_name(block[0]) +
                                   " and " + m.state_name(block[i]) +
                                   " but they differ on " + voc.var(v).name});
                    break;
                }
            }
        }
    }
    for (FunId f = 0; f < voc.function_count(); ++f)
        if (!m.fom().function_defined(f))
            out.push_back({"function " + voc.function(f).name + " uninterpreted"});
    for (PredId p = 0; p < voc.predicate_count(); ++p)
        if (!m.fom().predicate_defined(p))
            out.push_back({"predicate " + voc.predicate(p).name + " uninterpreted"});
    return out;
}

GroupRelation group_rel(const EpistemicModel& m, const Group& a) {
    m.voc().check_group(a);
    Partition acc = m.partition(a.members().front());
    for (std::size_t i = 1; i < a.members().size(); ++i)
        acc = Partition::intersect(acc, m.partition(a.members()[i]));
    return GroupRelation{a, std::move(acc)};
}

ModelPtr build_numbers_game(long max) {
    if (max < 2) throw VocabularyError("numbers game needs max >= 2");

    Vocabulary voc;  // seeds 0, 1, undef, =
    AgentId a = voc.add_agent("a");
    AgentId b = voc.add_agent("b");
    AgentId d = voc.add_agent("d");
    voc.add_agent("e");
    VarId na = voc.add_basic_var("na", a);
    VarId nb = voc.add_basic_var("nb", b);
    VarId nd = voc.add_basic_var("nd", d);
    voc.add_function("plus", 2);
    voc.add_predicate("leq", 2);
    voc.add_predicate("lt", 2);
    for (long v = 2; v <= max; ++v) voc.add_constant(std::to_string(v));

    std::vector<std::string> values;
    for (long v = 0; v <= max; ++v) values.push_back(std::to_string(v));
    values.push_back("U");
    ValueId undef_value = static_cast<ValueId>(values.size() - 1);

    auto voc_ptr = std::make_shared<const Vocabulary>(voc);
    auto fom = std::make_shared<FirstOrderModel>(voc_ptr, values, undef_value);
    for (long v = 0; v <= max; ++v)
        fom->set_constant(voc_ptr->require_constant(std::to_string(v)),
                          static_cast<ValueId>(v));
    fom->set_function_builtin(voc_ptr->require_function("plus"),
                              FunBuiltin::SaturatingAdd);
    fom->set_predicate_builtin(voc_ptr->require_predicate("leq"), PredBuiltin::Leq);
    fom->set_predicate_builtin(voc_ptr->require_predicate("lt"), PredBuiltin::Lt);

    std::vector<std::string> names;
    std::vector<std::array<long, 3>> triples;
    for (long sa = 0; sa <= max; ++sa)
        for (long sb = 0; sb <= max; ++sb)
            for (long sd = 0; sd <= max; ++sd)
                if (sa == sb + sd || sb == sa + sd) {
                    triples.push_back({sa, sb, sd});
                    names.push_back("s" + std::to_string(sa) + "_" +
                                    std::to_string(sb) + "_" + std::to_string(sd));
                }

    const std::size_t n = triples.size();
    std::vector<ValueId> valuation(n * voc_ptr->var_count());
    for (std::size_t s = 0; s < n; ++s) {
        valuation[s * 3 + na] = static_cast<ValueId>(triples[s][0]);
        valuation[s * 3 + nb] = static_cast<ValueId>(triples[s][1]);
        valuation[s * 3 + nd] = static_cast<ValueId>(triples[s][2]);
    }

    std::vector<Partition> parts;
    for (int comp = 0; comp < 3; ++comp) {
        std::vector<std::uint32_t> ids(n);
        for (std::size_t s = 0; s < n; ++s)
            ids[s] = static_cast<std::uint32_t>(triples[s][comp]);
        parts.push_back(Partition::from_block_ids(ids));
    }
    parts.push_back(Partition::universal(n));  // e sees nothing

    return std::make_shared<const EpistemicModel>(fom, std::move(names),
                                                  std::move(parts),
                                                  std::move(valuation));
}

}  // namespace dlkv
