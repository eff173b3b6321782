// ============================================================================
// dlkv/reducer.hpp — rewriting dynamic formulas and terms into static ones
// ============================================================================
//
// Design notes:
//
//   Events are reduced bottom-up first (all precondition formulas and all
//   postcondition terms made static, access map untouched); then each dynamic
//   modality whose event and argument are static is pushed inward, top-down,
//   one constructor at a time.  The static formula rho equivalent to the
//   event's precondition is computed once per event and shared by every rule
//   application for that event; every pushed term is guarded by the
//   "value if rho else undefined" shape.
//
//   Each one-step application is logged.  The contracted redex is replaced
//   by finitely many redexes over the same event, each with a strictly
//   smaller argument, so the multiset of redex sizes decreases at every
//   step (checked by the property tests).
//
// ============================================================================

#ifndef DLKV_REDUCER_HPP
#define DLKV_REDUCER_HPP

#include <string>
#include <variant>
#include <vector>

#include "dlkv/ast.hpp"

namespace dlkv {

using ExprRef = std::variant<TermId, FormulaId>;

struct ReductionStep {
    std::string rule;
    std::string path;    // dotted child indices from the root, "" = root
    ExprRef before;      // the contracted redex
    ExprRef after;       // its one-step replacement
};

// A reduced expression together with the scan-verified staticness flag.
template <class Id>
struct StaticCertificate {
    Id expr;
    bool verified_static = false;
};

struct FormulaReduction {
    StaticCertificate<FormulaId> certificate;
    std::vector<ReductionStep> steps;
    FormulaId result() const { return certificate.expr; }
};

struct TermReduction {
    StaticCertificate<TermId> certificate;
    std::vector<ReductionStep> steps;
    TermId result() const { return certificate.expr; }
};

struct EventReduction {
    EventId result;
    std::vector<ReductionStep> steps;
};

class Reducer {
public:
    explicit Reducer(Arena& arena) : arena_(arena) {}

    FormulaReduction reduce_formula(FormulaId f);
    TermReduction reduce_term(TermId x);
    EventReduction reduce_event(EventId e);

private:
    FormulaId reduce_f(FormulaId f, const std::string& path,
                       std::vector<ReductionStep>& steps);
    TermId reduce_t(TermId x, const std::string& path,
                    std::vector<ReductionStep>& steps);
    EventId reduce_e(EventId e, const std::string& path,
                     std::vector<ReductionStep>& steps);

    // One-step push of a reduced event through a static argument.
    FormulaId push_box(EventId e, FormulaId rho, FormulaId body,
                       const std::string& path, std::vector<ReductionStep>& steps);
    TermId push_app(EventId e, FormulaId rho, TermId base,
                    const std::string& path, std::vector<ReductionStep>& steps);

    TermId guard(TermId t, FormulaId rho);  // t if rho else undef

    Arena& arena_;
};

// Bottom-up boolean simplification: top/bottom propagation through the
// primitive connectives, double-negation elimination, and branch selection
// for conditionals with decided conditions.  Semantics-preserving; applied
// only on request.
FormulaId simplify(Arena& ar, FormulaId f);
TermId simplify(Arena& ar, TermId x);

// Renders a step as `rule @ path : before ==> after` (printer syntax).
std::string format_step(const Arena& ar, const ReductionStep& step);

}  // namespace dlkv

#endif  // DLKV_REDUCER_HPP
