// ============================================================================
// dlkv/location.hpp — extended location of static expressions
// ============================================================================

#ifndef DLKV_LOCATION_HPP
#define DLKV_LOCATION_HPP

#include "dlkv/ast.hpp"

namespace dlkv {

// The set of agents a static expression's value is distributed over:
//   basic variables locate at their owner, constants nowhere;
//   K and desc locate exactly at their group, regardless of their contents;
//   C locates at the union of its supergroup and its body's location;
//   everything else is the union over direct constituents (if-then-else
//   includes its condition).
// Throws UnsupportedExpressionError on dynamic operators.
AgentSet agents_of(const Arena& ar, TermId x);
AgentSet agents_of(const Arena& ar, FormulaId f);

}  // namespace dlkv

#endif  // DLKV_LOCATION_HPP
