#pragma once

#include <string>
#include <vector>

#include "oov/state.hpp"
#include "oov/syntax.hpp"
#include "oov/universe.hpp"

namespace oov {

/// σ ⊨ p with quantifiers ranging over `u`. Lazy states may raise NeedValue.
bool eval_assertion(const State& s, const Expr& p, const Universe& u);

/// s[u := t] for a simple or subscripted, normal or instance target `u`
/// (a VarExpr or SubExpr). A bare instance variable is read as this.x, and
/// bare occurrences stay bare in the result. Bound variables are renamed to
/// name#n when they would capture. Throws std::invalid_argument for a
/// `this` target; use substitute_parallel for that.
Expr substitute(const Expr& s, const Expr& target, const Expr& t);

/// s[x̄ := t̄] for distinct simple normal variables. `this` may be among the
/// targets, in which case bare instance variables x become t_this.x.
Expr substitute_parallel(const Expr& s, const std::vector<VarRef>& targets, const std::vector<Expr>& values);

/// Capture-free renaming of free occurrences of x̄ by ȳ (arrays wholesale).
/// Throws std::invalid_argument on length or type mismatch.
Expr rename(const Expr& p, const std::vector<VarRef>& xs, const std::vector<VarRef>& ys);

/// Smallest `base#n` (n >= 1) not in `avoid`; any #suffix of base is dropped.
std::string fresh_name(const std::string& base, const NameSet& avoid);

/// All variable names occurring in e, bound ones included.
NameSet all_names(const Expr& e);

/// Meaning-preserving cleanup of generated conditionals: e = e becomes
/// true, conditionals with a literal guard or equal branches collapse, and
/// true/false units of the connectives are dropped.
Expr simplify(const Expr& e);

/// simplify plus expansion of bare instance variables x to this.x.
Expr normal_form(const Expr& e);

/// Structural equality up to renaming of bound variables.
bool alpha_equal(const Expr& a, const Expr& b);

/// alpha_equal on normal forms.
bool equivalent_syntax(const Expr& a, const Expr& b);

}  // namespace oov
