#pragma once

#include <optional>
#include <string>
#include <vector>

#include "oov/syntax.hpp"

namespace oov {

enum class Rule : std::uint8_t {
  Skip,
  Assign,
  ParAssign,
  Comp,
  Cond,
  Loop,
  Conseq,
  FailI,
  FailII,
  Block,
  AssignInst,
  Weaken,
  RecI,
  RecII,
  RecIII,
  Disj,
  Conj,
  ExistsIntro,
  Invariance,
  Subst,
  Assume,
};

/// Names as written in proof files, e.g. "FAIL-I", "SUBST-RULE".
std::string rule_name(Rule r);
std::optional<Rule> rule_from_name(const std::string& name);
bool is_recursion_rule(Rule r);

/// A proof tree. Premise order follows the rule schemas; for the recursion
/// rules premise 0 proves the conclusion and premise i proves the block for
/// assumption i.
struct Derivation {
  Rule rule = Rule::Skip;
  Formula conclusion;
  std::vector<Derivation> premises;
  /// Recursion rules: the assumed call formulas.
  std::vector<Formula> assumptions;
  /// ASSUME: 1-based index into the innermost recursion rule's assumptions.
  int assume_index = 0;
  /// SUBST-RULE: the substitution z̄ := t̄.
  std::vector<VarRef> subst_vars;
  std::vector<Expr> subst_terms;
  SourceLoc loc;
};

/// Structural equality ignoring source locations.
bool same_derivation(const Derivation& a, const Derivation& b);

/// Number of rule applications in a tree.
std::size_t derivation_size(const Derivation& d);

struct ProofFile {
  /// Variables declared by the proof file on top of the program's.
  std::vector<VarRef> extra_vars;
  Derivation root;
};

}  // namespace oov
