#include "oov/derivation.hpp"

#include <array>
#include <utility>

namespace oov {

namespace {
constexpr std::array<std::pair<Rule, const char*>, 21> kRuleNames{{
    {Rule::Skip, "SKIP"},
    {Rule::Assign, "ASSIGN"},
    {Rule::ParAssign, "PAR-ASSIGN"},
    {Rule::Comp, "COMP"},
    {Rule::Cond, "COND"},
    {Rule::Loop, "LOOP"},
    {Rule::Conseq, "CONSEQ"},
    {Rule::FailI, "FAIL-I"},
    {Rule::FailII, "FAIL-II"},
    {Rule::Block, "BLOCK"},
    {Rule::AssignInst, "ASSIGN-INST"},
    {Rule::Weaken, "WEAKEN"},
    {Rule::RecI, "REC-I"},
    {Rule::RecII, "REC-II"},
    {Rule::RecIII, "REC-III"},
    {Rule::Disj, "DISJ"},
    {Rule::Conj, "CONJ"},
    {Rule::ExistsIntro, "EXISTS-INTRO"},
    {Rule::Invariance, "INVARIANCE"},
    {Rule::Subst, "SUBST-RULE"},
    {Rule::Assume, "ASSUME"},
}};
}  // namespace

std::string rule_name(Rule r) {
  for (const auto& [rule, name] : kRuleNames) {
    if (rule == r) return name;
  }
  return "?";
}

std::optional<Rule> rule_from_name(const std::string& name) {
  for (const auto& [rule, n] : kRuleNames) {
    if (name == n) return rule;
  }
  return std::nullopt;
}

bool is_recursion_rule(Rule r) { return r == Rule::RecI || r == Rule::RecII || r == Rule::RecIII; }

bool same_derivation(const Derivation& a, const Derivation& b) {
  if (a.rule != b.rule || !(a.conclusion == b.conclusion) || a.assumptions != b.assumptions ||
      a.assume_index != b.assume_index || a.subst_vars != b.subst_vars || a.premises.size() != b.premises.size() ||
      a.subst_terms.size() != b.subst_terms.size()) {
    return false;
  }
  for (std::size_t i = 0; i < a.subst_terms.size(); ++i) {
    if (a.subst_terms[i] != b.subst_terms[i]) return false;
  }
  for (std::size_t i = 0; i < a.premises.size(); ++i) {
    if (!same_derivation(a.premises[i], b.premises[i])) return false;
  }
  return true;
}

std::size_t derivation_size(const Derivation& d) {
  std::size_t n = 1;
  for (const auto& p : d.premises) n += derivation_size(p);
  return n;
}

}  // namespace oov
