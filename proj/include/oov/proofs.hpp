#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "oov/derivation.hpp"
#include "oov/explore.hpp"
#include "oov/syntax.hpp"
#include "oov/universe.hpp"

namespace oov {

enum class ProofSystem : std::uint8_t { PK, SPK, PO, POPlus, SPO, SPOPlus, PR, SPR, PRPlus, SPRPlus };

/// "PK", "SPO+", ...
std::string to_string(ProofSystem s);
std::optional<ProofSystem> system_from_name(const std::string& name);
bool allows(ProofSystem s, Rule r);
/// Strong partial correctness systems (failure must be ruled out).
bool is_strong(ProofSystem s);
Flavor flavor_of(ProofSystem s);

struct Obligation {
  enum class Kind : std::uint8_t { Implication, NotNull };
  Kind kind = Kind::Implication;
  Expr lhs;
  /// Consequent for Implication, the object expression for NotNull.
  Expr rhs;
  std::string origin;

  /// The assertion that must be valid.
  Expr formula() const;
};

struct ObligationResult {
  Obligation obligation;
  ValidityResult result;
};

enum class VerdictStatus : std::uint8_t { Accepted, Rejected };

struct Verdict {
  VerdictStatus status = VerdictStatus::Accepted;
  /// First structural problem, with its origin, when Rejected.
  std::string reason;
  std::vector<ObligationResult> obligations;
  /// Universe the obligation statuses are relative to; empty when nothing
  /// was discharged.
  std::string bounds;

  bool accepted() const { return status == VerdictStatus::Accepted; }
  bool all_valid() const;
  bool any(Validity v) const;
  /// 0: accepted and all valid; 2: rejected or a counterexample; 3: unknown.
  int exit_code() const;
  /// `origin<TAB>status` lines, starting with the overall verdict.
  std::string report() const;
};

struct CheckOptions {
  Universe universe;
  std::size_t leaf_cap = 200'000;
  /// Skip obligation discharge (structure only; statuses stay Unknown).
  bool discharge = true;
};

Verdict check(const Derivation& d, ProofSystem system, const DeclSet& decls, const CheckOptions& opts = {});

ValidityResult discharge(const Obligation& ob, const Universe& u, std::size_t leaf_cap = 200'000);

class TranslationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Translates a PO+ (resp. SPO+) derivation over D into a PR+ (resp. SPR+)
/// derivation over Θ(D) of the Θ-image of its conclusion.
Derivation translate_proof(const Derivation& d, ProofSystem source, const DeclSet& decls);

/// PR+ for PO and PO+, SPR+ for SPO and SPO+.
ProofSystem translation_target(ProofSystem source);

/// Derivation of {p ∧ B} S {q} from one of {p} if B -> S fi {q}, for the
/// partial correctness recursive system.
Derivation normal_form_failure(const Derivation& d);

}  // namespace oov
