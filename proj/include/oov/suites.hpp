#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "oov/proofs.hpp"
#include "oov/universe.hpp"

namespace oov {

struct SuiteOptions {
  std::uint64_t seed = 42;
  Universe universe;
  std::uint64_t fuel = 200'000;
  /// Random cases per generated family.
  std::size_t cases = 1000;
};

struct SuiteResult {
  std::string name;
  std::uint64_t seed = 0;
  std::size_t cases = 0;
  std::size_t passed = 0;
  std::size_t failed = 0;
  /// Cases that could not be decided (out of fuel, unknown obligations).
  std::size_t inconclusive = 0;
  std::map<std::string, double> metrics;
  /// Descriptions of the first few failures.
  std::vector<std::string> failures;
  double seconds = 0;

  bool ok() const { return failed == 0 && passed > 0; }
  std::string report() const;
};

std::vector<std::string> suite_names();
/// Throws std::invalid_argument for an unknown name.
SuiteResult run_suite(const std::string& name, const SuiteOptions& opts = {});

// ---------------------------------------------------------------------------
// Golden proofs
// ---------------------------------------------------------------------------

enum class Expect : std::uint8_t {
  /// Accepted with every obligation valid.
  Valid,
  /// Accepted, with at least one counterexample obligation.
  Counterexample,
  Rejected,
};

struct GoldenProof {
  /// File under data/proofs.
  std::string proof;
  /// Program file under data, or empty for a bare kernel context.
  std::string program;
  ProofSystem system;
  Expect expect;
};

const std::vector<GoldenProof>& golden_proofs();

struct LoadedProof {
  Program program;
  ProofFile file;
};
LoadedProof load_golden(const GoldenProof& g);

enum class AuditStatus : std::uint8_t { Holds, Violated, Inconclusive };

struct AuditResult {
  AuditStatus status = AuditStatus::Holds;
  std::optional<State> witness;
  std::size_t states = 0;
};

/// Checks {p} S {q} by running S from every state of the universe that
/// satisfies p. Strong audits also treat failure as a violation. OO
/// formulas start only from states with this ≠ null.
AuditResult audit_formula(const Formula& f, const DeclSet& decls, Flavor flavor, bool strong, const Universe& u,
                          std::uint64_t fuel, std::size_t leaf_cap = 200'000);

struct TranslationCheck {
  bool accepted = false;
  /// Every source obligation's image is found with the same status, and
  /// obligations without a preimage are valid.
  bool preserved = false;
  std::string detail;
  Derivation target;
};

/// Translates an accepted OO derivation and re-checks it in the target
/// system over Θ(D).
TranslationCheck check_translation(const Derivation& d, ProofSystem source, const DeclSet& decls,
                                   const CheckOptions& opts);

}  // namespace oov
