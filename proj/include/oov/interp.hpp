#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>

#include "oov/state.hpp"
#include "oov/syntax.hpp"

namespace oov {

/// ⟨S, σ⟩. Termination is ⟨E, τ⟩; a failure is always ⟨E, fail⟩.
struct Config {
  Stmt stmt;
  Outcome out;
};

/// One transition, or nullopt for a terminal configuration.
std::optional<Config> step(const Config& cfg, const DeclSet& decls);

enum class RunStatus : std::uint8_t { Terminated, Failed, OutOfFuel };
std::string to_string(RunStatus s);

struct RunResult {
  RunStatus status = RunStatus::OutOfFuel;
  /// Final state when Terminated.
  std::optional<State> state;
  std::uint64_t steps = 0;
};

/// Called with every configuration reached, the initial one included.
using StepObserver = std::function<void(const Config&)>;

inline constexpr std::uint64_t kDefaultFuel = 1'000'000;

/// Runs the main statement. OO programs must start with this ≠ null;
/// std::invalid_argument otherwise.
RunResult run(const Program& p, const State& s0, std::uint64_t fuel = kDefaultFuel,
              const StepObserver& observer = {});
RunResult run_stmt(const Stmt& s, const DeclSet& decls, Flavor flavor, const State& s0,
                   std::uint64_t fuel = kDefaultFuel, const StepObserver& observer = {});

/// M[[S]](σ) as an outcome: nullopt when the run diverged within fuel, fail
/// only in the strong-partial reading.
std::optional<Outcome> outcome_of(const RunResult& r);

/// Counters for the safety instrumentation of OO runs.
struct SafetyCounters {
  std::uint64_t runs = 0;
  std::uint64_t steps = 0;
  /// Proper states with this = null reached from a this ≠ null start.
  std::uint64_t null_this = 0;
  /// Intermediate statements that fail to typecheck in runtime mode.
  std::uint64_t ill_typed = 0;
};

/// Observer that updates `counters` for each configuration of a run.
StepObserver safety_observer(const DeclSet& decls, Flavor flavor, SafetyCounters& counters);

}  // namespace oov
