#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "oov/state.hpp"
#include "oov/universe.hpp"

namespace oov {

/// Exhaustive search over the states of a universe, determining only the
/// cells a computation actually reads.
///
/// `visit` is called on a lazy state; reading an undetermined cell raises
/// NeedValue, and the search re-runs `visit` once per value of that cell.
/// `visit` returns false to stop the search.
struct ExploreOptions {
  Universe universe;
  /// Restrict `this` to non-null objects.
  bool this_nonnull = false;
  /// Completed visits after which the search gives up.
  std::size_t leaf_cap = 200'000;
};

struct ExploreResult {
  /// Every state was covered (or the search was stopped by `visit`).
  bool complete = true;
  bool stopped = false;
  std::size_t leaves = 0;
};

ExploreResult explore(const std::function<bool(const State&)>& visit, const ExploreOptions& opts,
                      const State& seed = State::lazy());

/// Values a cell may take: its type's domain, minus null for a non-null `this`.
std::vector<Value> cell_domain(const Location& l, const ExploreOptions& opts);

enum class Validity : std::uint8_t { Valid, Counterexample, Unknown };
std::string to_string(Validity v);

struct ValidityResult {
  Validity status = Validity::Unknown;
  /// Witness for Counterexample, as a strict state.
  std::optional<State> witness;
};

/// Is `p` true in every state of the universe?
ValidityResult check_valid(const Expr& p, const ExploreOptions& opts);

}  // namespace oov
