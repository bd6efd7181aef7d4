#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "oov/interp.hpp"
#include "oov/state.hpp"
#include "oov/syntax.hpp"
#include "oov/universe.hpp"

namespace oov {

enum class WpMode : std::uint8_t { Partial, StrongPartial };

/// Finite set of strict states: every combination of values over the
/// footprint cells, defaults elsewhere.
struct StateSpace {
  Universe universe;
  std::vector<Location> footprint;
  /// Exclude states with this = null (object-oriented runs).
  bool this_nonnull = false;

  std::size_t size() const;
  /// All states in a fixed enumeration order.
  std::vector<State> states() const;
};

/// Simple normal variables of the statement and assertions, plus `this`
/// when instance variables or calls occur.
StateSpace space_for(const Stmt& s, const std::vector<Expr>& assertions, const Universe& u,
                     const std::vector<Location>& extra_cells = {});

enum class Membership : std::uint8_t { In, Out, Unknown };

struct WpSet {
  std::vector<State> states;
  std::vector<Membership> member;

  std::size_t count(Membership m) const;
  bool has_unknown() const { return count(Membership::Unknown) > 0; }
};

/// {σ | M[[S]](σ) ⊆ [[p]]} (Partial) or its strong-partial variant, by
/// running S from every state of the space. Runs out of fuel give Unknown.
WpSet wp_semantic(const Stmt& s, const Expr& post, const StateSpace& space, const DeclSet& decls, Flavor flavor,
                  std::uint64_t fuel, WpMode mode);

class UnsupportedWp : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Weakest precondition computed by the equations for loop-free, call-free
/// statements. Throws UnsupportedWp for loops, calls, internal nodes, and
/// blocks whose locals occur free in the postcondition.
Expr wp_symbolic(const Stmt& s, const Expr& post, WpMode mode);

/// [[p]] restricted to the space, as a membership vector.
std::vector<bool> extension(const Expr& p, const StateSpace& space);

}  // namespace oov
