#pragma once

#include <cstdint>
#include <random>

#include "oov/state.hpp"
#include "oov/syntax.hpp"
#include "oov/universe.hpp"

namespace oov {

/// Deterministic source of randomness for the property suites.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}
  /// Uniform in [lo, hi].
  int range(int lo, int hi);
  bool chance(double p);
  template <class T>
  const T& pick(const std::vector<T>& xs) {
    return xs[static_cast<std::size_t>(range(0, static_cast<int>(xs.size()) - 1))];
  }
  std::mt19937_64& engine() { return eng_; }

 private:
  std::mt19937_64 eng_;
};

/// Fixed vocabulary the generators draw from. Normals x, y (integer),
/// b (boolean), p, q (object), arr (integer -> integer); instance variables
/// f (integer), g (boolean), nx (object), h (integer -> integer); bound
/// variables i (integer) and o (object) for quantifiers.
struct Vocabulary {
  VarRef x, y, b, p, q, arr;
  VarRef f, g, nx, h;
  VarRef i, o;
  /// Method formal and block local.
  VarRef n, w;

  Vocabulary();
  Signature signature() const;
};

const Vocabulary& vocab();

struct ExprGenOptions {
  int depth = 3;
  /// Navigation expressions e.x (assertion level).
  bool navigation = false;
  /// Allow instance variables.
  bool instance = true;
  /// Allow the method formal `n`.
  bool formal = false;
};

Expr gen_expr(Rng& r, BaseType t, const ExprGenOptions& o);
/// Boolean global expression with quantifiers over i and o.
Expr gen_assertion(Rng& r, const ExprGenOptions& o);

/// Object-oriented program over the vocabulary: up to three methods m1..m3
/// with one integer formal, recursion guarded by `n > 0` on a decreasing
/// argument, statement depth at most 4. The result typechecks.
Program gen_oo_program(Rng& r);

/// Proper state over the vocabulary: every simple variable and instance
/// variable of every object (null included) set, a few array cells set.
/// `this` is never null.
State gen_state(Rng& r, const Universe& u);

/// Loop-free, call-free kernel statement over x, y, b and arr, with
/// failure statements and blocks over the local w.
Stmt gen_loop_free(Rng& r, int depth);

}  // namespace oov
