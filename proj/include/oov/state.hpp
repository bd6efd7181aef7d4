#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "oov/syntax.hpp"
#include "oov/universe.hpp"
#include "oov/value.hpp"

namespace oov {

/// Value of type T for entries a state does not mention: 0, false, null.
Value default_value(BaseType t);

/// A single storage cell: a normal variable (owner empty) or an instance
/// variable of a given object, optionally subscripted.
struct Location {
  VarRef var;
  std::optional<ObjRef> owner;
  std::vector<Value> index;

  friend bool operator==(const Location& a, const Location& b) {
    return a.var.name == b.var.name && a.owner == b.owner && a.index == b.index;
  }
  friend bool operator<(const Location& a, const Location& b);
};
std::string to_string(const Location& l);

/// Array value: a default plus finitely many overridden cells. In a lazy
/// state the default is absent and unlisted cells are undetermined.
struct ArrayVal {
  std::optional<Value> dflt;
  std::map<std::vector<Value>, Value> overrides;

  friend bool operator==(const ArrayVal&, const ArrayVal&) = default;
};

using Slot = std::variant<Value, ArrayVal>;
using SlotMap = std::map<std::string, Slot>;

/// Raised when a lazy state is asked for a location it does not determine.
class NeedValue : public std::exception {
 public:
  explicit NeedValue(Location loc) : loc_(std::move(loc)), what_("undetermined " + to_string(loc_)) {}
  const Location& location() const { return loc_; }
  const char* what() const noexcept override { return what_.c_str(); }

 private:
  Location loc_;
  std::string what_;
};

class EvalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A proper state. Strict states are total: absent entries hold the
/// type default and the representation is kept normalized. Lazy states are
/// partial and raise NeedValue on reads of absent entries.
class State {
 public:
  State() = default;
  static State lazy();

  bool is_lazy() const { return lazy_; }

  /// Value stored at the location; strict states fall back to the default,
  /// lazy states return nullopt for undetermined cells.
  std::optional<Value> peek(const Location& l) const;
  Value read(const Location& l) const;
  void write(const Location& l, const Value& v);
  /// Forgets a cell (lazy states only; strict states reset it to default).
  void erase(const Location& l);

  ObjRef this_obj() const;

  const SlotMap& normals() const { return normals_; }
  const std::map<ObjRef, SlotMap>& locals() const { return locals_; }

  /// All explicitly stored cells in a canonical order.
  std::vector<std::pair<Location, Value>> entries() const;

  /// Converts a lazy state to a strict one by defaulting undetermined cells.
  State to_strict() const;

  friend bool operator==(const State&, const State&) = default;

 private:
  const Slot* find_slot(const Location& l) const;
  Slot* slot_for_write(const Location& l);
  void normalize(const Location& l);

  bool lazy_ = false;
  SlotMap normals_;
  std::map<ObjRef, SlotMap> locals_;
};

/// Proper state or the distinguished fail outcome.
class Outcome {
 public:
  Outcome(State s) : state_(std::move(s)) {}  // NOLINT(google-explicit-constructor)
  static Outcome fail() { return Outcome(); }

  bool is_fail() const { return !state_.has_value(); }
  const State& state() const { return *state_; }
  State& state() { return *state_; }

  friend bool operator==(const Outcome&, const Outcome&) = default;

 private:
  Outcome() = default;
  std::optional<State> state_;
};

/// Values of quantifier-bound variables, innermost last.
using Env = std::vector<std::pair<std::string, Value>>;

struct EvalContext {
  /// Needed only for quantifiers.
  const Universe* universe = nullptr;
  Env env;
};

Value eval(const State& s, const Expr& e, EvalContext& ctx);
Value eval(const State& s, const Expr& e);

/// Location denoted by a simple, subscripted or navigation access.
Location locate(const State& s, const Expr& access, EvalContext& ctx);
Location locate(const State& s, const Expr& access);

/// σ[u := d] for a simple or subscripted, normal or instance target.
Outcome update(const Outcome& out, const Expr& target, const Value& d);
/// σ[x̄ := d̄] for distinct simple normal variables.
Outcome update_parallel(const Outcome& out, const std::vector<VarRef>& targets,
                        const std::vector<Value>& values);

bool states_equal(const State& a, const State& b);
bool states_equal(const Outcome& a, const Outcome& b);

/// State-literal rendering: `state { this=o1; x=5; o1.next=o2; a[1,2]=7; }`.
std::string to_string(const State& s);
std::string to_string(const Outcome& o);

}  // namespace oov
