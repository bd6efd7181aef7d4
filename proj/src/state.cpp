#include "oov/state.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace oov {

Value default_value(BaseType t) {
  switch (t) {
    case BaseType::Integer:
    case BaseType::Nat: return Value::integer(0);
    case BaseType::Boolean: return Value::boolean(false);
    case BaseType::Object: return Value::object(ObjRef::null());
  }
  return Value();
}

namespace {

BaseType type_of_value(const Value& v) {
  if (v.is_int()) return BaseType::Integer;
  if (v.is_bool()) return BaseType::Boolean;
  return BaseType::Object;
}

std::string render_index(const std::vector<Value>& index) {
  std::string out = "[";
  for (std::size_t i = 0; i < index.size(); ++i) {
    if (i > 0) out += ",";
    out += to_string(index[i]);
  }
  return out + "]";
}

}  // namespace

bool operator<(const Location& a, const Location& b) {
  if (a.owner != b.owner) {
    if (!a.owner) return true;
    if (!b.owner) return false;
    return *a.owner < *b.owner;
  }
  if (a.var.name != b.var.name) {
    // `this` leads among normal variables
    if (a.var.name == kThis) return true;
    if (b.var.name == kThis) return false;
    return a.var.name < b.var.name;
  }
  return a.index < b.index;
}

std::string to_string(const Location& l) {
  std::string out;
  if (l.owner) out = to_string(*l.owner) + ".";
  out += l.var.name;
  if (!l.index.empty()) out += render_index(l.index);
  return out;
}

// ---------------------------------------------------------------------------
// State
// ---------------------------------------------------------------------------

State State::lazy() {
  State s;
  s.lazy_ = true;
  return s;
}

const Slot* State::find_slot(const Location& l) const {
  const SlotMap* map = &normals_;
  if (l.owner) {
    auto it = locals_.find(*l.owner);
    if (it == locals_.end()) return nullptr;
    map = &it->second;
  }
  auto it = map->find(l.var.name);
  return it == map->end() ? nullptr : &it->second;
}

std::optional<Value> State::peek(const Location& l) const {
  const Slot* slot = find_slot(l);
  std::optional<Value> fallback;
  if (!lazy_) fallback = default_value(l.var.type.value);
  if (!slot) return fallback;
  if (l.index.empty()) {
    if (const auto* v = std::get_if<Value>(slot)) return *v;
    throw EvalError("array " + l.var.name + " read without subscripts");
  }
  const auto* arr = std::get_if<ArrayVal>(slot);
  if (!arr) throw EvalError(l.var.name + " is not an array");
  auto it = arr->overrides.find(l.index);
  if (it != arr->overrides.end()) return it->second;
  return arr->dflt ? arr->dflt : fallback;
}

Value State::read(const Location& l) const {
  auto v = peek(l);
  if (!v) throw NeedValue(l);
  return *v;
}

Slot* State::slot_for_write(const Location& l) {
  SlotMap& map = l.owner ? locals_[*l.owner] : normals_;
  auto it = map.find(l.var.name);
  if (it == map.end()) {
    if (l.index.empty()) {
      it = map.emplace(l.var.name, default_value(l.var.type.value)).first;
    } else {
      ArrayVal arr;
      if (!lazy_) arr.dflt = default_value(l.var.type.value);
      it = map.emplace(l.var.name, std::move(arr)).first;
    }
  }
  return &it->second;
}

void State::normalize(const Location& l) {
  if (lazy_) return;
  SlotMap& map = l.owner ? locals_[*l.owner] : normals_;
  auto it = map.find(l.var.name);
  if (it != map.end()) {
    const Value dflt = default_value(l.var.type.value);
    bool drop = false;
    if (auto* v = std::get_if<Value>(&it->second)) {
      drop = *v == dflt;
    } else {
      auto& arr = std::get<ArrayVal>(it->second);
      auto cell = arr.overrides.find(l.index);
      if (cell != arr.overrides.end() && arr.dflt && cell->second == *arr.dflt) arr.overrides.erase(cell);
      drop = arr.overrides.empty() && arr.dflt == dflt;
    }
    if (drop) map.erase(it);
  }
  if (l.owner && map.empty()) locals_.erase(*l.owner);
}

void State::write(const Location& l, const Value& v) {
  Slot* slot = slot_for_write(l);
  if (l.index.empty()) {
    if (!std::holds_alternative<Value>(*slot)) throw EvalError("array " + l.var.name + " assigned as a whole");
    *slot = v;
  } else {
    auto* arr = std::get_if<ArrayVal>(slot);
    if (!arr) throw EvalError(l.var.name + " is not an array");
    arr->overrides[l.index] = v;
  }
  normalize(l);
}

void State::erase(const Location& l) {
  if (!lazy_) {
    write(l, default_value(l.var.type.value));
    return;
  }
  SlotMap* map = &normals_;
  if (l.owner) {
    auto it = locals_.find(*l.owner);
    if (it == locals_.end()) return;
    map = &it->second;
  }
  auto it = map->find(l.var.name);
  if (it == map->end()) return;
  if (l.index.empty()) {
    map->erase(it);
  } else if (auto* arr = std::get_if<ArrayVal>(&it->second)) {
    arr->overrides.erase(l.index);
    if (arr->overrides.empty() && !arr->dflt) map->erase(it);
  }
  if (l.owner && map->empty()) locals_.erase(*l.owner);
}

ObjRef State::this_obj() const { return read(Location{this_var(), std::nullopt, {}}).as_object(); }

std::vector<std::pair<Location, Value>> State::entries() const {
  std::vector<std::pair<Location, Value>> out;
  auto add = [&](const SlotMap& map, std::optional<ObjRef> owner) {
    for (const auto& [name, slot] : map) {
      VarKind kind = owner ? VarKind::Instance : VarKind::Normal;
      if (const auto* v = std::get_if<Value>(&slot)) {
        out.push_back({Location{VarRef{kind, name, Type::basic(type_of_value(*v))}, owner, {}}, *v});
        continue;
      }
      for (const auto& [index, v] : std::get<ArrayVal>(slot).overrides) {
        std::vector<BaseType> args;
        for (const auto& i : index) args.push_back(type_of_value(i));
        out.push_back({Location{VarRef{kind, name, Type::array(args, type_of_value(v))}, owner, index}, v});
      }
    }
  };
  add(normals_, std::nullopt);
  for (const auto& [o, map] : locals_) add(map, o);
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

State State::to_strict() const {
  State out;
  for (const auto& [loc, v] : entries()) out.write(loc, v);
  return out;
}

// ---------------------------------------------------------------------------
// Evaluation
// ---------------------------------------------------------------------------

namespace {

const Value* lookup_bound(const EvalContext& ctx, const std::string& name) {
  for (auto it = ctx.env.rbegin(); it != ctx.env.rend(); ++it) {
    if (it->first == name) return &it->second;
  }
  return nullptr;
}

std::vector<Value> eval_all(const State& s, const std::vector<Expr>& es, EvalContext& ctx) {
  std::vector<Value> out;
  out.reserve(es.size());
  for (const auto& e : es) out.push_back(eval(s, e, ctx));
  return out;
}

ObjRef current_object(const State& s, EvalContext& ctx) {
  if (const Value* v = lookup_bound(ctx, kThis)) return v->as_object();
  return s.this_obj();
}

}  // namespace

Location locate(const State& s, const Expr& access, EvalContext& ctx) {
  if (const auto* v = access.as<VarExpr>()) {
    Location l{v->var, std::nullopt, {}};
    if (v->var.is_instance()) l.owner = current_object(s, ctx);
    return l;
  }
  if (const auto* a = access.as<SubExpr>()) {
    Location l{a->array, std::nullopt, eval_all(s, a->index, ctx)};
    if (a->array.is_instance()) l.owner = current_object(s, ctx);
    return l;
  }
  if (const auto* n = access.as<NavExpr>()) {
    ObjRef owner = eval(s, n->base, ctx).as_object();
    return Location{n->field, owner, eval_all(s, n->index, ctx)};
  }
  throw EvalError("not an assignable access");
}

Location locate(const State& s, const Expr& access) {
  EvalContext ctx;
  return locate(s, access, ctx);
}

Value eval(const State& s, const Expr& e, EvalContext& ctx) {
  return std::visit(
      [&](const auto& n) -> Value {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, IntLit>) {
          return Value::integer(n.value);
        } else if constexpr (std::is_same_v<T, BoolLit>) {
          return Value::boolean(n.value);
        } else if constexpr (std::is_same_v<T, NullLit>) {
          return Value::object(ObjRef::null());
        } else if constexpr (std::is_same_v<T, VarExpr>) {
          if (!n.var.is_instance()) {
            if (const Value* b = lookup_bound(ctx, n.var.name)) return *b;
          }
          return s.read(locate(s, e, ctx));
        } else if constexpr (std::is_same_v<T, SubExpr> || std::is_same_v<T, NavExpr>) {
          return s.read(locate(s, e, ctx));
        } else if constexpr (std::is_same_v<T, CondExpr>) {
          return eval(s, n.guard, ctx).as_bool() ? eval(s, n.then_expr, ctx) : eval(s, n.else_expr, ctx);
        } else if constexpr (std::is_same_v<T, UnaryExpr>) {
          Value a = eval(s, n.arg, ctx);
          if (n.op == UnOp::Not) return Value::boolean(!a.as_bool());
          return Value::integer(-a.as_int());
        } else if constexpr (std::is_same_v<T, BinaryExpr>) {
          switch (n.op) {
            case BinOp::And:
              return Value::boolean(eval(s, n.lhs, ctx).as_bool() && eval(s, n.rhs, ctx).as_bool());
            case BinOp::Or:
              return Value::boolean(eval(s, n.lhs, ctx).as_bool() || eval(s, n.rhs, ctx).as_bool());
            case BinOp::Implies:
              return Value::boolean(!eval(s, n.lhs, ctx).as_bool() || eval(s, n.rhs, ctx).as_bool());
            default: break;
          }
          Value a = eval(s, n.lhs, ctx);
          Value b = eval(s, n.rhs, ctx);
          switch (n.op) {
            case BinOp::Add: return Value::integer(a.as_int() + b.as_int());
            case BinOp::Sub: return Value::integer(a.as_int() - b.as_int());
            case BinOp::Mul: return Value::integer(a.as_int() * b.as_int());
            case BinOp::Eq: return Value::boolean(a == b);
            case BinOp::Ne: return Value::boolean(a != b);
            case BinOp::Lt: return Value::boolean(a.as_int() < b.as_int());
            case BinOp::Le: return Value::boolean(a.as_int() <= b.as_int());
            case BinOp::Gt: return Value::boolean(a.as_int() > b.as_int());
            case BinOp::Ge: return Value::boolean(a.as_int() >= b.as_int());
            default: break;
          }
          throw EvalError("unknown operator");
        } else {
          if (!ctx.universe) throw EvalError("quantifier evaluated without a universe");
          const bool forall = n.q == Quantifier::Forall;
          for (const auto& d : ctx.universe->domain(n.var.type.value)) {
            ctx.env.emplace_back(n.var.name, d);
            bool holds;
            try {
              holds = eval(s, n.body, ctx).as_bool();
            } catch (...) {
              ctx.env.pop_back();
              throw;
            }
            ctx.env.pop_back();
            if (holds != forall) return Value::boolean(!forall);
          }
          return Value::boolean(forall);
        }
      },
      e.node().v);
}

Value eval(const State& s, const Expr& e) {
  EvalContext ctx;
  return eval(s, e, ctx);
}

// ---------------------------------------------------------------------------
// Updates
// ---------------------------------------------------------------------------

Outcome update(const Outcome& out, const Expr& target, const Value& d) {
  if (out.is_fail()) return out;
  State s = out.state();
  s.write(locate(s, target), d);
  return s;
}

Outcome update_parallel(const Outcome& out, const std::vector<VarRef>& targets, const std::vector<Value>& values) {
  if (targets.size() != values.size()) throw std::invalid_argument("parallel update arity mismatch");
  std::set<std::string> seen;
  for (const auto& t : targets) {
    if (!seen.insert(t.name).second) throw std::invalid_argument("parallel update repeats " + t.name);
    if (t.is_instance() || t.is_array()) {
      throw std::invalid_argument("parallel update target " + t.name + " must be simple and normal");
    }
  }
  if (out.is_fail()) return out;
  State s = out.state();
  for (std::size_t i = 0; i < targets.size(); ++i) s.write(Location{targets[i], std::nullopt, {}}, values[i]);
  return s;
}

bool states_equal(const State& a, const State& b) { return a == b; }

bool states_equal(const Outcome& a, const Outcome& b) {
  if (a.is_fail() || b.is_fail()) return a.is_fail() && b.is_fail();
  return states_equal(a.state(), b.state());
}

std::string to_string(const State& s) {
  std::ostringstream os;
  os << "state {";
  for (const auto& [loc, v] : s.entries()) os << " " << to_string(loc) << "=" << to_string(v) << ";";
  os << " }";
  return os.str();
}

std::string to_string(const Outcome& o) { return o.is_fail() ? "fail" : to_string(o.state()); }

}  // namespace oov
