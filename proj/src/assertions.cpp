#include "oov/assertions.hpp"

#include <map>
#include <stdexcept>

namespace oov {

bool eval_assertion(const State& s, const Expr& p, const Universe& u) {
  EvalContext ctx;
  ctx.universe = &u;
  return eval(s, p, ctx).as_bool();
}

namespace {

std::vector<Expr> map_all(const std::vector<Expr>& es, const auto& f) {
  std::vector<Expr> out;
  out.reserve(es.size());
  for (const auto& e : es) out.push_back(f(e));
  return out;
}

/// Rebuilds `e` with `f` applied to every direct subexpression. Quantifiers
/// are not handled here.
template <class F>
Expr map_children(const Expr& e, const F& f) {
  return std::visit(
      [&](const auto& n) -> Expr {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, SubExpr>) {
          return ex::sub(n.array, map_all(n.index, f));
        } else if constexpr (std::is_same_v<T, NavExpr>) {
          return ex::nav(f(n.base), n.field, map_all(n.index, f));
        } else if constexpr (std::is_same_v<T, CondExpr>) {
          return ex::cond(f(n.guard), f(n.then_expr), f(n.else_expr));
        } else if constexpr (std::is_same_v<T, UnaryExpr>) {
          return ex::unary(n.op, f(n.arg));
        } else if constexpr (std::is_same_v<T, BinaryExpr>) {
          return ex::binary(n.op, f(n.lhs), f(n.rhs));
        } else if constexpr (std::is_same_v<T, QuantExpr>) {
          throw std::logic_error("map_children on a quantifier");
        } else {
          return e;
        }
      },
      e.node().v);
}

void collect_names(const Expr& e, NameSet& out) {
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, VarExpr>) {
          out.insert(n.var.name);
          if (n.var.is_instance()) out.insert(kThis);
        } else if constexpr (std::is_same_v<T, SubExpr>) {
          out.insert(n.array.name);
          if (n.array.is_instance()) out.insert(kThis);
          for (const auto& i : n.index) collect_names(i, out);
        } else if constexpr (std::is_same_v<T, NavExpr>) {
          out.insert(n.field.name);
          collect_names(n.base, out);
          for (const auto& i : n.index) collect_names(i, out);
        } else if constexpr (std::is_same_v<T, CondExpr>) {
          collect_names(n.guard, out);
          collect_names(n.then_expr, out);
          collect_names(n.else_expr, out);
        } else if constexpr (std::is_same_v<T, UnaryExpr>) {
          collect_names(n.arg, out);
        } else if constexpr (std::is_same_v<T, BinaryExpr>) {
          collect_names(n.lhs, out);
          collect_names(n.rhs, out);
        } else if constexpr (std::is_same_v<T, QuantExpr>) {
          out.insert(n.var.name);
          collect_names(n.body, out);
        }
      },
      e.node().v);
}

/// Renames the bound variable of a quantifier to a name outside `avoid`.
QuantExpr freshen(const QuantExpr& q, NameSet avoid) {
  collect_names(q.body, avoid);
  avoid.insert(q.var.name);
  VarRef fresh = normal_var(fresh_name(q.var.name, avoid), q.var.type);
  return QuantExpr{q.q, fresh, rename(q.body, {q.var}, {fresh})};
}

// ---------------------------------------------------------------------------
// Single substitution
// ---------------------------------------------------------------------------

class Substituter {
 public:
  Substituter(const Expr& target, Expr value) : value_(std::move(value)) {
    if (const auto* v = target.as<VarExpr>()) {
      var_ = v->var;
    } else if (const auto* a = target.as<SubExpr>()) {
      var_ = a->array;
      index_ = a->index;
    } else {
      throw std::invalid_argument("substitution target must be a simple or subscripted variable");
    }
    if (var_.name == kThis) throw std::invalid_argument("substitution for this is not supported");
    if (var_.is_array() == index_.empty()) throw std::invalid_argument("target shape does not match " + var_.name);
    // names the result may introduce next to existing ones
    capture_ = free_vars(value_);
    for (const auto& i : index_) {
      NameSet f = free_vars(i);
      capture_.insert(f.begin(), f.end());
    }
    if (var_.is_instance()) capture_.insert(kThis);
  }

  Expr operator()(const Expr& s) const {
    if (const auto* v = s.as<VarExpr>()) {
      if (v->var.name != var_.name || var_.is_array()) return s;
      if (!var_.is_instance()) return value_;
      // bare u abbreviates this.u; this[u:=t] is this
      return ex::cond(ex::eq(ex::this_(), ex::this_()), value_, s);
    }
    if (const auto* a = s.as<SubExpr>()) {
      std::vector<Expr> idx = map_all(a->index, *this);
      if (a->array.name != var_.name) return ex::sub(a->array, idx);
      std::vector<Expr> conds;
      if (var_.is_instance()) conds.push_back(ex::eq(ex::this_(), ex::this_()));
      for (std::size_t i = 0; i < idx.size(); ++i) conds.push_back(ex::eq(idx[i], index_[i]));
      return ex::cond(ex::conj(conds), value_, ex::sub(a->array, idx));
    }
    if (const auto* n = s.as<NavExpr>()) {
      Expr base = (*this)(n->base);
      std::vector<Expr> idx = map_all(n->index, *this);
      if (!var_.is_instance() || n->field.name != var_.name) return ex::nav(base, n->field, idx);
      std::vector<Expr> conds{ex::eq(base, ex::this_())};
      for (std::size_t i = 0; i < idx.size(); ++i) conds.push_back(ex::eq(idx[i], index_[i]));
      return ex::cond(ex::conj(conds), value_, ex::nav(base, n->field, idx));
    }
    if (const auto* q = s.as<QuantExpr>()) {
      if (!var_.is_instance() && !var_.is_array() && q->var.name == var_.name) return s;
      QuantExpr qq = *q;
      if (capture_.count(q->var.name)) {
        NameSet avoid = capture_;
        avoid.insert(var_.name);
        qq = freshen(*q, avoid);
      }
      return ex::quant(qq.q, qq.var, (*this)(qq.body));
    }
    return map_children(s, *this);
  }

 private:
  VarRef var_;
  std::vector<Expr> index_;
  Expr value_;
  NameSet capture_;
};

// ---------------------------------------------------------------------------
// Parallel substitution of simple normal variables
// ---------------------------------------------------------------------------

class ParSubstituter {
 public:
  explicit ParSubstituter(std::map<std::string, Expr> map) : map_(std::move(map)) {}

  Expr operator()(const Expr& s) const {
    if (map_.empty()) return s;
    if (const auto* v = s.as<VarExpr>()) {
      if (v->var.is_instance()) {
        auto self = map_.find(kThis);
        return self == map_.end() ? s : ex::nav(self->second, v->var);
      }
      auto it = map_.find(v->var.name);
      return it == map_.end() ? s : it->second;
    }
    if (const auto* a = s.as<SubExpr>()) {
      std::vector<Expr> idx = map_all(a->index, *this);
      if (a->array.is_instance()) {
        auto self = map_.find(kThis);
        if (self != map_.end()) return ex::nav(self->second, a->array, idx);
      }
      return ex::sub(a->array, idx);
    }
    if (const auto* q = s.as<QuantExpr>()) {
      std::map<std::string, Expr> inner = map_;
      inner.erase(q->var.name);
      NameSet capture;
      for (const auto& [name, t] : inner) {
        NameSet f = free_vars(t);
        capture.insert(f.begin(), f.end());
      }
      QuantExpr qq = *q;
      if (capture.count(q->var.name)) {
        for (const auto& [name, t] : inner) capture.insert(name);
        qq = freshen(*q, capture);
      }
      return ex::quant(qq.q, qq.var, ParSubstituter(std::move(inner))(qq.body));
    }
    return map_children(s, *this);
  }

 private:
  std::map<std::string, Expr> map_;
};

class Renamer {
 public:
  explicit Renamer(std::map<std::string, VarRef> map) : map_(std::move(map)) {}

  Expr operator()(const Expr& s) const {
    if (map_.empty()) return s;
    if (const auto* v = s.as<VarExpr>()) {
      if (v->var.is_instance()) return s;
      auto it = map_.find(v->var.name);
      return it == map_.end() ? s : ex::var(it->second);
    }
    if (const auto* a = s.as<SubExpr>()) {
      std::vector<Expr> idx = map_all(a->index, *this);
      auto it = a->array.is_instance() ? map_.end() : map_.find(a->array.name);
      return ex::sub(it == map_.end() ? a->array : it->second, idx);
    }
    if (const auto* q = s.as<QuantExpr>()) {
      std::map<std::string, VarRef> inner = map_;
      inner.erase(q->var.name);
      bool clash = false;
      for (const auto& [name, y] : inner) clash |= y.name == q->var.name;
      QuantExpr qq = *q;
      if (clash) {
        NameSet avoid;
        for (const auto& [name, y] : inner) {
          avoid.insert(name);
          avoid.insert(y.name);
        }
        qq = freshen(*q, avoid);
      }
      return ex::quant(qq.q, qq.var, Renamer(std::move(inner))(qq.body));
    }
    return map_children(s, *this);
  }

 private:
  std::map<std::string, VarRef> map_;
};

// ---------------------------------------------------------------------------
// Normalization
// ---------------------------------------------------------------------------

bool is_true(const Expr& e) {
  const auto* b = e.as<BoolLit>();
  return b && b->value;
}
bool is_false(const Expr& e) {
  const auto* b = e.as<BoolLit>();
  return b && !b->value;
}

Expr simplify_node(const Expr& e) {
  if (const auto* c = e.as<CondExpr>()) {
    if (is_true(c->guard)) return c->then_expr;
    if (is_false(c->guard)) return c->else_expr;
    if (alpha_equal(c->then_expr, c->else_expr)) return c->then_expr;
    return e;
  }
  if (const auto* u = e.as<UnaryExpr>()) {
    if (u->op == UnOp::Not) {
      if (const auto* b = u->arg.as<BoolLit>()) return ex::bool_lit(!b->value);
    }
    return e;
  }
  if (const auto* b = e.as<BinaryExpr>()) {
    switch (b->op) {
      case BinOp::Eq:
      case BinOp::Le:
      case BinOp::Ge:
        if (alpha_equal(b->lhs, b->rhs)) return ex::true_();
        return e;
      case BinOp::Ne:
      case BinOp::Lt:
      case BinOp::Gt:
        if (alpha_equal(b->lhs, b->rhs)) return ex::false_();
        return e;
      case BinOp::And:
        if (is_true(b->lhs)) return b->rhs;
        if (is_true(b->rhs)) return b->lhs;
        if (is_false(b->lhs) || is_false(b->rhs)) return ex::false_();
        return e;
      case BinOp::Or:
        if (is_false(b->lhs)) return b->rhs;
        if (is_false(b->rhs)) return b->lhs;
        if (is_true(b->lhs) || is_true(b->rhs)) return ex::true_();
        return e;
      case BinOp::Implies:
        if (is_true(b->lhs)) return b->rhs;
        if (is_false(b->lhs) || is_true(b->rhs)) return ex::true_();
        return e;
      default: return e;
    }
  }
  if (const auto* q = e.as<QuantExpr>()) {
    if (q->body.is<BoolLit>()) return q->body;
  }
  return e;
}

Expr simplify_rec(const Expr& e) {
  if (const auto* q = e.as<QuantExpr>()) return simplify_node(ex::quant(q->q, q->var, simplify_rec(q->body)));
  return simplify_node(map_children(e, simplify_rec));
}

Expr expand_rec(const Expr& e) {
  if (const auto* v = e.as<VarExpr>()) {
    return v->var.is_instance() ? ex::nav(ex::this_(), v->var) : e;
  }
  if (const auto* a = e.as<SubExpr>()) {
    std::vector<Expr> idx = map_all(a->index, expand_rec);
    return a->array.is_instance() ? ex::nav(ex::this_(), a->array, idx) : ex::sub(a->array, idx);
  }
  if (const auto* q = e.as<QuantExpr>()) return ex::quant(q->q, q->var, expand_rec(q->body));
  return map_children(e, expand_rec);
}

using BoundStack = std::vector<std::string>;

int bound_depth(const BoundStack& env, const std::string& name) {
  for (std::size_t i = env.size(); i-- > 0;) {
    if (env[i] == name) return static_cast<int>(i);
  }
  return -1;
}

bool alpha_rec(const Expr& a, const Expr& b, BoundStack& ea, BoundStack& eb);

bool alpha_all(const std::vector<Expr>& a, const std::vector<Expr>& b, BoundStack& ea, BoundStack& eb) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!alpha_rec(a[i], b[i], ea, eb)) return false;
  }
  return true;
}

bool alpha_rec(const Expr& a, const Expr& b, BoundStack& ea, BoundStack& eb) {
  if (a.get() == b.get() && ea == eb) return true;
  if (a.node().v.index() != b.node().v.index()) return false;
  return std::visit(
      [&](const auto& x) -> bool {
        using T = std::decay_t<decltype(x)>;
        const auto& y = std::get<T>(b.node().v);
        if constexpr (std::is_same_v<T, IntLit> || std::is_same_v<T, BoolLit>) {
          return x.value == y.value;
        } else if constexpr (std::is_same_v<T, NullLit>) {
          return true;
        } else if constexpr (std::is_same_v<T, VarExpr>) {
          if (x.var.kind != y.var.kind || x.var.type != y.var.type) return false;
          if (x.var.is_instance()) return x.var.name == y.var.name;
          int da = bound_depth(ea, x.var.name);
          int db = bound_depth(eb, y.var.name);
          if (da != db) return false;
          return da >= 0 || x.var.name == y.var.name;
        } else if constexpr (std::is_same_v<T, SubExpr>) {
          return x.array == y.array && alpha_all(x.index, y.index, ea, eb);
        } else if constexpr (std::is_same_v<T, NavExpr>) {
          return x.field == y.field && alpha_rec(x.base, y.base, ea, eb) && alpha_all(x.index, y.index, ea, eb);
        } else if constexpr (std::is_same_v<T, CondExpr>) {
          return alpha_rec(x.guard, y.guard, ea, eb) && alpha_rec(x.then_expr, y.then_expr, ea, eb) &&
                 alpha_rec(x.else_expr, y.else_expr, ea, eb);
        } else if constexpr (std::is_same_v<T, UnaryExpr>) {
          return x.op == y.op && alpha_rec(x.arg, y.arg, ea, eb);
        } else if constexpr (std::is_same_v<T, BinaryExpr>) {
          return x.op == y.op && alpha_rec(x.lhs, y.lhs, ea, eb) && alpha_rec(x.rhs, y.rhs, ea, eb);
        } else {
          if (x.q != y.q || x.var.type != y.var.type) return false;
          ea.push_back(x.var.name);
          eb.push_back(y.var.name);
          bool r = alpha_rec(x.body, y.body, ea, eb);
          ea.pop_back();
          eb.pop_back();
          return r;
        }
      },
      a.node().v);
}

}  // namespace

Expr substitute(const Expr& s, const Expr& target, const Expr& t) { return Substituter(target, t)(s); }

Expr substitute_parallel(const Expr& s, const std::vector<VarRef>& targets, const std::vector<Expr>& values) {
  if (targets.size() != values.size()) throw std::invalid_argument("parallel substitution arity mismatch");
  std::map<std::string, Expr> map;
  for (std::size_t i = 0; i < targets.size(); ++i) {
    if (targets[i].is_instance() || targets[i].is_array()) {
      throw std::invalid_argument("parallel substitution targets must be simple normal variables");
    }
    if (!map.emplace(targets[i].name, values[i]).second) {
      throw std::invalid_argument("parallel substitution repeats " + targets[i].name);
    }
  }
  return ParSubstituter(std::move(map))(s);
}

Expr rename(const Expr& p, const std::vector<VarRef>& xs, const std::vector<VarRef>& ys) {
  if (xs.size() != ys.size()) throw std::invalid_argument("rename: length mismatch");
  std::map<std::string, VarRef> map;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (xs[i].type != ys[i].type) throw std::invalid_argument("rename: type mismatch for " + xs[i].name);
    if (xs[i].is_instance() || ys[i].is_instance()) throw std::invalid_argument("rename: instance variable");
    map.emplace(xs[i].name, ys[i]);
  }
  return Renamer(std::move(map))(p);
}

std::string fresh_name(const std::string& base, const NameSet& avoid) {
  std::string stem = base.substr(0, base.find('#'));
  for (unsigned n = 1;; ++n) {
    std::string cand = stem + "#" + std::to_string(n);
    if (!avoid.count(cand)) return cand;
  }
}

NameSet all_names(const Expr& e) {
  NameSet out;
  collect_names(e, out);
  return out;
}

Expr simplify(const Expr& e) { return simplify_rec(e); }

Expr normal_form(const Expr& e) { return simplify_rec(expand_rec(e)); }

bool alpha_equal(const Expr& a, const Expr& b) {
  BoundStack ea;
  BoundStack eb;
  return alpha_rec(a, b, ea, eb);
}

bool equivalent_syntax(const Expr& a, const Expr& b) { return alpha_equal(normal_form(a), normal_form(b)); }

}  // namespace oov
