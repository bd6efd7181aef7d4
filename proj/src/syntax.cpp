#include "oov/syntax.hpp"

#include <algorithm>
#include <sstream>

namespace oov {

// ---------------------------------------------------------------------------
// Types and variables
// ---------------------------------------------------------------------------

bool compatible(BaseType a, BaseType b) {
  auto numeric = [](BaseType t) { return t == BaseType::Integer || t == BaseType::Nat; };
  return a == b || (numeric(a) && numeric(b));
}

std::string to_string(BaseType b) {
  switch (b) {
    case BaseType::Integer: return "integer";
    case BaseType::Boolean: return "boolean";
    case BaseType::Object: return "object";
    case BaseType::Nat: return "nat";
  }
  return "?";
}

std::string to_string(const Type& t) {
  std::string out;
  for (std::size_t i = 0; i < t.args.size(); ++i) {
    if (i > 0) out += " * ";
    out += to_string(t.args[i]);
  }
  if (!t.args.empty()) out += " -> ";
  return out + to_string(t.value);
}

VarRef this_var() { return VarRef{VarKind::Normal, kThis, Type::basic(BaseType::Object)}; }
VarRef normal_var(std::string name, Type t) { return VarRef{VarKind::Normal, std::move(name), std::move(t)}; }
VarRef instance_var(std::string name, Type t) {
  return VarRef{VarKind::Instance, std::move(name), std::move(t)};
}

std::string to_string(const SourceLoc& loc) {
  return std::to_string(loc.line) + ":" + std::to_string(loc.column);
}

// ---------------------------------------------------------------------------
// Expressions
// ---------------------------------------------------------------------------

namespace {

template <class T>
Expr make_expr(T node) {
  return Expr(std::make_shared<const ExprNode>(ExprNode{std::move(node)}));
}

bool same_list(const std::vector<Expr>& a, const std::vector<Expr>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] != b[i]) return false;
  }
  return true;
}

struct ExprEq {
  bool operator()(const IntLit& a, const IntLit& b) const { return a.value == b.value; }
  bool operator()(const BoolLit& a, const BoolLit& b) const { return a.value == b.value; }
  bool operator()(const NullLit&, const NullLit&) const { return true; }
  bool operator()(const VarExpr& a, const VarExpr& b) const { return a.var == b.var; }
  bool operator()(const SubExpr& a, const SubExpr& b) const {
    return a.array == b.array && same_list(a.index, b.index);
  }
  bool operator()(const NavExpr& a, const NavExpr& b) const {
    return a.field == b.field && a.base == b.base && same_list(a.index, b.index);
  }
  bool operator()(const CondExpr& a, const CondExpr& b) const {
    return a.guard == b.guard && a.then_expr == b.then_expr && a.else_expr == b.else_expr;
  }
  bool operator()(const UnaryExpr& a, const UnaryExpr& b) const { return a.op == b.op && a.arg == b.arg; }
  bool operator()(const BinaryExpr& a, const BinaryExpr& b) const {
    return a.op == b.op && a.lhs == b.lhs && a.rhs == b.rhs;
  }
  bool operator()(const QuantExpr& a, const QuantExpr& b) const {
    return a.q == b.q && a.var == b.var && a.body == b.body;
  }
  template <class A, class B>
  bool operator()(const A&, const B&) const {
    return false;
  }
};

}  // namespace

bool operator==(const Expr& a, const Expr& b) {
  if (a.get() == b.get()) return true;
  if (!a || !b) return false;
  return std::visit(ExprEq{}, a.node().v, b.node().v);
}

namespace ex {
Expr int_lit(Int v) { return make_expr(IntLit{std::move(v)}); }
Expr bool_lit(bool b) { return make_expr(BoolLit{b}); }
Expr true_() { return bool_lit(true); }
Expr false_() { return bool_lit(false); }
Expr null() { return make_expr(NullLit{}); }
Expr var(const VarRef& v) { return make_expr(VarExpr{v}); }
Expr this_() { return var(this_var()); }
Expr sub(const VarRef& a, std::vector<Expr> index) { return make_expr(SubExpr{a, std::move(index)}); }
Expr nav(Expr base, const VarRef& field, std::vector<Expr> index) {
  return make_expr(NavExpr{std::move(base), field, std::move(index)});
}
Expr cond(Expr g, Expr t, Expr e) { return make_expr(CondExpr{std::move(g), std::move(t), std::move(e)}); }
Expr unary(UnOp op, Expr a) { return make_expr(UnaryExpr{op, std::move(a)}); }
Expr binary(BinOp op, Expr l, Expr r) { return make_expr(BinaryExpr{op, std::move(l), std::move(r)}); }
Expr not_(Expr a) { return unary(UnOp::Not, std::move(a)); }
Expr neg(Expr a) { return unary(UnOp::Neg, std::move(a)); }
Expr and_(Expr l, Expr r) { return binary(BinOp::And, std::move(l), std::move(r)); }
Expr or_(Expr l, Expr r) { return binary(BinOp::Or, std::move(l), std::move(r)); }
Expr implies(Expr l, Expr r) { return binary(BinOp::Implies, std::move(l), std::move(r)); }
Expr eq(Expr l, Expr r) { return binary(BinOp::Eq, std::move(l), std::move(r)); }
Expr ne(Expr l, Expr r) { return binary(BinOp::Ne, std::move(l), std::move(r)); }
Expr quant(Quantifier q, const VarRef& v, Expr body) { return make_expr(QuantExpr{q, v, std::move(body)}); }
Expr forall(const VarRef& v, Expr body) { return quant(Quantifier::Forall, v, std::move(body)); }
Expr exists(const VarRef& v, Expr body) { return quant(Quantifier::Exists, v, std::move(body)); }
Expr conj(const std::vector<Expr>& items) {
  if (items.empty()) return true_();
  Expr out = items.front();
  for (std::size_t i = 1; i < items.size(); ++i) out = and_(out, items[i]);
  return out;
}
}  // namespace ex

namespace {
BaseType widen(BaseType a, BaseType b) {
  if (a == BaseType::Nat && b == BaseType::Integer) return BaseType::Integer;
  return a;
}
}  // namespace

BaseType type_of(const Expr& e) {
  return std::visit(
      [](const auto& n) -> BaseType {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, IntLit>) {
          return BaseType::Integer;
        } else if constexpr (std::is_same_v<T, BoolLit>) {
          return BaseType::Boolean;
        } else if constexpr (std::is_same_v<T, NullLit>) {
          return BaseType::Object;
        } else if constexpr (std::is_same_v<T, VarExpr>) {
          return n.var.type.value;
        } else if constexpr (std::is_same_v<T, SubExpr>) {
          return n.array.type.value;
        } else if constexpr (std::is_same_v<T, NavExpr>) {
          return n.field.type.value;
        } else if constexpr (std::is_same_v<T, CondExpr>) {
          return widen(type_of(n.then_expr), type_of(n.else_expr));
        } else if constexpr (std::is_same_v<T, UnaryExpr>) {
          return n.op == UnOp::Not ? BaseType::Boolean : BaseType::Integer;
        } else if constexpr (std::is_same_v<T, BinaryExpr>) {
          switch (n.op) {
            case BinOp::Add:
            case BinOp::Sub:
            case BinOp::Mul: return BaseType::Integer;
            default: return BaseType::Boolean;
          }
        } else {
          return BaseType::Boolean;
        }
      },
      e.node().v);
}

// ---------------------------------------------------------------------------
// Statements
// ---------------------------------------------------------------------------

namespace {

template <class T>
Stmt make_stmt(T node, SourceLoc loc = {}) {
  return Stmt(std::make_shared<const StmtNode>(StmtNode{std::move(node), loc}));
}

bool same_stmts(const std::vector<Stmt>& a, const std::vector<Stmt>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] != b[i]) return false;
  }
  return true;
}

struct StmtEq {
  bool operator()(const SkipStmt&, const SkipStmt&) const { return true; }
  bool operator()(const EmptyStmt&, const EmptyStmt&) const { return true; }
  bool operator()(const AssignStmt& a, const AssignStmt& b) const {
    return a.target == b.target && a.value == b.value;
  }
  bool operator()(const ParAssignStmt& a, const ParAssignStmt& b) const {
    return a.targets == b.targets && same_list(a.values, b.values);
  }
  bool operator()(const SeqStmt& a, const SeqStmt& b) const { return same_stmts(a.items, b.items); }
  bool operator()(const IfStmt& a, const IfStmt& b) const {
    return a.cond == b.cond && a.then_branch == b.then_branch && a.else_branch == b.else_branch;
  }
  bool operator()(const FailIfStmt& a, const FailIfStmt& b) const {
    return a.cond == b.cond && a.body == b.body;
  }
  bool operator()(const WhileStmt& a, const WhileStmt& b) const {
    return a.cond == b.cond && a.body == b.body;
  }
  bool operator()(const BlockStmt& a, const BlockStmt& b) const {
    return a.locals == b.locals && same_list(a.inits, b.inits) && a.body == b.body;
  }
  bool operator()(const MethodCallStmt& a, const MethodCallStmt& b) const {
    return a.method == b.method && a.callee == b.callee && same_list(a.args, b.args);
  }
  bool operator()(const ProcCallStmt& a, const ProcCallStmt& b) const {
    return a.proc == b.proc && same_list(a.args, b.args);
  }
  bool operator()(const RestoreStmt& a, const RestoreStmt& b) const {
    return a.targets == b.targets && a.values == b.values;
  }
  template <class A, class B>
  bool operator()(const A&, const B&) const {
    return false;
  }
};

}  // namespace

SourceLoc Stmt::loc() const { return node_ ? node_->loc : SourceLoc{}; }

bool operator==(const Stmt& a, const Stmt& b) {
  if (a.node_.get() == b.node_.get()) return true;
  if (!a || !b) return false;
  return std::visit(StmtEq{}, a.node().v, b.node().v);
}

namespace st {
Stmt skip(SourceLoc loc) { return make_stmt(SkipStmt{}, loc); }
Stmt empty() { return make_stmt(EmptyStmt{}); }
Stmt assign(Expr target, Expr value, SourceLoc loc) {
  return make_stmt(AssignStmt{std::move(target), std::move(value)}, loc);
}
Stmt par_assign(std::vector<VarRef> targets, std::vector<Expr> values, SourceLoc loc) {
  if (targets.size() == 1 && values.size() == 1) return assign(ex::var(targets[0]), values[0], loc);
  return make_stmt(ParAssignStmt{std::move(targets), std::move(values)}, loc);
}
Stmt seq(std::vector<Stmt> items, SourceLoc loc) {
  std::vector<Stmt> flat;
  for (auto& s : items) {
    if (const auto* q = s.as<SeqStmt>()) {
      flat.insert(flat.end(), q->items.begin(), q->items.end());
    } else {
      flat.push_back(std::move(s));
    }
  }
  if (flat.empty()) return skip(loc);
  if (flat.size() == 1) return flat.front();
  if (loc.line == 0) loc = flat.front().loc();
  return make_stmt(SeqStmt{std::move(flat)}, loc);
}
Stmt seq(Stmt a, Stmt b) { return seq(std::vector<Stmt>{std::move(a), std::move(b)}); }
Stmt if_(Expr c, Stmt t, Stmt e, SourceLoc loc) {
  return make_stmt(IfStmt{std::move(c), std::move(t), std::move(e)}, loc);
}
Stmt fail_if(Expr c, Stmt body, SourceLoc loc) { return make_stmt(FailIfStmt{std::move(c), std::move(body)}, loc); }
Stmt while_(Expr c, Stmt body, SourceLoc loc) { return make_stmt(WhileStmt{std::move(c), std::move(body)}, loc); }
Stmt block(std::vector<VarRef> locals, std::vector<Expr> inits, Stmt body, SourceLoc loc) {
  return make_stmt(BlockStmt{std::move(locals), std::move(inits), std::move(body)}, loc);
}
Stmt method_call(Expr callee, std::string m, std::vector<Expr> args, SourceLoc loc) {
  return make_stmt(MethodCallStmt{std::move(callee), std::move(m), std::move(args)}, loc);
}
Stmt proc_call(std::string p, std::vector<Expr> args, SourceLoc loc) {
  return make_stmt(ProcCallStmt{std::move(p), std::move(args)}, loc);
}
Stmt restore(std::vector<VarRef> targets, std::vector<std::optional<Value>> values) {
  return make_stmt(RestoreStmt{std::move(targets), std::move(values)});
}
}  // namespace st

std::vector<Stmt> seq_items(const Stmt& s) {
  if (const auto* q = s.as<SeqStmt>()) return q->items;
  return {s};
}

// ---------------------------------------------------------------------------
// Declarations and programs
// ---------------------------------------------------------------------------

const Decl* find_decl(const DeclSet& d, const std::string& name) {
  for (const auto& decl : d) {
    if (decl.name == name) return &decl;
  }
  return nullptr;
}

std::string to_string(Flavor f) {
  switch (f) {
    case Flavor::Kernel: return "kernel";
    case Flavor::OO: return "oo";
    case Flavor::Recursive: return "recursive";
  }
  return "?";
}

Signature::Signature() { vars_.emplace(kThis, this_var()); }

bool Signature::declare(const VarRef& v) {
  auto [it, inserted] = vars_.emplace(v.name, v);
  return inserted || it->second == v;
}

const VarRef* Signature::find(const std::string& name) const {
  auto it = vars_.find(name);
  return it == vars_.end() ? nullptr : &it->second;
}

// ---------------------------------------------------------------------------
// Type checking
// ---------------------------------------------------------------------------

std::string to_string(const Diagnostic& d) {
  return to_string(d.loc) + ": [" + d.rule + "] " + d.message;
}

namespace {

class Checker {
 public:
  Checker(Flavor flavor, CheckMode mode, const DeclSet* decls) : flavor_(flavor), mode_(mode), decls_(decls) {}

  std::vector<Diagnostic> take() { return std::move(diags_); }

  void report(const std::string& rule, const std::string& msg) { diags_.push_back({loc_, rule, msg}); }

  void set_loc(SourceLoc loc) {
    if (loc.line != 0) loc_ = loc;
  }

  // Returns nullopt when the expression is ill-typed (already reported).
  std::optional<BaseType> expr(const Expr& e, bool assertion) {
    return std::visit([&](const auto& n) { return this->node(n, assertion); }, e.node().v);
  }

  void expect(const Expr& e, BaseType want, bool assertion, const std::string& what) {
    auto got = expr(e, assertion);
    if (got && !compatible(*got, want)) {
      report("type", what + " has type " + to_string(*got) + ", expected " + to_string(want));
    }
  }

  void stmt(const Stmt& s) {
    SourceLoc saved = loc_;
    set_loc(s.loc());
    std::visit([&](const auto& n) { this->node(n); }, s.node().v);
    loc_ = saved;
  }

  void decl(const Decl& d) {
    set_loc(d.loc);
    std::set<std::string> seen;
    for (const auto& f : d.formals) {
      if (!seen.insert(f.name).second) report("formals", "formal parameter " + f.name + " repeated in " + d.name);
      if (f.is_instance()) report("formals", "formal parameter " + f.name + " is an instance variable");
      if (f.is_array()) report("formals", "formal parameter " + f.name + " must be of a basic type");
      if (f.name == kThis && flavor_ != Flavor::Recursive) {
        report("formals", "this cannot be a formal parameter of a method");
      }
    }
    stmt(d.body);
  }

 private:
  void instance_allowed(const VarRef& v) {
    if (v.is_instance() && flavor_ != Flavor::OO) {
      report("instance", "instance variable " + v.name + " outside an object-oriented program");
    }
  }

  std::optional<BaseType> node(const IntLit&, bool) { return BaseType::Integer; }
  std::optional<BaseType> node(const BoolLit&, bool) { return BaseType::Boolean; }
  std::optional<BaseType> node(const NullLit&, bool) { return BaseType::Object; }
  std::optional<BaseType> node(const VarExpr& n, bool) {
    if (n.var.is_array()) {
      report("type", "array " + n.var.name + " used as a simple variable");
      return std::nullopt;
    }
    instance_allowed(n.var);
    return n.var.type.value;
  }
  bool indices(const VarRef& a, const std::vector<Expr>& index, bool assertion) {
    if (!a.is_array()) {
      report("type", a.name + " is not an array");
      return false;
    }
    if (index.size() != a.type.args.size()) {
      report("arity", "array " + a.name + " expects " + std::to_string(a.type.args.size()) + " subscripts");
      return false;
    }
    bool ok = true;
    for (std::size_t i = 0; i < index.size(); ++i) {
      auto t = expr(index[i], assertion);
      if (!t) {
        ok = false;
      } else if (!compatible(*t, a.type.args[i])) {
        report("type", "subscript " + std::to_string(i + 1) + " of " + a.name + " has type " + to_string(*t));
        ok = false;
      }
    }
    return ok;
  }
  std::optional<BaseType> node(const SubExpr& n, bool assertion) {
    instance_allowed(n.array);
    if (!indices(n.array, n.index, assertion)) return std::nullopt;
    return n.array.type.value;
  }
  std::optional<BaseType> node(const NavExpr& n, bool assertion) {
    if (!assertion) {
      report("navigation", "navigation expression ." + n.field.name + " outside an assertion");
    }
    if (!n.field.is_instance()) {
      report("navigation", n.field.name + " is not an instance variable");
      return std::nullopt;
    }
    expect(n.base, BaseType::Object, assertion, "navigation base");
    if (n.index.empty()) {
      if (n.field.is_array()) {
        report("type", "array " + n.field.name + " used as a simple variable");
        return std::nullopt;
      }
      return n.field.type.value;
    }
    if (!indices(n.field, n.index, assertion)) return std::nullopt;
    return n.field.type.value;
  }
  std::optional<BaseType> node(const CondExpr& n, bool assertion) {
    expect(n.guard, BaseType::Boolean, assertion, "conditional guard");
    auto a = expr(n.then_expr, assertion);
    auto b = expr(n.else_expr, assertion);
    if (!a || !b) return std::nullopt;
    if (!compatible(*a, *b)) {
      report("type", "conditional branches disagree: " + to_string(*a) + " vs " + to_string(*b));
      return std::nullopt;
    }
    return widen(*a, *b);
  }
  std::optional<BaseType> node(const UnaryExpr& n, bool assertion) {
    BaseType want = n.op == UnOp::Not ? BaseType::Boolean : BaseType::Integer;
    expect(n.arg, want, assertion, n.op == UnOp::Not ? "operand of not" : "operand of -");
    return want;
  }
  std::optional<BaseType> node(const BinaryExpr& n, bool assertion) {
    switch (n.op) {
      case BinOp::Add:
      case BinOp::Sub:
      case BinOp::Mul:
        expect(n.lhs, BaseType::Integer, assertion, "arithmetic operand");
        expect(n.rhs, BaseType::Integer, assertion, "arithmetic operand");
        return BaseType::Integer;
      case BinOp::Lt:
      case BinOp::Le:
      case BinOp::Gt:
      case BinOp::Ge:
        expect(n.lhs, BaseType::Integer, assertion, "comparison operand");
        expect(n.rhs, BaseType::Integer, assertion, "comparison operand");
        return BaseType::Boolean;
      case BinOp::Eq:
      case BinOp::Ne: {
        auto a = expr(n.lhs, assertion);
        auto b = expr(n.rhs, assertion);
        if (a && b && !compatible(*a, *b)) {
          report("type", "equality between " + to_string(*a) + " and " + to_string(*b));
        }
        return BaseType::Boolean;
      }
      case BinOp::And:
      case BinOp::Or:
      case BinOp::Implies:
        expect(n.lhs, BaseType::Boolean, assertion, "logical operand");
        expect(n.rhs, BaseType::Boolean, assertion, "logical operand");
        return BaseType::Boolean;
    }
    return std::nullopt;
  }
  std::optional<BaseType> node(const QuantExpr& n, bool assertion) {
    if (!assertion) report("quantifier", "quantifier outside an assertion");
    if (n.var.is_instance() || n.var.is_array()) {
      report("quantifier", "quantified variable " + n.var.name + " must be a simple normal variable");
    }
    if (n.var.name == kThis) report("quantifier", "cannot quantify over this");
    expect(n.body, BaseType::Boolean, assertion, "quantifier body");
    return BaseType::Boolean;
  }

  // Statements.
  void node(const SkipStmt&) {}
  void node(const EmptyStmt&) {}
  void node(const AssignStmt& n) {
    std::optional<BaseType> target;
    if (const auto* v = n.target.as<VarExpr>()) {
      if (v->var.name == kThis && mode_ == CheckMode::Source) {
        report("this", "assignment to this");
      }
      target = expr(n.target, false);
    } else if (n.target.is<SubExpr>()) {
      target = expr(n.target, false);
    } else {
      report("assign", "assignment target must be a simple or subscripted variable");
    }
    auto value = expr(n.value, false);
    if (target && value && !compatible(*target, *value)) {
      report("type", "cannot assign " + to_string(*value) + " to " + to_string(*target));
    }
  }
  void simple_normal_targets(const std::vector<VarRef>& targets, const std::vector<Expr>& values,
                             const std::string& what, bool allow_this) {
    if (targets.size() != values.size()) {
      report("arity", what + " has " + std::to_string(targets.size()) + " targets but " +
                          std::to_string(values.size()) + " values");
    }
    std::set<std::string> seen;
    for (std::size_t i = 0; i < targets.size(); ++i) {
      const auto& t = targets[i];
      if (!seen.insert(t.name).second) report("distinct", what + " repeats variable " + t.name);
      if (t.is_instance()) report("instance", "instance variable " + t.name + " used as " + what + " variable");
      if (t.is_array()) report("type", what + " variable " + t.name + " must be simple");
      if (t.name == kThis && !allow_this) report("this", "assignment to this");
      if (i < values.size()) {
        auto v = expr(values[i], false);
        if (v && !compatible(*v, t.type.value)) {
          report("type", "cannot assign " + to_string(*v) + " to " + t.name);
        }
      }
    }
  }
  void node(const ParAssignStmt& n) {
    simple_normal_targets(n.targets, n.values, "parallel assignment", mode_ == CheckMode::Runtime);
  }
  void node(const SeqStmt& n) {
    for (const auto& s : n.items) stmt(s);
  }
  void node(const IfStmt& n) {
    expect(n.cond, BaseType::Boolean, false, "if guard");
    stmt(n.then_branch);
    stmt(n.else_branch);
  }
  void node(const FailIfStmt& n) {
    expect(n.cond, BaseType::Boolean, false, "failure guard");
    stmt(n.body);
  }
  void node(const WhileStmt& n) {
    expect(n.cond, BaseType::Boolean, false, "loop guard");
    stmt(n.body);
  }
  void node(const BlockStmt& n) {
    if (n.locals.empty() && mode_ == CheckMode::Source) report("block", "block without local variables");
    simple_normal_targets(n.locals, n.inits, "local", mode_ == CheckMode::Runtime);
    stmt(n.body);
  }
  void call_args(const std::string& kind, const std::string& name, const std::vector<Expr>& args,
                 std::size_t skip_formals) {
    const Decl* d = decls_ ? find_decl(*decls_, name) : nullptr;
    if (!d) {
      report("call", kind + " " + name + " is not declared");
      for (const auto& a : args) expr(a, false);
      return;
    }
    if (d->formals.size() != args.size() + skip_formals) {
      report("arity", kind + " " + name + " expects " + std::to_string(d->formals.size() - skip_formals) +
                          " arguments, got " + std::to_string(args.size()));
    }
    for (std::size_t i = 0; i < args.size(); ++i) {
      auto t = expr(args[i], false);
      std::size_t f = i + skip_formals;
      if (t && f < d->formals.size() && !compatible(*t, d->formals[f].type.value)) {
        report("type", "argument " + std::to_string(i + 1) + " of " + name + " has type " + to_string(*t));
      }
    }
  }
  void node(const MethodCallStmt& n) {
    if (flavor_ != Flavor::OO) report("call", "method call outside an object-oriented program");
    expect(n.callee, BaseType::Object, false, "called object");
    call_args("method", n.method, n.args, 0);
  }
  void node(const ProcCallStmt& n) {
    if (flavor_ != Flavor::Recursive) report("call", "procedure call outside a recursive program");
    call_args("procedure", n.proc, n.args, 0);
  }
  void node(const RestoreStmt& n) {
    if (mode_ == CheckMode::Source) report("internal", "restore statement in source program");
    if (n.targets.size() != n.values.size()) report("arity", "restore arity mismatch");
  }

  Flavor flavor_;
  CheckMode mode_;
  const DeclSet* decls_;
  SourceLoc loc_;
  std::vector<Diagnostic> diags_;
};

// Free occurrences of variables in a statement relative to block and formal
// bindings; used for the name clash convention.
void free_occurrences(const Stmt& s, const NameSet& bound, NameSet& out);

void free_occurrences(const Expr& e, const NameSet& bound, NameSet& out) {
  for (const auto& n : free_vars(e)) {
    if (!bound.count(n)) out.insert(n);
  }
}

void free_occurrences(const Stmt& s, const NameSet& bound, NameSet& out) {
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, AssignStmt>) {
          free_occurrences(n.target, bound, out);
          free_occurrences(n.value, bound, out);
        } else if constexpr (std::is_same_v<T, ParAssignStmt>) {
          for (const auto& t : n.targets) {
            if (!bound.count(t.name)) out.insert(t.name);
          }
          for (const auto& v : n.values) free_occurrences(v, bound, out);
        } else if constexpr (std::is_same_v<T, SeqStmt>) {
          for (const auto& i : n.items) free_occurrences(i, bound, out);
        } else if constexpr (std::is_same_v<T, IfStmt>) {
          free_occurrences(n.cond, bound, out);
          free_occurrences(n.then_branch, bound, out);
          free_occurrences(n.else_branch, bound, out);
        } else if constexpr (std::is_same_v<T, FailIfStmt> || std::is_same_v<T, WhileStmt>) {
          free_occurrences(n.cond, bound, out);
          free_occurrences(n.body, bound, out);
        } else if constexpr (std::is_same_v<T, BlockStmt>) {
          for (const auto& v : n.inits) free_occurrences(v, bound, out);
          NameSet inner = bound;
          for (const auto& l : n.locals) inner.insert(l.name);
          free_occurrences(n.body, inner, out);
        } else if constexpr (std::is_same_v<T, MethodCallStmt>) {
          free_occurrences(n.callee, bound, out);
          for (const auto& a : n.args) free_occurrences(a, bound, out);
        } else if constexpr (std::is_same_v<T, ProcCallStmt>) {
          for (const auto& a : n.args) free_occurrences(a, bound, out);
        }
      },
      s.node().v);
}

void collect_locals(const Stmt& s, NameSet& out) {
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, SeqStmt>) {
          for (const auto& i : n.items) collect_locals(i, out);
        } else if constexpr (std::is_same_v<T, IfStmt>) {
          collect_locals(n.then_branch, out);
          collect_locals(n.else_branch, out);
        } else if constexpr (std::is_same_v<T, FailIfStmt> || std::is_same_v<T, WhileStmt>) {
          collect_locals(n.body, out);
        } else if constexpr (std::is_same_v<T, BlockStmt>) {
          for (const auto& l : n.locals) out.insert(l.name);
          collect_locals(n.body, out);
        }
      },
      s.node().v);
}

}  // namespace

std::vector<Diagnostic> typecheck_stmt(const Stmt& s, const DeclSet& decls, Flavor flavor, CheckMode mode) {
  Checker c(flavor, mode, &decls);
  c.stmt(s);
  return c.take();
}

std::vector<Diagnostic> typecheck_expr(const Expr& e, BaseType expected, Flavor flavor) {
  Checker c(flavor, CheckMode::Source, nullptr);
  c.expect(e, expected, false, "expression");
  return c.take();
}

std::vector<Diagnostic> typecheck_assertion(const Expr& p) {
  Checker c(Flavor::OO, CheckMode::Runtime, nullptr);
  c.expect(p, BaseType::Boolean, true, "assertion");
  return c.take();
}

std::vector<Diagnostic> typecheck(const Program& program) {
  Checker c(program.flavor, CheckMode::Source, &program.decls);
  if (program.flavor == Flavor::Kernel && !program.decls.empty()) {
    c.report("program", "kernel programs have no declarations");
  }
  std::set<std::string> names;
  for (const auto& d : program.decls) {
    if (!names.insert(d.name).second) {
      c.set_loc(d.loc);
      c.report("decl", d.name + " declared more than once");
    }
    c.decl(d);
  }
  c.set_loc(program.main.loc());
  c.stmt(program.main);

  // No local variable of S or D may occur freely in S or D. `this` is
  // exempt: it is the implicit parameter of every method and procedure.
  NameSet locals;
  collect_locals(program.main, locals);
  for (const auto& d : program.decls) {
    collect_locals(d.body, locals);
    for (const auto& f : d.formals) locals.insert(f.name);
  }
  locals.erase(kThis);
  auto clash = [&](const Stmt& body, const NameSet& bound, SourceLoc loc) {
    NameSet free;
    free_occurrences(body, bound, free);
    for (const auto& n : free) {
      if (locals.count(n)) {
        c.set_loc(loc);
        c.report("clash", "local variable " + n + " occurs freely");
      }
    }
  };
  clash(program.main, {}, program.main.loc());
  for (const auto& d : program.decls) {
    NameSet bound;
    for (const auto& f : d.formals) bound.insert(f.name);
    clash(d.body, bound, d.loc);
  }
  return c.take();
}

// ---------------------------------------------------------------------------
// Variable analyses
// ---------------------------------------------------------------------------

namespace {

void expr_vars(const Expr& e, const NameSet& bound, NameSet& out) {
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, VarExpr>) {
          if (!bound.count(n.var.name)) out.insert(n.var.name);
          if (n.var.is_instance()) out.insert(kThis);
        } else if constexpr (std::is_same_v<T, SubExpr>) {
          out.insert(n.array.name);
          if (n.array.is_instance()) out.insert(kThis);
          for (const auto& i : n.index) expr_vars(i, bound, out);
        } else if constexpr (std::is_same_v<T, NavExpr>) {
          out.insert(n.field.name);
          expr_vars(n.base, bound, out);
          for (const auto& i : n.index) expr_vars(i, bound, out);
        } else if constexpr (std::is_same_v<T, CondExpr>) {
          expr_vars(n.guard, bound, out);
          expr_vars(n.then_expr, bound, out);
          expr_vars(n.else_expr, bound, out);
        } else if constexpr (std::is_same_v<T, UnaryExpr>) {
          expr_vars(n.arg, bound, out);
        } else if constexpr (std::is_same_v<T, BinaryExpr>) {
          expr_vars(n.lhs, bound, out);
          expr_vars(n.rhs, bound, out);
        } else if constexpr (std::is_same_v<T, QuantExpr>) {
          NameSet inner = bound;
          inner.insert(n.var.name);
          expr_vars(n.body, inner, out);
        }
      },
      e.node().v);
}

void stmt_vars(const Stmt& s, NameSet& out) {
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, AssignStmt>) {
          expr_vars(n.target, {}, out);
          expr_vars(n.value, {}, out);
        } else if constexpr (std::is_same_v<T, ParAssignStmt>) {
          for (const auto& t : n.targets) out.insert(t.name);
          for (const auto& v : n.values) expr_vars(v, {}, out);
        } else if constexpr (std::is_same_v<T, SeqStmt>) {
          for (const auto& i : n.items) stmt_vars(i, out);
        } else if constexpr (std::is_same_v<T, IfStmt>) {
          expr_vars(n.cond, {}, out);
          stmt_vars(n.then_branch, out);
          stmt_vars(n.else_branch, out);
        } else if constexpr (std::is_same_v<T, FailIfStmt> || std::is_same_v<T, WhileStmt>) {
          expr_vars(n.cond, {}, out);
          stmt_vars(n.body, out);
        } else if constexpr (std::is_same_v<T, BlockStmt>) {
          for (const auto& l : n.locals) out.insert(l.name);
          for (const auto& v : n.inits) expr_vars(v, {}, out);
          stmt_vars(n.body, out);
        } else if constexpr (std::is_same_v<T, MethodCallStmt>) {
          out.insert(kThis);
          expr_vars(n.callee, {}, out);
          for (const auto& a : n.args) expr_vars(a, {}, out);
        } else if constexpr (std::is_same_v<T, ProcCallStmt>) {
          for (const auto& a : n.args) expr_vars(a, {}, out);
        } else if constexpr (std::is_same_v<T, RestoreStmt>) {
          for (const auto& t : n.targets) out.insert(t.name);
        }
      },
      s.node().v);
}

std::string target_name(const Expr& target) {
  if (const auto* v = target.as<VarExpr>()) return v->var.name;
  if (const auto* a = target.as<SubExpr>()) return a->array.name;
  return {};
}

void stmt_change(const Stmt& s, const NameSet& bound, NameSet& out) {
  auto add = [&](const std::string& n) {
    if (!n.empty() && !bound.count(n)) out.insert(n);
  };
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, AssignStmt>) {
          add(target_name(n.target));
        } else if constexpr (std::is_same_v<T, ParAssignStmt> || std::is_same_v<T, RestoreStmt>) {
          for (const auto& t : n.targets) add(t.name);
        } else if constexpr (std::is_same_v<T, SeqStmt>) {
          for (const auto& i : n.items) stmt_change(i, bound, out);
        } else if constexpr (std::is_same_v<T, IfStmt>) {
          stmt_change(n.then_branch, bound, out);
          stmt_change(n.else_branch, bound, out);
        } else if constexpr (std::is_same_v<T, FailIfStmt> || std::is_same_v<T, WhileStmt>) {
          stmt_change(n.body, bound, out);
        } else if constexpr (std::is_same_v<T, BlockStmt>) {
          NameSet inner = bound;
          for (const auto& l : n.locals) inner.insert(l.name);
          stmt_change(n.body, inner, out);
        }
      },
      s.node().v);
}

}  // namespace

NameSet vars_of(const Expr& e) {
  NameSet out;
  expr_vars(e, {}, out);
  return out;
}

NameSet free_vars(const Expr& p) { return vars_of(p); }

NameSet vars_of(const Stmt& s) {
  NameSet out;
  stmt_vars(s, out);
  return out;
}

NameSet change_of(const Stmt& s) {
  NameSet out;
  stmt_change(s, {}, out);
  return out;
}

NameSet vars_of(const DeclSet& d) {
  NameSet out;
  for (const auto& decl : d) {
    for (const auto& f : decl.formals) out.insert(f.name);
    stmt_vars(decl.body, out);
  }
  return out;
}

NameSet change_of(const DeclSet& d) {
  NameSet out;
  for (const auto& decl : d) {
    NameSet bound;
    for (const auto& f : decl.formals) bound.insert(f.name);
    stmt_change(decl.body, bound, out);
  }
  return out;
}

VarAnalysis analyze_vars(const Stmt& s) { return {vars_of(s), change_of(s)}; }
VarAnalysis analyze_vars(const DeclSet& d) { return {vars_of(d), change_of(d)}; }

bool is_program_expr(const Expr& e) {
  return std::visit(
      [](const auto& n) -> bool {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, NavExpr> || std::is_same_v<T, QuantExpr>) {
          return false;
        } else if constexpr (std::is_same_v<T, SubExpr>) {
          return std::all_of(n.index.begin(), n.index.end(), is_program_expr);
        } else if constexpr (std::is_same_v<T, CondExpr>) {
          return is_program_expr(n.guard) && is_program_expr(n.then_expr) && is_program_expr(n.else_expr);
        } else if constexpr (std::is_same_v<T, UnaryExpr>) {
          return is_program_expr(n.arg);
        } else if constexpr (std::is_same_v<T, BinaryExpr>) {
          return is_program_expr(n.lhs) && is_program_expr(n.rhs);
        } else {
          return true;
        }
      },
      e.node().v);
}

}  // namespace oov
