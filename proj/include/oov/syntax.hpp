#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "oov/value.hpp"

namespace oov {

// ---------------------------------------------------------------------------
// Types and variables
// ---------------------------------------------------------------------------

enum class BaseType : std::uint8_t { Integer, Boolean, Object, Nat };

/// A basic type (no argument types) or a higher (array) type.
struct Type {
  std::vector<BaseType> args;
  BaseType value = BaseType::Integer;

  static Type basic(BaseType b) { return Type{{}, b}; }
  static Type array(std::vector<BaseType> args, BaseType value) { return Type{std::move(args), value}; }
  bool is_array() const { return !args.empty(); }

  friend bool operator==(const Type&, const Type&) = default;
};

/// Nat is an alias for the nonnegative integers; it is interchangeable with
/// Integer wherever values flow.
bool compatible(BaseType a, BaseType b);
std::string to_string(BaseType b);
std::string to_string(const Type& t);

enum class VarKind : std::uint8_t { Normal, Instance };

struct VarRef {
  VarKind kind = VarKind::Normal;
  std::string name;
  Type type;

  bool is_instance() const { return kind == VarKind::Instance; }
  bool is_array() const { return type.is_array(); }

  friend bool operator==(const VarRef&, const VarRef&) = default;
};

inline constexpr const char* kThis = "this";
VarRef this_var();
VarRef normal_var(std::string name, Type t);
VarRef instance_var(std::string name, Type t);

struct SourceLoc {
  int line = 0;
  int column = 0;
};
std::string to_string(const SourceLoc& loc);

// ---------------------------------------------------------------------------
// Expressions (program, global and assertion level share one tree)
// ---------------------------------------------------------------------------

struct ExprNode;

/// Immutable, cheaply copyable handle to an expression tree.
class Expr {
 public:
  Expr() = default;
  explicit Expr(std::shared_ptr<const ExprNode> n) : node_(std::move(n)) {}

  const ExprNode& node() const { return *node_; }
  const ExprNode* get() const { return node_.get(); }
  explicit operator bool() const { return node_ != nullptr; }

  template <class T>
  const T* as() const;
  template <class T>
  bool is() const { return as<T>() != nullptr; }

  friend bool operator==(const Expr& a, const Expr& b);
  friend bool operator!=(const Expr& a, const Expr& b) { return !(a == b); }

 private:
  std::shared_ptr<const ExprNode> node_;
};

enum class UnOp : std::uint8_t { Not, Neg };
enum class BinOp : std::uint8_t { Add, Sub, Mul, Eq, Ne, Lt, Le, Gt, Ge, And, Or, Implies };
enum class Quantifier : std::uint8_t { Forall, Exists };

struct IntLit { Int value; };
struct BoolLit { bool value = false; };
struct NullLit {};
/// Simple variable, normal or instance (a bare instance variable abbreviates
/// `this.x`).
struct VarExpr { VarRef var; };
/// Subscripted variable a[s1,...,sn], normal or instance.
struct SubExpr { VarRef array; std::vector<Expr> index; };
/// Navigation s.x or s.a[s1,...,sn]; assertion-level only.
struct NavExpr { Expr base; VarRef field; std::vector<Expr> index; };
struct CondExpr { Expr guard; Expr then_expr; Expr else_expr; };
struct UnaryExpr { UnOp op; Expr arg; };
struct BinaryExpr { BinOp op; Expr lhs; Expr rhs; };
struct QuantExpr { Quantifier q; VarRef var; Expr body; };

struct ExprNode {
  std::variant<IntLit, BoolLit, NullLit, VarExpr, SubExpr, NavExpr, CondExpr,
               UnaryExpr, BinaryExpr, QuantExpr>
      v;
};

template <class T>
const T* Expr::as() const {
  return node_ ? std::get_if<T>(&node_->v) : nullptr;
}

namespace ex {
Expr int_lit(Int v);
Expr bool_lit(bool b);
Expr true_();
Expr false_();
Expr null();
Expr var(const VarRef& v);
Expr this_();
Expr sub(const VarRef& a, std::vector<Expr> index);
Expr nav(Expr base, const VarRef& field, std::vector<Expr> index = {});
Expr cond(Expr g, Expr t, Expr e);
Expr unary(UnOp op, Expr a);
Expr binary(BinOp op, Expr l, Expr r);
Expr not_(Expr a);
Expr neg(Expr a);
Expr and_(Expr l, Expr r);
Expr or_(Expr l, Expr r);
Expr implies(Expr l, Expr r);
Expr eq(Expr l, Expr r);
Expr ne(Expr l, Expr r);
Expr quant(Quantifier q, const VarRef& v, Expr body);
Expr forall(const VarRef& v, Expr body);
Expr exists(const VarRef& v, Expr body);
/// Conjunction of a list; `true` when empty.
Expr conj(const std::vector<Expr>& items);
}  // namespace ex

/// Basic type of a well-formed expression (arrays are never expressions).
BaseType type_of(const Expr& e);

// ---------------------------------------------------------------------------
// Statements
// ---------------------------------------------------------------------------

struct StmtNode;

class Stmt {
 public:
  Stmt() = default;
  explicit Stmt(std::shared_ptr<const StmtNode> n) : node_(std::move(n)) {}

  const StmtNode& node() const { return *node_; }
  explicit operator bool() const { return node_ != nullptr; }
  SourceLoc loc() const;

  template <class T>
  const T* as() const;
  template <class T>
  bool is() const { return as<T>() != nullptr; }

  /// Structural equality; source locations are ignored.
  friend bool operator==(const Stmt& a, const Stmt& b);
  friend bool operator!=(const Stmt& a, const Stmt& b) { return !(a == b); }

 private:
  std::shared_ptr<const StmtNode> node_;
};

struct SkipStmt {};
/// u := t where u is a simple or subscripted, normal or instance variable.
/// Target is a VarExpr or SubExpr.
struct AssignStmt { Expr target; Expr value; };
/// x1,...,xn := t1,...,tn over distinct simple normal variables, n >= 2.
struct ParAssignStmt { std::vector<VarRef> targets; std::vector<Expr> values; };
/// S1; ...; Sn with n >= 2 and no nested SeqStmt items.
struct SeqStmt { std::vector<Stmt> items; };
struct IfStmt { Expr cond; Stmt then_branch; Stmt else_branch; };
/// Failure statement `if B -> S fi`.
struct FailIfStmt { Expr cond; Stmt body; };
struct WhileStmt { Expr cond; Stmt body; };
struct BlockStmt { std::vector<VarRef> locals; std::vector<Expr> inits; Stmt body; };
struct MethodCallStmt { Expr callee; std::string method; std::vector<Expr> args; };
struct ProcCallStmt { std::string proc; std::vector<Expr> args; };
/// Terminated computation `E`.
struct EmptyStmt {};
/// Internal: restores block locals to stored values at block exit. A
/// missing value means the local was undetermined on entry (lazy states).
struct RestoreStmt { std::vector<VarRef> targets; std::vector<std::optional<Value>> values; };

struct StmtNode {
  std::variant<SkipStmt, AssignStmt, ParAssignStmt, SeqStmt, IfStmt, FailIfStmt, WhileStmt,
               BlockStmt, MethodCallStmt, ProcCallStmt, EmptyStmt, RestoreStmt>
      v;
  SourceLoc loc;
};

template <class T>
const T* Stmt::as() const {
  return node_ ? std::get_if<T>(&node_->v) : nullptr;
}

namespace st {
Stmt skip(SourceLoc loc = {});
Stmt empty();
Stmt assign(Expr target, Expr value, SourceLoc loc = {});
/// Collapses to a plain assignment when there is a single target.
Stmt par_assign(std::vector<VarRef> targets, std::vector<Expr> values, SourceLoc loc = {});
/// Flattens nested sequences and drops nothing else; a single item is
/// returned unchanged.
Stmt seq(std::vector<Stmt> items, SourceLoc loc = {});
Stmt seq(Stmt a, Stmt b);
Stmt if_(Expr c, Stmt t, Stmt e, SourceLoc loc = {});
Stmt fail_if(Expr c, Stmt body, SourceLoc loc = {});
Stmt while_(Expr c, Stmt body, SourceLoc loc = {});
Stmt block(std::vector<VarRef> locals, std::vector<Expr> inits, Stmt body, SourceLoc loc = {});
Stmt method_call(Expr callee, std::string m, std::vector<Expr> args, SourceLoc loc = {});
Stmt proc_call(std::string p, std::vector<Expr> args, SourceLoc loc = {});
Stmt restore(std::vector<VarRef> targets, std::vector<std::optional<Value>> values);
}  // namespace st

/// Items of a statement read as a sequence (a non-sequence is a singleton).
std::vector<Stmt> seq_items(const Stmt& s);

// ---------------------------------------------------------------------------
// Declarations and programs
// ---------------------------------------------------------------------------

struct Decl {
  std::string name;
  std::vector<VarRef> formals;
  Stmt body;
  SourceLoc loc;

  friend bool operator==(const Decl& a, const Decl& b) {
    return a.name == b.name && a.formals == b.formals && a.body == b.body;
  }
};

using DeclSet = std::vector<Decl>;
const Decl* find_decl(const DeclSet& d, const std::string& name);

enum class Flavor : std::uint8_t { Kernel, OO, Recursive };
std::string to_string(Flavor f);

/// Every variable a program (or proof file) mentions, keyed by name.
/// Includes globals, block locals, formals and instance variables;
/// `this` is implicit and always present.
class Signature {
 public:
  Signature();
  /// Adds a declaration; returns false on a conflicting redeclaration.
  bool declare(const VarRef& v);
  const VarRef* find(const std::string& name) const;
  const std::map<std::string, VarRef>& vars() const { return vars_; }

  friend bool operator==(const Signature&, const Signature&) = default;

 private:
  std::map<std::string, VarRef> vars_;
};

struct Program {
  Flavor flavor = Flavor::Kernel;
  Signature sig;
  DeclSet decls;
  Stmt main;

  friend bool operator==(const Program&, const Program&) = default;
};

/// Correctness formula {p} S {q}.
struct Formula {
  Expr pre;
  Stmt stmt;
  Expr post;

  friend bool operator==(const Formula&, const Formula&) = default;
};

// ---------------------------------------------------------------------------
// Type checking
// ---------------------------------------------------------------------------

struct Diagnostic {
  SourceLoc loc;
  std::string rule;
  std::string message;
};
std::string to_string(const Diagnostic& d);

enum class CheckMode : std::uint8_t {
  /// Programs as written: no RestoreStmt, no assignment to or localisation
  /// of `this`, name clash convention enforced.
  Source,
  /// Statements arising during execution or inside proof-rule shapes:
  /// `this` may be a block local and restore statements are legal.
  Runtime,
};

std::vector<Diagnostic> typecheck(const Program& program);
std::vector<Diagnostic> typecheck_stmt(const Stmt& s, const DeclSet& decls, Flavor flavor,
                                       CheckMode mode);
/// Checks a program (navigation-free) expression of the expected type.
std::vector<Diagnostic> typecheck_expr(const Expr& e, BaseType expected, Flavor flavor);
/// Checks an assertion: Boolean global expression with quantifiers over
/// simple normal variables.
std::vector<Diagnostic> typecheck_assertion(const Expr& p);

// ---------------------------------------------------------------------------
// Variable analyses
// ---------------------------------------------------------------------------

using NameSet = std::set<std::string>;

/// var(t): all simple and array variables, including `this` when an
/// instance variable is used (it abbreviates this.x).
NameSet vars_of(const Expr& e);
/// free(p): as vars_of but without quantifier-bound variables.
NameSet free_vars(const Expr& p);
/// var(S): all variables of a statement; method calls add `this`.
NameSet vars_of(const Stmt& s);
/// change(S): global variables assigned outside subscript positions.
NameSet change_of(const Stmt& s);
NameSet vars_of(const DeclSet& d);
NameSet change_of(const DeclSet& d);

struct VarAnalysis {
  NameSet var;
  NameSet change;
};
VarAnalysis analyze_vars(const Stmt& s);
VarAnalysis analyze_vars(const DeclSet& d);

/// True if the expression mentions no navigation and no quantifier.
bool is_program_expr(const Expr& e);

}  // namespace oov
