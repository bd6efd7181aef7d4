#include "oov/transform.hpp"

#include <stdexcept>

namespace oov {

VarRef lift(const VarRef& v) {
  std::vector<BaseType> args{BaseType::Object};
  args.insert(args.end(), v.type.args.begin(), v.type.args.end());
  return normal_var(v.name, Type::array(args, v.type.value));
}

namespace {

std::vector<Expr> theta_all(const std::vector<Expr>& es) {
  std::vector<Expr> out;
  out.reserve(es.size());
  for (const auto& e : es) out.push_back(theta(e));
  return out;
}

Expr lifted_access(const VarRef& field, Expr owner, const std::vector<Expr>& index) {
  std::vector<Expr> idx{std::move(owner)};
  for (const auto& i : index) idx.push_back(theta(i));
  return ex::sub(lift(field), idx);
}

}  // namespace

Expr theta(const Expr& e) {
  return std::visit(
      [&](const auto& n) -> Expr {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, VarExpr>) {
          return n.var.is_instance() ? lifted_access(n.var, ex::this_(), {}) : e;
        } else if constexpr (std::is_same_v<T, SubExpr>) {
          if (n.array.is_instance()) return lifted_access(n.array, ex::this_(), n.index);
          return ex::sub(n.array, theta_all(n.index));
        } else if constexpr (std::is_same_v<T, NavExpr>) {
          return lifted_access(n.field, theta(n.base), n.index);
        } else if constexpr (std::is_same_v<T, CondExpr>) {
          return ex::cond(theta(n.guard), theta(n.then_expr), theta(n.else_expr));
        } else if constexpr (std::is_same_v<T, UnaryExpr>) {
          return ex::unary(n.op, theta(n.arg));
        } else if constexpr (std::is_same_v<T, BinaryExpr>) {
          return ex::binary(n.op, theta(n.lhs), theta(n.rhs));
        } else if constexpr (std::is_same_v<T, QuantExpr>) {
          return ex::quant(n.q, n.var, theta(n.body));
        } else {
          return e;
        }
      },
      e.node().v);
}

Stmt theta(const Stmt& s) {
  SourceLoc loc = s.loc();
  return std::visit(
      [&](const auto& n) -> Stmt {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, AssignStmt>) {
          return st::assign(theta(n.target), theta(n.value), loc);
        } else if constexpr (std::is_same_v<T, ParAssignStmt>) {
          return st::par_assign(n.targets, theta_all(n.values), loc);
        } else if constexpr (std::is_same_v<T, SeqStmt>) {
          std::vector<Stmt> items;
          for (const auto& i : n.items) items.push_back(theta(i));
          return st::seq(std::move(items), loc);
        } else if constexpr (std::is_same_v<T, IfStmt>) {
          return st::if_(theta(n.cond), theta(n.then_branch), theta(n.else_branch), loc);
        } else if constexpr (std::is_same_v<T, FailIfStmt>) {
          return st::fail_if(theta(n.cond), theta(n.body), loc);
        } else if constexpr (std::is_same_v<T, WhileStmt>) {
          return st::while_(theta(n.cond), theta(n.body), loc);
        } else if constexpr (std::is_same_v<T, BlockStmt>) {
          return st::block(n.locals, theta_all(n.inits), theta(n.body), loc);
        } else if constexpr (std::is_same_v<T, MethodCallStmt>) {
          Expr callee = theta(n.callee);
          std::vector<Expr> args{callee};
          for (const auto& a : n.args) args.push_back(theta(a));
          return st::fail_if(ex::ne(callee, ex::null()), st::proc_call(n.method, args, loc), loc);
        } else if constexpr (std::is_same_v<T, ProcCallStmt>) {
          throw std::invalid_argument("procedure call in an object-oriented phrase");
        } else {
          // skip, E and restore nodes mention no instance variables
          return s;
        }
      },
      s.node().v);
}

Decl theta(const Decl& d) {
  Decl out = d;
  out.formals.insert(out.formals.begin(), this_var());
  out.body = theta(d.body);
  return out;
}

DeclSet theta(const DeclSet& d) {
  DeclSet out;
  out.reserve(d.size());
  for (const auto& decl : d) out.push_back(theta(decl));
  return out;
}

Formula theta(const Formula& f) { return Formula{theta(f.pre), theta(f.stmt), theta(f.post)}; }

Signature theta(const Signature& sig) {
  Signature out;
  for (const auto& [name, v] : sig.vars()) out.declare(v.is_instance() ? lift(v) : v);
  return out;
}

State theta(const State& s) {
  State out = s.is_lazy() ? State::lazy() : State();
  for (const auto& [loc, v] : s.entries()) {
    if (!loc.owner) {
      out.write(loc, v);
      continue;
    }
    std::vector<Value> index{Value::object(*loc.owner)};
    index.insert(index.end(), loc.index.begin(), loc.index.end());
    VarRef field = loc.var;
    field.kind = VarKind::Instance;
    out.write(Location{lift(field), std::nullopt, index}, v);
  }
  return out;
}

Outcome theta(const Outcome& o) { return o.is_fail() ? o : Outcome(theta(o.state())); }

ThetaImage transform_program(const Program& p) {
  if (p.flavor != Flavor::OO) throw std::invalid_argument("transform expects an object-oriented program");
  ThetaImage img;
  img.program.flavor = Flavor::Recursive;
  img.program.sig = theta(p.sig);
  img.program.decls = theta(p.decls);
  img.program.main = theta(p.main);
  for (const auto& [name, v] : p.sig.vars()) {
    if (v.is_instance()) img.mapping.push_back({v, lift(v)});
  }
  return img;
}

std::string render_mapping(const std::vector<VarMapping>& m) {
  std::string out;
  for (const auto& vm : m) {
    out += "// " + vm.instance.name + ": " + to_string(vm.instance.type) + " => " + vm.lifted.name + ": " +
           to_string(vm.lifted.type) + "\n";
  }
  return out;
}

}  // namespace oov
