#include "oov/wp.hpp"

#include <algorithm>
#include <map>

#include "oov/assertions.hpp"

namespace oov {

std::size_t StateSpace::size() const { return states().size(); }

std::vector<State> StateSpace::states() const {
  std::vector<State> out{State()};
  for (const auto& cell : footprint) {
    bool is_this = !cell.owner && cell.var.name == kThis;
    auto dom = universe.domain(cell.var.type.value, !(is_this && this_nonnull));
    std::vector<State> next;
    next.reserve(out.size() * dom.size());
    for (const auto& s : out) {
      for (const auto& v : dom) {
        State t = s;
        t.write(cell, v);
        next.push_back(std::move(t));
      }
    }
    out = std::move(next);
  }
  return out;
}

namespace {

/// Free simple variables with their declared types, and whether instance
/// variables occur.
struct VarCollector {
  std::map<std::string, VarRef> normals;
  std::map<std::string, VarRef> instances;
  bool needs_this = false;

  void expr(const Expr& e, std::vector<std::string>& bound) {
    std::visit(
        [&](const auto& n) {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, VarExpr>) {
            if (n.var.is_instance()) {
              instances.emplace(n.var.name, n.var);
              needs_this = true;
            } else if (std::find(bound.begin(), bound.end(), n.var.name) == bound.end()) {
              normals.emplace(n.var.name, n.var);
            }
          } else if constexpr (std::is_same_v<T, SubExpr>) {
            if (n.array.is_instance()) needs_this = true;
            for (const auto& i : n.index) expr(i, bound);
          } else if constexpr (std::is_same_v<T, NavExpr>) {
            if (!n.field.is_array()) instances.emplace(n.field.name, n.field);
            expr(n.base, bound);
            for (const auto& i : n.index) expr(i, bound);
          } else if constexpr (std::is_same_v<T, CondExpr>) {
            expr(n.guard, bound);
            expr(n.then_expr, bound);
            expr(n.else_expr, bound);
          } else if constexpr (std::is_same_v<T, UnaryExpr>) {
            expr(n.arg, bound);
          } else if constexpr (std::is_same_v<T, BinaryExpr>) {
            expr(n.lhs, bound);
            expr(n.rhs, bound);
          } else if constexpr (std::is_same_v<T, QuantExpr>) {
            bound.push_back(n.var.name);
            expr(n.body, bound);
            bound.pop_back();
          }
        },
        e.node().v);
  }

  void stmt(const Stmt& s) {
    std::vector<std::string> bound;
    auto e = [&](const Expr& x) { expr(x, bound); };
    std::visit(
        [&](const auto& n) {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, AssignStmt>) {
            e(n.target);
            e(n.value);
          } else if constexpr (std::is_same_v<T, ParAssignStmt>) {
            for (const auto& t : n.targets) normals.emplace(t.name, t);
            for (const auto& v : n.values) e(v);
          } else if constexpr (std::is_same_v<T, SeqStmt>) {
            for (const auto& i : n.items) stmt(i);
          } else if constexpr (std::is_same_v<T, IfStmt>) {
            e(n.cond);
            stmt(n.then_branch);
            stmt(n.else_branch);
          } else if constexpr (std::is_same_v<T, FailIfStmt> || std::is_same_v<T, WhileStmt>) {
            e(n.cond);
            stmt(n.body);
          } else if constexpr (std::is_same_v<T, BlockStmt>) {
            for (const auto& t : n.locals) normals.emplace(t.name, t);
            for (const auto& v : n.inits) e(v);
            stmt(n.body);
          } else if constexpr (std::is_same_v<T, MethodCallStmt>) {
            needs_this = true;
            e(n.callee);
            for (const auto& a : n.args) e(a);
          } else if constexpr (std::is_same_v<T, ProcCallStmt>) {
            for (const auto& a : n.args) e(a);
          }
        },
        s.node().v);
  }
};

}  // namespace

StateSpace space_for(const Stmt& s, const std::vector<Expr>& assertions, const Universe& u,
                     const std::vector<Location>& extra_cells) {
  VarCollector c;
  c.stmt(s);
  std::vector<std::string> bound;
  for (const auto& p : assertions) c.expr(p, bound);
  StateSpace space;
  space.universe = u;
  if (c.needs_this || c.normals.count(kThis)) {
    space.footprint.push_back(Location{this_var(), std::nullopt, {}});
    space.this_nonnull = true;
  }
  for (const auto& [name, v] : c.normals) {
    if (name != kThis) space.footprint.push_back(Location{v, std::nullopt, {}});
  }
  for (const auto& [name, v] : c.instances) {
    for (auto o : u.oids) space.footprint.push_back(Location{v, ObjRef::oid(o), {}});
  }
  space.footprint.insert(space.footprint.end(), extra_cells.begin(), extra_cells.end());
  return space;
}

std::size_t WpSet::count(Membership m) const { return static_cast<std::size_t>(std::count(member.begin(), member.end(), m)); }

WpSet wp_semantic(const Stmt& s, const Expr& post, const StateSpace& space, const DeclSet& decls, Flavor flavor,
                  std::uint64_t fuel, WpMode mode) {
  WpSet out;
  out.states = space.states();
  out.member.reserve(out.states.size());
  for (const auto& sigma : out.states) {
    RunResult r = run_stmt(s, decls, flavor, sigma, fuel);
    Membership m = Membership::In;
    switch (r.status) {
      case RunStatus::OutOfFuel: m = Membership::Unknown; break;
      case RunStatus::Failed: m = mode == WpMode::Partial ? Membership::In : Membership::Out; break;
      case RunStatus::Terminated:
        m = eval_assertion(*r.state, post, space.universe) ? Membership::In : Membership::Out;
        break;
    }
    out.member.push_back(m);
  }
  return out;
}

Expr wp_symbolic(const Stmt& s, const Expr& post, WpMode mode) {
  return std::visit(
      [&](const auto& n) -> Expr {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, SkipStmt>) {
          return post;
        } else if constexpr (std::is_same_v<T, AssignStmt>) {
          if (const auto* v = n.target.template as<VarExpr>(); v && !v->var.is_instance()) {
            return substitute_parallel(post, {v->var}, {n.value});
          }
          return substitute(post, n.target, n.value);
        } else if constexpr (std::is_same_v<T, ParAssignStmt>) {
          return substitute_parallel(post, n.targets, n.values);
        } else if constexpr (std::is_same_v<T, SeqStmt>) {
          Expr p = post;
          for (auto it = n.items.rbegin(); it != n.items.rend(); ++it) p = wp_symbolic(*it, p, mode);
          return p;
        } else if constexpr (std::is_same_v<T, IfStmt>) {
          return ex::or_(ex::and_(n.cond, wp_symbolic(n.then_branch, post, mode)),
                         ex::and_(ex::not_(n.cond), wp_symbolic(n.else_branch, post, mode)));
        } else if constexpr (std::is_same_v<T, FailIfStmt>) {
          Expr body = ex::and_(n.cond, wp_symbolic(n.body, post, mode));
          return mode == WpMode::Partial ? ex::or_(body, ex::not_(n.cond)) : body;
        } else if constexpr (std::is_same_v<T, BlockStmt>) {
          NameSet f = free_vars(post);
          for (const auto& x : n.locals) {
            if (f.count(x.name)) throw UnsupportedWp("block local " + x.name + " occurs free in the postcondition");
          }
          return substitute_parallel(wp_symbolic(n.body, post, mode), n.locals, n.inits);
        } else if constexpr (std::is_same_v<T, WhileStmt>) {
          throw UnsupportedWp("symbolic weakest preconditions of loops are not computed");
        } else if constexpr (std::is_same_v<T, MethodCallStmt> || std::is_same_v<T, ProcCallStmt>) {
          throw UnsupportedWp("symbolic weakest preconditions of calls are not computed");
        } else {
          throw UnsupportedWp("internal statement");
        }
      },
      s.node().v);
}

std::vector<bool> extension(const Expr& p, const StateSpace& space) {
  std::vector<bool> out;
  for (const auto& s : space.states()) out.push_back(eval_assertion(s, p, space.universe));
  return out;
}

}  // namespace oov
