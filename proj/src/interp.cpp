#include "oov/interp.hpp"

#include <memory>
#include <stdexcept>
#include <unordered_map>

namespace oov {

namespace {

bool holds(const State& s, const Expr& b) { return eval(s, b).as_bool(); }

/// Body with its formals bound: `begin local ū := t̄; S end`, or S itself
/// when there are no formals.
Stmt bind(const std::vector<VarRef>& formals, const std::vector<Expr>& actuals, const Stmt& body, SourceLoc loc) {
  if (formals.empty()) return body;
  return st::block(formals, actuals, body, loc);
}

const Decl& lookup(const DeclSet& decls, const std::string& name) {
  const Decl* d = find_decl(decls, name);
  if (!d) throw std::invalid_argument("call to undeclared " + name);
  return *d;
}

/// Performs one transition in place; false for a terminal configuration.
bool advance(Config& cfg, const DeclSet& decls) {
  if (cfg.stmt.is<EmptyStmt>() || cfg.out.is_fail()) return false;
  const Stmt cur = cfg.stmt;
  SourceLoc loc = cur.loc();
  State& s = cfg.out.state();
  auto finish = [&cfg] { cfg.stmt = st::empty(); };
  auto failed = [&cfg] { cfg = Config{st::empty(), Outcome::fail()}; };
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, SkipStmt>) {
          finish();
        } else if constexpr (std::is_same_v<T, AssignStmt>) {
          Value v = eval(s, n.value);
          s.write(locate(s, n.target), v);
          finish();
        } else if constexpr (std::is_same_v<T, ParAssignStmt>) {
          std::vector<Value> vals;
          vals.reserve(n.values.size());
          for (const auto& v : n.values) vals.push_back(eval(s, v));
          for (std::size_t i = 0; i < n.targets.size(); ++i) s.write(Location{n.targets[i], std::nullopt, {}}, vals[i]);
          finish();
        } else if constexpr (std::is_same_v<T, SeqStmt>) {
          Config first{n.items.front(), std::move(cfg.out)};
          advance(first, decls);
          if (first.out.is_fail()) return failed();
          std::vector<Stmt> rest;
          rest.reserve(n.items.size());
          if (!first.stmt.template is<EmptyStmt>()) rest.push_back(std::move(first.stmt));
          rest.insert(rest.end(), n.items.begin() + 1, n.items.end());
          cfg = Config{st::seq(std::move(rest), loc), std::move(first.out)};
        } else if constexpr (std::is_same_v<T, IfStmt>) {
          cfg.stmt = holds(s, n.cond) ? n.then_branch : n.else_branch;
        } else if constexpr (std::is_same_v<T, FailIfStmt>) {
          if (holds(s, n.cond)) {
            cfg.stmt = n.body;
          } else {
            failed();
          }
        } else if constexpr (std::is_same_v<T, WhileStmt>) {
          if (holds(s, n.cond)) {
            cfg.stmt = st::seq(n.body, cur);
          } else {
            finish();
          }
        } else if constexpr (std::is_same_v<T, BlockStmt>) {
          std::vector<std::optional<Value>> saved;
          saved.reserve(n.locals.size());
          for (const auto& x : n.locals) saved.push_back(s.peek(Location{x, std::nullopt, {}}));
          std::vector<Stmt> items;
          if (!n.locals.empty()) items.push_back(st::par_assign(n.locals, n.inits, loc));
          items.push_back(n.body);
          if (!n.locals.empty()) items.push_back(st::restore(n.locals, std::move(saved)));
          cfg.stmt = st::seq(std::move(items), loc);
        } else if constexpr (std::is_same_v<T, MethodCallStmt>) {
          const Decl& d = lookup(decls, n.method);
          std::vector<VarRef> locals{this_var()};
          locals.insert(locals.end(), d.formals.begin(), d.formals.end());
          std::vector<Expr> inits{n.callee};
          inits.insert(inits.end(), n.args.begin(), n.args.end());
          cfg.stmt = st::fail_if(ex::ne(n.callee, ex::null()), st::block(locals, inits, d.body, loc), loc);
        } else if constexpr (std::is_same_v<T, ProcCallStmt>) {
          const Decl& d = lookup(decls, n.proc);
          cfg.stmt = bind(d.formals, n.args, d.body, loc);
        } else if constexpr (std::is_same_v<T, RestoreStmt>) {
          for (std::size_t i = 0; i < n.targets.size(); ++i) {
            Location l{n.targets[i], std::nullopt, {}};
            if (n.values[i]) {
              s.write(l, *n.values[i]);
            } else {
              s.erase(l);
            }
          }
          finish();
        }
      },
      cur.node().v);
  return true;
}

}  // namespace

std::optional<Config> step(const Config& cfg, const DeclSet& decls) {
  Config next = cfg;
  if (!advance(next, decls)) return std::nullopt;
  return next;
}

std::string to_string(RunStatus s) {
  switch (s) {
    case RunStatus::Terminated: return "TERMINATED";
    case RunStatus::Failed: return "FAIL";
    case RunStatus::OutOfFuel: return "OUT-OF-FUEL";
  }
  return "?";
}

RunResult run_stmt(const Stmt& s, const DeclSet& decls, Flavor flavor, const State& s0, std::uint64_t fuel,
                   const StepObserver& observer) {
  if (flavor == Flavor::OO && s0.this_obj().is_null()) {
    throw std::invalid_argument("object-oriented programs must start with this /= null");
  }
  Config cfg{s, s0};
  if (observer) observer(cfg);
  RunResult r;
  while (r.steps < fuel) {
    if (!advance(cfg, decls)) break;
    ++r.steps;
    if (observer) observer(cfg);
  }
  if (!cfg.stmt.is<EmptyStmt>()) {
    r.status = RunStatus::OutOfFuel;
  } else if (cfg.out.is_fail()) {
    r.status = RunStatus::Failed;
  } else {
    r.status = RunStatus::Terminated;
    r.state = cfg.out.state();
  }
  return r;
}

RunResult run(const Program& p, const State& s0, std::uint64_t fuel, const StepObserver& observer) {
  return run_stmt(p.main, p.decls, p.flavor, s0, fuel, observer);
}

std::optional<Outcome> outcome_of(const RunResult& r) {
  switch (r.status) {
    case RunStatus::Terminated: return Outcome(*r.state);
    case RunStatus::Failed: return Outcome::fail();
    case RunStatus::OutOfFuel: return std::nullopt;
  }
  return std::nullopt;
}

StepObserver safety_observer(const DeclSet& decls, Flavor flavor, SafetyCounters& counters) {
  ++counters.runs;
  // Steps rebuild only the top-level sequence, so the items are checked
  // once per node. Entries keep their node alive so addresses stay unique.
  auto memo = std::make_shared<std::unordered_map<const StmtNode*, std::pair<Stmt, bool>>>();
  auto well_typed = [&decls, flavor, memo](const Stmt& s) {
    auto it = memo->find(&s.node());
    if (it != memo->end()) return it->second.second;
    if (memo->size() > 100'000) memo->clear();
    bool ok = typecheck_stmt(s, decls, flavor, CheckMode::Runtime).empty();
    memo->emplace(&s.node(), std::make_pair(s, ok));
    return ok;
  };
  return [flavor, &counters, well_typed](const Config& cfg) {
    ++counters.steps;
    if (!cfg.out.is_fail()) {
      auto self = cfg.out.state().peek(Location{this_var(), std::nullopt, {}});
      if (flavor == Flavor::OO && self && self->as_object().is_null()) ++counters.null_this;
    }
    bool ok = true;
    if (const auto* seq = cfg.stmt.as<SeqStmt>()) {
      for (const auto& item : seq->items) ok = well_typed(item) && ok;
    } else if (cfg.stmt) {
      ok = well_typed(cfg.stmt);
    }
    if (!ok) ++counters.ill_typed;
  };
}

}  // namespace oov
