#include <regex>

#include "doctest.h"
#include "oov/gen.hpp"
#include "oov/interp.hpp"
#include "oov/io.hpp"
#include "oov/parser.hpp"

using namespace oov;

namespace {

Program prog(const std::string& text) { return parse_program(SourceText{text}); }

bool has_rule(const std::vector<Diagnostic>& ds, const std::string& needle) {
  for (const auto& d : ds) {
    if (to_string(d).find(needle) != std::string::npos) return true;
  }
  return false;
}

// Identifiers of the rendering that name declared variables, plus `this`
// for instance variables and method calls.
NameSet token_vars(const Stmt& s, const Signature& sig) {
  NameSet out;
  std::string text = render(s);
  static const std::regex ident(R"([A-Za-z_][A-Za-z0-9_]*)");
  for (auto it = std::sregex_iterator(text.begin(), text.end(), ident); it != std::sregex_iterator(); ++it) {
    std::string w = it->str();
    if (w == "this") out.insert(w);
    if (const VarRef* v = sig.find(w)) {
      out.insert(w);
      if (v->is_instance()) out.insert("this");
    }
  }
  if (text.find('.') != std::string::npos) out.insert("this");
  return out;
}

void walk_change(const Stmt& s, NameSet locals, NameSet& out) {
  if (const auto* a = s.as<AssignStmt>()) {
    std::string n = a->target.is<VarExpr>() ? a->target.as<VarExpr>()->var.name : a->target.as<SubExpr>()->array.name;
    if (!locals.count(n)) out.insert(n);
  } else if (const auto* p = s.as<ParAssignStmt>()) {
    for (const auto& t : p->targets) {
      if (!locals.count(t.name)) out.insert(t.name);
    }
  } else if (const auto* q = s.as<SeqStmt>()) {
    for (const auto& i : q->items) walk_change(i, locals, out);
  } else if (const auto* c = s.as<IfStmt>()) {
    walk_change(c->then_branch, locals, out);
    walk_change(c->else_branch, locals, out);
  } else if (const auto* f = s.as<FailIfStmt>()) {
    walk_change(f->body, locals, out);
  } else if (const auto* w = s.as<WhileStmt>()) {
    walk_change(w->body, locals, out);
  } else if (const auto* b = s.as<BlockStmt>()) {
    for (const auto& l : b->locals) locals.insert(l.name);
    walk_change(b->body, locals, out);
  }
}

}  // namespace

TEST_CASE("find typechecks") {
  Program p = load_program(data_path("find.oo"));
  CHECK(p.flavor == Flavor::OO);
  CHECK(typecheck(p).empty());
}

TEST_CASE("assignment to this is rejected") {
  Program p = prog("var x: integer;\nmethod m() { skip }\nthis := null");
  auto ds = typecheck(p);
  REQUIRE_FALSE(ds.empty());
  CHECK(has_rule(ds, "assignment to this"));
  CHECK(ds.front().loc.line == 3);
}

TEST_CASE("skip with no declarations typechecks") { CHECK(typecheck(prog("skip")).empty()); }

TEST_CASE("typecheck is deterministic") {
  Program p = prog("var x: integer;\nvar b: boolean;\nx := b; b := 1; this := null");
  auto a = typecheck(p);
  auto b = typecheck(p);
  REQUIRE(a.size() == b.size());
  CHECK(a.size() >= 2);
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(to_string(a[i]) == to_string(b[i]));
}

TEST_CASE("ill-typed programs are reported") {
  CHECK_FALSE(typecheck(prog("var x: integer;\nvar b: boolean;\nx := b")).empty());
  CHECK_FALSE(typecheck(prog("var x: integer;\nproc p(u: integer) { skip }\np(1, 2)")).empty());
  CHECK_FALSE(typecheck(prog("var x: integer;\nproc p(u: integer) { skip }\nq(1)")).empty());
  CHECK_FALSE(typecheck(prog("var x: integer;\nivar f: integer;\nmethod m() { skip }\nbegin local f := 1; skip end"))
                  .empty());
}

TEST_CASE("var and change of a subscripted assignment") {
  Signature sig;
  sig.declare(normal_var("a", Type::array({BaseType::Integer}, BaseType::Integer)));
  sig.declare(normal_var("i", Type::basic(BaseType::Integer)));
  sig.declare(normal_var("j", Type::basic(BaseType::Integer)));
  Stmt s = parse_stmt(SourceText{"a[i] := j"}, sig);
  auto va = analyze_vars(s);
  CHECK(va.change == NameSet{"a"});
  CHECK(va.var == NameSet{"a", "i", "j"});
}

TEST_CASE("block locals are not changed globals") {
  Signature sig;
  sig.declare(normal_var("y", Type::basic(BaseType::Integer)));
  Stmt s = parse_stmt(SourceText{"begin local x := 0; y := x end"}, sig);
  auto va = analyze_vars(s);
  CHECK(va.change == NameSet{"y"});
  CHECK(va.var == NameSet{"x", "y"});
}

TEST_CASE("free variables skip bound ones") {
  Signature sig;
  sig.declare(normal_var("a", Type::array({BaseType::Integer}, BaseType::Integer)));
  sig.declare(normal_var("z", Type::basic(BaseType::Integer)));
  Expr p = parse_assertion(SourceText{"exists i: integer: z = a[i]"}, sig);
  CHECK(free_vars(p) == NameSet{"a", "z"});
  CHECK(vars_of(ex::forall(normal_var("i", Type::basic(BaseType::Integer)), p)) == NameSet{"a", "z"});
}

TEST_CASE("change of declarations excludes formals") {
  Program p = load_program(data_path("add.oo"));
  CHECK(change_of(p.decls) == NameSet{"sum"});
  CHECK(vars_of(p.decls) == NameSet{"sum", "this", "x"});
}

TEST_CASE("variable analysis agrees with naive oracles on random programs") {
  Rng r(7);
  const Signature sig = vocab().signature();
  for (int k = 0; k < 1000; ++k) {
    Program p = gen_oo_program(r);
    NameSet expect_change;
    walk_change(p.main, {}, expect_change);
    CHECK(change_of(p.main) == expect_change);
    CHECK(vars_of(p.main) == token_vars(p.main, sig));
  }
}

TEST_CASE("change covers every variable a call-free run modifies") {
  Rng r(11);
  Universe u;
  const auto& V = vocab();
  for (int k = 0; k < 300; ++k) {
    Stmt s = gen_loop_free(r, 3);
    State s0 = gen_state(r, u);
    RunResult res = run_stmt(s, {}, Flavor::Kernel, s0, 10'000);
    if (res.status != RunStatus::Terminated) continue;
    NameSet ch = change_of(s);
    for (const auto& v : {V.x, V.y, V.b, V.w}) {
      Location l{v, std::nullopt, {}};
      if (!(res.state->read(l) == s0.read(l))) CHECK(ch.count(v.name));
    }
  }
}

TEST_CASE("generated programs typecheck and steps preserve typing") {
  Rng r(3);
  Universe u;
  for (int k = 0; k < 200; ++k) {
    Program p = gen_oo_program(r);
    REQUIRE(typecheck(p).empty());
    Config cfg{p.main, gen_state(r, u)};
    for (int n = 0; n < 300; ++n) {
      auto next = step(cfg, p.decls);
      if (!next) break;
      cfg = *next;
      if (cfg.stmt.is<EmptyStmt>()) break;
      CHECK(typecheck_stmt(cfg.stmt, p.decls, p.flavor, CheckMode::Runtime).empty());
    }
  }
}
