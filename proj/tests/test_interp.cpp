#include "doctest.h"
#include "oov/gen.hpp"
#include "oov/interp.hpp"
#include "oov/io.hpp"
#include "oov/parser.hpp"

using namespace oov;

namespace {

const Type kInt = Type::basic(BaseType::Integer);

Location at(const VarRef& v) { return Location{v, std::nullopt, {}}; }

Program find_program() { return load_program(data_path("find.oo")); }

}  // namespace

TEST_CASE("a false failure guard fails in one step") {
  Signature sig;
  Stmt s = parse_stmt(SourceText{"if false -> skip fi"}, sig);
  auto next = step(Config{s, State{}}, {});
  REQUIRE(next);
  CHECK(next->stmt.is<EmptyStmt>());
  CHECK(next->out.is_fail());
  CHECK_FALSE(step(*next, {}));
}

TEST_CASE("failure inside a sequence aborts it") {
  Signature sig;
  sig.declare(normal_var("x", kInt));
  Stmt s = parse_stmt(SourceText{"if false -> skip fi; x := 1"}, sig);
  auto next = step(Config{s, State{}}, {});
  REQUIRE(next);
  CHECK(next->stmt.is<EmptyStmt>());
  CHECK(next->out.is_fail());
}

TEST_CASE("block entry injects the saved values") {
  VarRef x = normal_var("x", kInt);
  Signature sig;
  sig.declare(x);
  Stmt s = parse_stmt(SourceText{"begin local x := 1; skip end"}, sig);
  State sigma;
  sigma.write(at(x), Value::integer(42));
  auto next = step(Config{s, sigma}, {});
  REQUIRE(next);
  CHECK(states_equal(next->out.state(), sigma));
  auto items = seq_items(next->stmt);
  REQUIRE(items.size() == 3);
  CHECK(items[0] == st::assign(ex::var(x), ex::int_lit(1)));
  CHECK(items[1].is<SkipStmt>());
  const auto* r = items[2].as<RestoreStmt>();
  REQUIRE(r);
  CHECK(r->targets == std::vector<VarRef>{x});
  CHECK(r->values == std::vector<std::optional<Value>>{Value::integer(42)});
}

TEST_CASE("call by value binds a clashing formal") {
  Program p = parse_program(SourceText{"var u: integer;\nvar y: integer;\nproc P(u: integer) { y := u }\nP(u + 1)"});
  const auto& u = *p.sig.find("u");
  State sigma;
  sigma.write(at(u), Value::integer(4));
  Config cfg{p.main, sigma};
  for (int k = 0; k < 3; ++k) {
    auto next = step(cfg, p.decls);
    REQUIRE(next);
    cfg = *next;
  }
  auto items = seq_items(cfg.stmt);
  REQUIRE(items.size() == 2);
  CHECK(items[0] == p.decls[0].body);
  const auto* r = items[1].as<RestoreStmt>();
  REQUIRE(r);
  CHECK(r->values == std::vector<std::optional<Value>>{Value::integer(4)});
  CHECK(cfg.out.state().read(at(u)) == Value::integer(5));
  RunResult res = run(p, sigma);
  REQUIRE(res.status == RunStatus::Terminated);
  CHECK(res.state->read(at(u)) == Value::integer(4));
  CHECK(res.state->read(at(*p.sig.find("y"))) == Value::integer(5));
}

TEST_CASE("find terminates on a chain that reaches z") {
  Program p = find_program();
  State s0 = load_state(data_path("chain3.state"), p.sig);
  RunResult r = run(p, s0);
  REQUIRE(r.status == RunStatus::Terminated);
  // find only reads; every block local is restored
  CHECK(states_equal(*r.state, s0));
}

TEST_CASE("find fails when the chain hits null first") {
  Program p = find_program();
  RunResult r = run(p, load_state(data_path("chain_null.state"), p.sig));
  CHECK(r.status == RunStatus::Failed);
  CHECK_FALSE(r.state.has_value());
}

TEST_CASE("find diverges on a cycle without z") {
  Program p = find_program();
  RunResult r = run(p, load_state(data_path("chain_loop.state"), p.sig), 5000);
  CHECK(r.status == RunStatus::OutOfFuel);
  CHECK(r.steps == 5000);
}

TEST_CASE("a method call is a guarded block") {
  Program p = find_program();
  State s0 = load_state(data_path("chain3.state"), p.sig);
  auto next = step(Config{p.main, s0}, p.decls);
  REQUIRE(next);
  const auto* g = next->stmt.as<FailIfStmt>();
  REQUIRE(g);
  CHECK(g->cond == ex::ne(ex::this_(), ex::null()));
  const auto* b = g->body.as<BlockStmt>();
  REQUIRE(b);
  REQUIRE(b->locals.size() == 2);
  CHECK(b->locals[0] == this_var());
  CHECK(b->body == p.decls[0].body);
}

TEST_CASE("calls on null fail") {
  Program p = load_program(data_path("nullm.oo"));
  State s0;
  s0.write(at(this_var()), Value::object(ObjRef::oid(1)));
  CHECK(run(p, s0).status == RunStatus::Failed);
}

TEST_CASE("object programs need a non-null this") {
  Program p = find_program();
  CHECK_THROWS_AS(run(p, State{}), std::invalid_argument);
}

TEST_CASE("step is deterministic") {
  Rng r(23);
  Universe u;
  for (int k = 0; k < 100; ++k) {
    Program p = gen_oo_program(r);
    Config cfg{p.main, gen_state(r, u)};
    for (int n = 0; n < 100; ++n) {
      auto a = step(cfg, p.decls);
      auto b = step(cfg, p.decls);
      REQUIRE(a.has_value() == b.has_value());
      if (!a) break;
      CHECK(a->stmt == b->stmt);
      CHECK(states_equal(a->out, b->out));
      cfg = *a;
    }
  }
}

TEST_CASE("more fuel never changes a finished run") {
  Rng r(29);
  Universe u;
  int finished = 0;
  for (int k = 0; k < 200; ++k) {
    Program p = gen_oo_program(r);
    State s0 = gen_state(r, u);
    RunResult a = run(p, s0, 20'000);
    if (a.status == RunStatus::OutOfFuel) continue;
    ++finished;
    CHECK(run(p, s0, a.steps).status == a.status);
    CHECK(run(p, s0, a.steps - 1).status == RunStatus::OutOfFuel);
    RunResult b = run(p, s0, a.steps * 3 + 7);
    CHECK(b.status == a.status);
    CHECK(b.steps == a.steps);
    if (a.state) CHECK(states_equal(*a.state, *b.state));
  }
  CHECK(finished > 100);
}

TEST_CASE("block locals are restored on exit") {
  Rng r(31);
  Universe u;
  const auto& V = vocab();
  for (int k = 0; k < 500; ++k) {
    State s0 = gen_state(r, u);
    s0.write(at(V.w), Value::integer(r.range(-3, 3)));
    Stmt body = gen_loop_free(r, 3);
    Stmt s = st::block({V.w, V.x}, {ex::int_lit(9), ex::var(V.w)}, body);
    RunResult res = run_stmt(s, {}, Flavor::Kernel, s0, 10'000);
    if (res.status != RunStatus::Terminated) continue;
    CHECK(res.state->read(at(V.w)) == s0.read(at(V.w)));
    CHECK(res.state->read(at(V.x)) == s0.read(at(V.x)));
  }
}

TEST_CASE("safety counters stay zero on the find runs") {
  Program p = find_program();
  SafetyCounters c;
  for (const char* f : {"chain3.state", "chain_null.state", "chain_loop.state"}) {
    run(p, load_state(data_path(f), p.sig), 2000, safety_observer(p.decls, p.flavor, c));
  }
  CHECK(c.runs == 3);
  CHECK(c.steps > 0);
  CHECK(c.null_this == 0);
  CHECK(c.ill_typed == 0);
}

TEST_CASE("outcomes of runs") {
  RunResult t{RunStatus::Terminated, State{}, 1};
  CHECK_FALSE(outcome_of(t)->is_fail());
  CHECK(outcome_of(RunResult{RunStatus::Failed, std::nullopt, 1})->is_fail());
  CHECK_FALSE(outcome_of(RunResult{RunStatus::OutOfFuel, std::nullopt, 1}).has_value());
}
