#include "doctest.h"
#include "oov/assertions.hpp"
#include "oov/gen.hpp"
#include "oov/interp.hpp"
#include "oov/io.hpp"
#include "oov/parser.hpp"

using namespace oov;

namespace {

const Type kInt = Type::basic(BaseType::Integer);
const Type kObj = Type::basic(BaseType::Object);

Location at(const VarRef& v, std::optional<ObjRef> owner = std::nullopt, std::vector<Value> index = {}) {
  return Location{v, owner, std::move(index)};
}

Value oid(std::uint64_t id) { return Value::object(ObjRef::oid(id)); }

Universe small() { return Universe::make(-2, 2, 2); }

}  // namespace

TEST_CASE("true holds everywhere") { CHECK(eval_assertion(State{}, ex::true_(), Universe{})); }

TEST_CASE("bounded chain assertion") {
  VarRef a = normal_var("a", Type::array({BaseType::Integer}, BaseType::Object));
  VarRef next = instance_var("next", kObj);
  Signature sig;
  sig.declare(a);
  sig.declare(next);
  State s;
  s.write(at(this_var()), oid(1));
  for (int i = 0; i < 3; ++i) s.write(at(a, std::nullopt, {Value::integer(i)}), oid(static_cast<std::uint64_t>(i + 1)));
  s.write(at(next, ObjRef::oid(1)), oid(2));
  s.write(at(next, ObjRef::oid(2)), oid(3));
  Expr p = parse_assertion(SourceText{"forall i: integer: 0 <= i and i <= 1 -> a[i].next = a[i + 1]"}, sig);
  Universe u = Universe::make(-3, 3, 3);
  CHECK(eval_assertion(s, p, u));
  s.write(at(next, ObjRef::oid(2)), oid(1));
  CHECK_FALSE(eval_assertion(s, p, u));
}

TEST_CASE("z lies on the chain after find terminates") {
  Program prog = load_program(data_path("find.oo"));
  Signature sig = prog.sig;
  VarRef a = normal_var("a", Type::array({BaseType::Integer}, BaseType::Object));
  sig.declare(a);
  State s0 = load_state(data_path("chain3.state"), sig);
  for (int i = 0; i < 3; ++i) s0.write(at(a, std::nullopt, {Value::integer(i)}), oid(static_cast<std::uint64_t>(i + 1)));
  RunResult r = run(prog, s0);
  REQUIRE(r.status == RunStatus::Terminated);
  Expr p = parse_assertion(SourceText{"exists i: integer: z = a[i]"}, sig);
  CHECK(eval_assertion(*r.state, p, Universe::make(0, 4, 3)));
  CHECK_FALSE(eval_assertion(*r.state, p, Universe::make(0, 1, 3)));
}

TEST_CASE("substitution into a subscripted variable tests aliasing") {
  VarRef a = normal_var("a", Type::array({BaseType::Integer}, BaseType::Integer));
  VarRef x = normal_var("x", kInt);
  VarRef y = normal_var("y", kInt);
  auto min = [](Expr l, Expr r) { return ex::cond(ex::binary(BinOp::Lt, l, r), l, r); };
  Expr s = min(ex::sub(a, {ex::var(x)}), ex::var(y));
  Expr got = substitute(s, ex::sub(a, {ex::int_lit(1)}), ex::int_lit(2));
  Expr alias = ex::cond(ex::eq(ex::var(x), ex::int_lit(1)), ex::int_lit(2), ex::sub(a, {ex::var(x)}));
  CHECK(got == min(alias, ex::var(y)));
}

TEST_CASE("substituting an instance variable into this.u") {
  VarRef u = instance_var("u", kInt);
  VarRef t = normal_var("t", kInt);
  Expr s = ex::nav(ex::this_(), u);
  Expr got = substitute(s, ex::var(u), ex::var(t));
  CHECK(got == ex::cond(ex::eq(ex::this_(), ex::this_()), ex::var(t), ex::nav(ex::this_(), u)));
  CHECK(simplify(got) == ex::var(t));
  Rng r(2);
  for (int k = 0; k < 50; ++k) {
    State st;
    st.write(at(this_var()), r.chance(0.2) ? Value::object(ObjRef::null()) : oid(1));
    st.write(at(t), Value::integer(r.range(-5, 5)));
    st.write(at(u, ObjRef::oid(1)), Value::integer(r.range(-5, 5)));
    CHECK(eval(st, got) == eval(st, ex::var(t)));
  }
}

TEST_CASE("substitution leaves other variables alone") {
  VarRef u = instance_var("u", kInt);
  VarRef z = normal_var("z", kInt);
  CHECK(substitute(ex::var(z), ex::var(u), ex::int_lit(3)) == ex::var(z));
  CHECK_THROWS_AS(substitute(ex::var(z), ex::this_(), ex::null()), std::invalid_argument);
}

TEST_CASE("substitution avoids capture") {
  VarRef i = normal_var("i", kInt);
  VarRef x = normal_var("x", kInt);
  Expr p = ex::exists(i, ex::eq(ex::var(i), ex::binary(BinOp::Add, ex::var(x), ex::int_lit(1))));
  Expr got = substitute(p, ex::var(x), ex::var(i));
  const auto* q = got.as<QuantExpr>();
  REQUIRE(q);
  CHECK(q->var.name != "i");
  CHECK(free_vars(got) == NameSet{"i"});
  Universe u = small();
  for (int v = -2; v <= 2; ++v) {
    State s;
    s.write(at(i), Value::integer(v));
    // exists j: j = i + 1 holds exactly when i + 1 is in range
    CHECK(eval_assertion(s, got, u) == (v + 1 <= 2));
  }
}

TEST_CASE("renaming") {
  VarRef x = normal_var("x", kInt);
  VarRef y = normal_var("y", kInt);
  VarRef z = normal_var("z", kInt);
  VarRef w = normal_var("w", kInt);
  CHECK(rename(ex::eq(ex::var(x), ex::int_lit(1)), {x}, {y}) == ex::eq(ex::var(y), ex::int_lit(1)));
  Expr p = ex::exists(x, ex::eq(ex::var(x), ex::var(z)));
  CHECK(rename(p, {z}, {w}) == ex::exists(x, ex::eq(ex::var(x), ex::var(w))));
  CHECK_THROWS_AS(rename(p, {z, x}, {w}), std::invalid_argument);
  CHECK_THROWS_AS(rename(p, {z}, {normal_var("o", kObj)}), std::invalid_argument);
  VarRef a = normal_var("a", Type::array({BaseType::Integer}, BaseType::Integer));
  VarRef c = normal_var("c", Type::array({BaseType::Integer}, BaseType::Integer));
  CHECK(rename(ex::sub(a, {ex::var(x)}), {a}, {c}) == ex::sub(c, {ex::var(x)}));
}

TEST_CASE("renaming agrees with updating the renamed variables") {
  Rng r(37);
  Universe u = small();
  const auto& V = vocab();
  VarRef x2 = normal_var("x2", Type::basic(BaseType::Integer));
  VarRef p2 = normal_var("p2", Type::basic(BaseType::Object));
  ExprGenOptions eo;
  eo.navigation = true;
  for (int k = 0; k < 500; ++k) {
    Expr p = gen_assertion(r, eo);
    State s = gen_state(r, u);
    s.write(at(x2), Value::integer(r.range(-2, 2)));
    s.write(at(p2), r.chance(0.5) ? oid(1) : Value::object(ObjRef::null()));
    Expr renamed = rename(p, {V.x, V.p}, {x2, p2});
    State t = s;
    t.write(at(V.x), s.read(at(x2)));
    t.write(at(V.p), s.read(at(p2)));
    CHECK(eval_assertion(s, renamed, u) == eval_assertion(t, p, u));
  }
}

TEST_CASE("substitution lemma against update-then-evaluate") {
  Rng r(41);
  Universe u = small();
  const auto& V = vocab();
  ExprGenOptions eo;
  eo.navigation = true;
  ExprGenOptions io;
  io.depth = 1;
  io.navigation = false;
  for (int k = 0; k < 1000; ++k) {
    State s = gen_state(r, u);
    Expr target;
    Expr t;
    switch (r.range(0, 4)) {
      case 0: target = ex::var(V.x); t = gen_expr(r, BaseType::Integer, eo); break;
      case 1: target = ex::sub(V.arr, {gen_expr(r, BaseType::Integer, io)}); t = gen_expr(r, BaseType::Integer, eo); break;
      case 2: target = ex::var(V.f); t = gen_expr(r, BaseType::Integer, eo); break;
      case 3: target = ex::var(V.nx); t = gen_expr(r, BaseType::Object, eo); break;
      default: target = ex::sub(V.h, {gen_expr(r, BaseType::Integer, io)}); t = gen_expr(r, BaseType::Integer, eo); break;
    }
    Expr p = gen_assertion(r, eo);
    State updated = update(Outcome(s), target, eval(s, t)).state();
    CHECK_MESSAGE(eval_assertion(s, substitute(p, target, t), u) == eval_assertion(updated, p, u),
                  render(p) << " [" << render(target) << " := " << render(t) << "]");
  }
}

TEST_CASE("parallel substitution with this among the targets") {
  VarRef f = instance_var("f", kInt);
  VarRef p = normal_var("p", kObj);
  VarRef n = normal_var("n", kInt);
  Expr body = ex::binary(BinOp::Add, ex::var(f), ex::var(n));
  Expr got = substitute_parallel(body, {this_var(), n}, {ex::var(p), ex::int_lit(1)});
  CHECK(got == ex::binary(BinOp::Add, ex::nav(ex::var(p), f), ex::int_lit(1)));
}

TEST_CASE("simplification preserves meaning") {
  Rng r(43);
  Universe u = small();
  ExprGenOptions eo;
  eo.navigation = true;
  for (int k = 0; k < 1000; ++k) {
    Expr p = gen_assertion(r, eo);
    State s = gen_state(r, u);
    CHECK(eval_assertion(s, simplify(p), u) == eval_assertion(s, p, u));
    CHECK(eval_assertion(s, normal_form(p), u) == eval_assertion(s, p, u));
    CHECK(simplify(simplify(p)) == simplify(p));
  }
}

TEST_CASE("quantifier-free assertions ignore the universe") {
  Rng r(47);
  ExprGenOptions eo;
  eo.navigation = true;
  int checked = 0;
  for (int k = 0; k < 1000 && checked < 300; ++k) {
    Expr p = gen_assertion(r, eo);
    if (render(p).find("exists") != std::string::npos || render(p).find("forall") != std::string::npos) continue;
    ++checked;
    State s = gen_state(r, small());
    CHECK(eval_assertion(s, p, small()) == eval_assertion(s, p, Universe::make(-20, 20, 6)));
  }
  CHECK(checked == 300);
}

TEST_CASE("alpha equivalence and fresh names") {
  VarRef i = normal_var("i", kInt);
  VarRef j = normal_var("j", kInt);
  VarRef x = normal_var("x", kInt);
  CHECK(alpha_equal(ex::forall(i, ex::eq(ex::var(i), ex::var(x))), ex::forall(j, ex::eq(ex::var(j), ex::var(x)))));
  CHECK_FALSE(alpha_equal(ex::forall(i, ex::eq(ex::var(i), ex::var(x))), ex::forall(x, ex::eq(ex::var(x), ex::var(x)))));
  VarRef f = instance_var("f", kInt);
  CHECK(equivalent_syntax(ex::var(f), ex::nav(ex::this_(), f)));
  CHECK(fresh_name("i", {"i"}) == "i#1");
  CHECK(fresh_name("i#1", {"i", "i#1"}) == "i#2");
  CHECK(all_names(ex::forall(i, ex::eq(ex::var(i), ex::var(x)))) == NameSet{"i", "x"});
}
