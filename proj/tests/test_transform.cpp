#include "doctest.h"
#include "oov/assertions.hpp"
#include "oov/gen.hpp"
#include "oov/interp.hpp"
#include "oov/io.hpp"
#include "oov/parser.hpp"
#include "oov/transform.hpp"

using namespace oov;

namespace {

const Type kInt = Type::basic(BaseType::Integer);
const Type kObj = Type::basic(BaseType::Object);

Location at(const VarRef& v, std::optional<ObjRef> owner = std::nullopt, std::vector<Value> index = {}) {
  return Location{v, owner, std::move(index)};
}

Universe small() { return Universe::make(-2, 2, 2); }

}  // namespace

TEST_CASE("add example") {
  ThetaImage img = transform_program(load_program(data_path("add.oo")));
  CHECK(img.program.flavor == Flavor::Recursive);
  CHECK(render(img.program.main) == "if y /= null -> add(y,1) fi; if y /= null -> add(y,2) fi");
  REQUIRE(img.program.decls.size() == 1);
  const Decl& d = img.program.decls[0];
  REQUIRE(d.formals.size() == 2);
  CHECK(d.formals[0] == this_var());
  VarRef sum = normal_var("sum", Type::array({BaseType::Object}, BaseType::Integer));
  Expr cell = ex::sub(sum, {ex::this_()});
  CHECK(d.body == st::assign(cell, ex::binary(BinOp::Add, cell, ex::var(d.formals[1]))));
  REQUIRE(img.mapping.size() == 1);
  CHECK(img.mapping[0].lifted == sum);
  CHECK(render_mapping(img.mapping) == "// sum: integer => sum: object -> integer\n");
}

TEST_CASE("find matches the hand-derived image") {
  ThetaImage img = transform_program(load_program(data_path("find.oo")));
  Program golden = load_program(data_path("find.rec"));
  CHECK(img.program == golden);
}

TEST_CASE("skip and this are fixed points") {
  CHECK(theta(st::skip()) == st::skip());
  CHECK(theta(ex::this_()) == ex::this_());
  CHECK(theta(ex::null()) == ex::null());
}

TEST_CASE("lifted types") {
  CHECK(lift(instance_var("x", kInt)).type == Type::array({BaseType::Object}, BaseType::Integer));
  CHECK_FALSE(lift(instance_var("x", kInt)).is_instance());
  VarRef a = instance_var("a", Type::array({BaseType::Integer, BaseType::Boolean}, BaseType::Object));
  CHECK(lift(a).type == Type::array({BaseType::Object, BaseType::Integer, BaseType::Boolean}, BaseType::Object));
}

TEST_CASE("only object programs are transformed") {
  CHECK_THROWS_AS(transform_program(load_program(data_path("countdown.krn"))), std::invalid_argument);
}

TEST_CASE("states") {
  CHECK(theta(Outcome::fail()).is_fail());
  VarRef sum = instance_var("sum", kInt);
  State s;
  s.write(at(this_var()), Value::object(ObjRef::oid(1)));
  s.write(at(sum, ObjRef::oid(1)), Value::integer(3));
  State t = theta(s);
  CHECK(t.read(at(lift(sum), std::nullopt, {Value::object(ObjRef::oid(1))})) == Value::integer(3));
  CHECK(t.read(at(lift(sum), std::nullopt, {Value::object(ObjRef::oid(2))})) == Value::integer(0));
  CHECK(t.read(at(this_var())) == Value::object(ObjRef::oid(1)));
  CHECK(t.locals().empty());
}

TEST_CASE("assertions") {
  VarRef x = normal_var("x", kObj);
  VarRef next = instance_var("next", kObj);
  CHECK(theta(ex::eq(ex::nav(ex::var(x), next), ex::null())) == ex::eq(ex::sub(lift(next), {ex::var(x)}), ex::null()));
  VarRef a = normal_var("a", Type::array({BaseType::Integer}, BaseType::Object));
  VarRef i = normal_var("i", kInt);
  Expr ai = ex::sub(a, {ex::var(i)});
  Expr ai1 = ex::sub(a, {ex::binary(BinOp::Add, ex::var(i), ex::int_lit(1))});
  Expr p = ex::forall(i, ex::eq(ex::nav(ai, next), ai1));
  CHECK(theta(p) == ex::forall(i, ex::eq(ex::sub(lift(next), {ai}), ai1)));
  CHECK(theta(ex::var(next)) == ex::sub(lift(next), {ex::this_()}));
}

TEST_CASE("translation lemma") {
  Rng r(53);
  Universe u = small();
  const auto& V = vocab();
  ExprGenOptions eo;
  eo.navigation = true;
  for (int k = 0; k < 1000; ++k) {
    State s = gen_state(r, u);
    BaseType ty = r.pick(std::vector<BaseType>{BaseType::Integer, BaseType::Boolean, BaseType::Object});
    Expr e = gen_expr(r, ty, eo);
    CHECK(eval(s, e) == eval(theta(s), theta(e)));
    // update then transform equals transform then update
    Expr target = r.chance(0.5) ? ex::var(V.f) : ex::sub(V.h, {ex::int_lit(r.range(-2, 2))});
    Value d = Value::integer(r.range(-3, 3));
    State lhs = theta(update(Outcome(s), target, d).state());
    State rhs = update(Outcome(theta(s)), theta(target), d).state();
    CHECK(states_equal(lhs, rhs));
  }
}

TEST_CASE("assertion lemma") {
  Rng r(59);
  Universe u = small();
  ExprGenOptions eo;
  eo.navigation = true;
  for (int k = 0; k < 1000; ++k) {
    State s = gen_state(r, u);
    Expr p = gen_assertion(r, eo);
    CHECK(eval_assertion(s, p, u) == eval_assertion(theta(s), theta(p), u));
  }
}

TEST_CASE("homomorphism lemma") {
  Rng r(61);
  Universe u = small();
  const auto& V = vocab();
  ExprGenOptions eo;
  eo.navigation = true;
  for (int k = 0; k < 1000; ++k) {
    Expr p = gen_assertion(r, eo);
    Expr target = r.chance(0.5) ? ex::var(V.f) : ex::sub(V.h, {gen_expr(r, BaseType::Integer, ExprGenOptions{1})});
    Expr t = gen_expr(r, BaseType::Integer, eo);
    Expr lhs = theta(substitute(p, target, t));
    Expr rhs = substitute(theta(p), theta(target), theta(t));
    CHECK_MESSAGE(equivalent_syntax(lhs, rhs), render(lhs) << "  vs  " << render(rhs));
    State s = gen_state(r, u);
    CHECK(eval_assertion(theta(s), lhs, u) == eval_assertion(theta(s), rhs, u));
  }
}

TEST_CASE("image programs behave like their sources") {
  Rng r(67);
  Universe u;
  int compared = 0;
  for (int k = 0; k < 300; ++k) {
    Program p = gen_oo_program(r);
    State s0 = gen_state(r, u);
    RunResult a = run(p, s0, 20'000);
    if (a.status == RunStatus::OutOfFuel) continue;
    ThetaImage img = transform_program(p);
    CHECK(typecheck(img.program).empty());
    RunResult b = run(img.program, theta(s0), 40'000);
    if (b.status == RunStatus::OutOfFuel) continue;
    ++compared;
    REQUIRE(a.status == b.status);
    if (a.state) CHECK(states_equal(theta(*a.state), *b.state));
  }
  CHECK(compared > 200);
}

TEST_CASE("formulas and declarations map componentwise") {
  Program p = load_program(data_path("add.oo"));
  Formula f{ex::true_(), p.main, ex::eq(ex::var(*p.sig.find("sum")), ex::int_lit(3))};
  Formula g = theta(f);
  CHECK(g.pre == theta(f.pre));
  CHECK(g.stmt == theta(f.stmt));
  CHECK(g.post == theta(f.post));
  CHECK(theta(p.decls)[0] == theta(p.decls[0]));
  Signature sig = theta(p.sig);
  REQUIRE(sig.find("sum"));
  CHECK_FALSE(sig.find("sum")->is_instance());
}
