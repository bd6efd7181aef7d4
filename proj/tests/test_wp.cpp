#include "doctest.h"
#include "oov/assertions.hpp"
#include "oov/gen.hpp"
#include "oov/io.hpp"
#include "oov/parser.hpp"
#include "oov/wp.hpp"

using namespace oov;

namespace {

const Type kInt = Type::basic(BaseType::Integer);

struct Fixture {
  Signature sig;
  VarRef x = normal_var("x", kInt);
  VarRef y = normal_var("y", kInt);
  VarRef b = normal_var("b", Type::basic(BaseType::Boolean));
  Universe u = Universe::make(-2, 2, 1);

  Fixture() {
    sig.declare(x);
    sig.declare(y);
    sig.declare(b);
  }
  Stmt stmt(const std::string& t) { return parse_stmt(SourceText{t}, sig); }
  Expr assertion(const std::string& t) { return parse_assertion(SourceText{t}, sig); }
  WpSet wp(const Stmt& s, const Expr& p, WpMode mode = WpMode::Partial, std::uint64_t fuel = 10'000) {
    return wp_semantic(s, p, space_for(s, {p}, u), {}, Flavor::Kernel, fuel, mode);
  }
};

Value int_at(const State& s, const VarRef& v) { return s.read(Location{v, std::nullopt, {}}); }

std::vector<bool> in_set(const WpSet& w) {
  std::vector<bool> out;
  for (auto m : w.member) out.push_back(m == Membership::In);
  return out;
}

}  // namespace

TEST_CASE("increment with post x = 1") {
  Fixture f;
  WpSet w = f.wp(f.stmt("x := x + 1"), f.assertion("x = 1"));
  REQUIRE(w.states.size() == 5);
  CHECK(w.count(Membership::In) == 1);
  for (std::size_t i = 0; i < w.states.size(); ++i) {
    CHECK((w.member[i] == Membership::In) == (int_at(w.states[i], f.x) == Value::integer(0)));
  }
}

TEST_CASE("skip leaves the extension of the postcondition") {
  Fixture f;
  Expr p = f.assertion("x < y or b");
  Stmt s = f.stmt("skip");
  StateSpace space = space_for(s, {p}, f.u);
  CHECK(space.size() == 50);
  WpSet w = wp_semantic(s, p, space, {}, Flavor::Kernel, 100, WpMode::Partial);
  CHECK(in_set(w) == extension(p, space));
}

TEST_CASE("strong failure statements intersect with the guard") {
  Fixture f;
  Expr p = f.assertion("y > 0");
  Stmt body = f.stmt("y := x - 1");
  Stmt s = st::fail_if(f.assertion("x > y"), body);
  StateSpace space = space_for(s, {p}, f.u);
  WpSet whole = wp_semantic(s, p, space, {}, Flavor::Kernel, 100, WpMode::StrongPartial);
  WpSet inner = wp_semantic(body, p, space, {}, Flavor::Kernel, 100, WpMode::StrongPartial);
  auto guard = extension(f.assertion("x > y"), space);
  for (std::size_t i = 0; i < space.size(); ++i) {
    CHECK((whole.member[i] == Membership::In) == (guard[i] && inner.member[i] == Membership::In));
  }
  WpSet partial = wp_semantic(s, p, space, {}, Flavor::Kernel, 100, WpMode::Partial);
  for (std::size_t i = 0; i < space.size(); ++i) {
    CHECK((partial.member[i] == Membership::In) == (!guard[i] || inner.member[i] == Membership::In));
  }
}

TEST_CASE("countdown") {
  Program p = load_program(data_path("countdown.krn"));
  Expr post = parse_assertion(SourceText{"x = 0"}, p.sig);
  StateSpace space = space_for(p.main, {post}, Universe::make(-2, 2, 1));
  WpSet w = wp_semantic(p.main, post, space, p.decls, p.flavor, 1000, WpMode::Partial);
  const VarRef& x = *p.sig.find("x");
  for (std::size_t i = 0; i < w.states.size(); ++i) {
    CHECK((w.member[i] == Membership::In) == (int_at(w.states[i], x).as_int() >= 0));
  }
}

TEST_CASE("divergence is unknown, never classified") {
  Fixture f;
  WpSet w = f.wp(f.stmt("while x = x do skip od"), f.assertion("false"), WpMode::Partial, 50);
  CHECK(w.count(Membership::Unknown) == w.states.size());
  CHECK(w.has_unknown());
}

TEST_CASE("symbolic assignment is substitution") {
  Fixture f;
  Expr p = f.assertion("x + y > 0");
  CHECK(wp_symbolic(f.stmt("x := y * 2"), p, WpMode::Partial) == f.assertion("y * 2 + y > 0"));
}

TEST_CASE("symbolic partial failure statement") {
  Fixture f;
  Expr p = f.assertion("y = 1");
  Expr b = f.assertion("x > 0");
  Expr got = wp_symbolic(st::fail_if(b, st::skip()), p, WpMode::Partial);
  Expr expect = ex::or_(ex::and_(b, p), ex::not_(b));
  Stmt s = st::fail_if(b, st::skip());
  StateSpace space = space_for(s, {p}, f.u);
  CHECK(extension(got, space) == extension(expect, space));
  Expr strong = wp_symbolic(s, p, WpMode::StrongPartial);
  CHECK(extension(strong, space) == extension(ex::and_(b, p), space));
}

TEST_CASE("symbolic block") {
  Fixture f;
  Stmt s = f.stmt("begin local w := 0; y := w end");
  Expr p = f.assertion("y = 0");
  Expr got = wp_symbolic(s, p, WpMode::Partial);
  CHECK(simplify(got) == ex::true_());
  StateSpace space = space_for(s, {p}, f.u);
  for (bool v : extension(got, space)) CHECK(v);
}

TEST_CASE("unsupported symbolic constructs") {
  Fixture f;
  Expr p = f.assertion("x = 0");
  CHECK_THROWS_AS(wp_symbolic(f.stmt("while x > 0 do x := x - 1 od"), p, WpMode::Partial), UnsupportedWp);
  CHECK_THROWS_AS(wp_symbolic(st::proc_call("P", {}), p, WpMode::Partial), UnsupportedWp);
  CHECK_THROWS_AS(wp_symbolic(f.stmt("begin local x := 1; y := x end"), p, WpMode::Partial), UnsupportedWp);
}

TEST_CASE("symbolic and semantic agree on random loop-free statements") {
  Rng r(71);
  ExprGenOptions eo;
  eo.depth = 2;
  eo.instance = false;
  const auto& V = vocab();
  Universe u = Universe::make(-2, 2, 1);
  for (int k = 0; k < 300; ++k) {
    Stmt s = gen_loop_free(r, 3);
    Expr p = gen_assertion(r, eo);
    std::vector<Location> cells;
    for (int i = -2; i <= 2; ++i) {
      if (r.chance(0.3)) cells.push_back(Location{V.arr, std::nullopt, {Value::integer(i)}});
    }
    StateSpace space = space_for(s, {p}, u, cells);
    if (space.size() > 1000) continue;
    for (WpMode mode : {WpMode::Partial, WpMode::StrongPartial}) {
      WpSet w = wp_semantic(s, p, space, {}, Flavor::Kernel, 10'000, mode);
      REQUIRE_FALSE(w.has_unknown());
      CHECK_MESSAGE(extension(wp_symbolic(s, p, mode), space) == in_set(w), render(s) << " / " << render(p));
    }
  }
}

TEST_CASE("monotonicity and mode ordering") {
  Rng r(73);
  ExprGenOptions eo;
  eo.depth = 2;
  eo.instance = false;
  Universe u = Universe::make(-2, 2, 1);
  for (int k = 0; k < 200; ++k) {
    Stmt s = gen_loop_free(r, 3);
    Expr p = gen_assertion(r, eo);
    Expr q = ex::or_(p, gen_assertion(r, eo));
    StateSpace space = space_for(s, {p, q}, u);
    if (space.size() > 1000) continue;
    WpSet wp_p = wp_semantic(s, p, space, {}, Flavor::Kernel, 10'000, WpMode::Partial);
    WpSet wp_q = wp_semantic(s, q, space, {}, Flavor::Kernel, 10'000, WpMode::Partial);
    WpSet sp_p = wp_semantic(s, p, space, {}, Flavor::Kernel, 10'000, WpMode::StrongPartial);
    for (std::size_t i = 0; i < space.size(); ++i) {
      if (wp_p.member[i] == Membership::In) CHECK(wp_q.member[i] == Membership::In);
      if (sp_p.member[i] == Membership::In) CHECK(wp_p.member[i] == Membership::In);
    }
  }
}

TEST_CASE("the weakest precondition of x = a and y = b is the swapped graph") {
  Fixture f;
  VarRef a = normal_var("a", kInt);
  VarRef c = normal_var("c", kInt);
  f.sig.declare(a);
  f.sig.declare(c);
  f.u = Universe::make(0, 2, 1);
  Stmt s = f.stmt("x, y := y, x");
  Expr p = f.assertion("x = a and y = c");
  WpSet w = f.wp(s, p);
  CHECK(w.states.size() == 81);
  for (std::size_t i = 0; i < w.states.size(); ++i) {
    const State& st = w.states[i];
    bool expect = int_at(st, f.y) == int_at(st, a) && int_at(st, f.x) == int_at(st, c);
    CHECK((w.member[i] == Membership::In) == expect);
  }
}
