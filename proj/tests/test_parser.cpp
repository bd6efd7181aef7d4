#include "doctest.h"
#include "oov/gen.hpp"
#include "oov/io.hpp"
#include "oov/parser.hpp"
#include "oov/suites.hpp"
#include "oov/transform.hpp"

using namespace oov;

TEST_CASE("guarded skip sugar in a method declaration") {
  Program p = parse_program(SourceText{
      "var z: object;\nivar next: object;\n"
      "method find(u:object){ if u /= this -> next.find(u) fi' }\nthis.find(z)"});
  REQUIRE(p.decls.size() == 1);
  const Decl& d = p.decls[0];
  CHECK(d.name == "find");
  REQUIRE(d.formals.size() == 1);
  CHECK(d.formals[0] == normal_var("u", Type::basic(BaseType::Object)));
  const auto* c = d.body.as<IfStmt>();
  REQUIRE(c);
  CHECK(c->cond == ex::ne(ex::var(d.formals[0]), ex::this_()));
  CHECK(c->else_branch.is<SkipStmt>());
  const auto* call = c->then_branch.as<MethodCallStmt>();
  REQUIRE(call);
  CHECK(call->method == "find");
  CHECK(call->callee == ex::var(instance_var("next", Type::basic(BaseType::Object))));
  CHECK(p == load_program(data_path("find.oo")));
}

TEST_CASE("skip program") {
  Program p = parse_program(SourceText{"skip"});
  CHECK(p.main.is<SkipStmt>());
  CHECK(p.decls.empty());
  CHECK(p.flavor == Flavor::Kernel);
  CHECK(render(st::skip()) == "skip");
}

TEST_CASE("formula with a call on null") {
  Signature sig;
  Formula f = parse_formula(SourceText{"{true} null.m() {false}"}, sig);
  CHECK(f.pre == ex::true_());
  CHECK(f.post == ex::false_());
  const auto* call = f.stmt.as<MethodCallStmt>();
  REQUIRE(call);
  CHECK(call->callee == ex::null());
  CHECK(call->args.empty());
  CHECK(render(f) == "{true} null.m() {false}");
}

TEST_CASE("rendering of the transformed add program") {
  ThetaImage img = transform_program(load_program(data_path("add.oo")));
  CHECK(render(img.program.main) == "if y /= null -> add(y,1) fi; if y /= null -> add(y,2) fi");
}

TEST_CASE("find round-trips through render") {
  Program p = load_program(data_path("find.oo"));
  std::string once = render(p);
  Program q = parse_program(SourceText{once}, Flavor::OO);
  CHECK(q == p);
  CHECK(render(q) == once);
}

TEST_CASE("flavor inference and extensions") {
  CHECK(parse_program(SourceText{"var x: integer;\nproc p() { x := 1 }\np()"}).flavor == Flavor::Recursive);
  CHECK(parse_program(SourceText{"ivar f: integer;\nf := 1"}).flavor == Flavor::OO);
  CHECK(flavor_for_path("a/b.oo") == Flavor::OO);
  CHECK(flavor_for_path("b.rec") == Flavor::Recursive);
  CHECK(flavor_for_path("b.krn") == Flavor::Kernel);
  CHECK_FALSE(flavor_for_path("b.txt").has_value());
}

TEST_CASE("comments and carriage returns") {
  Program p = parse_program(SourceText{"// nothing\r\nvar x: integer; // x\r\nx := 1 // done\r\n"});
  CHECK(render(p.main) == "x := 1");
}

TEST_CASE("parse errors carry a location") {
  try {
    parse_program(SourceText{"var x: integer;\nx := ", "t.krn"});
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.origin() == "t.krn");
    CHECK(e.loc().line == 2);
    CHECK_FALSE(e.detail().empty());
  }
  CHECK_THROWS_AS(parse_program(SourceText{"x := 1 $"}), ParseError);
  CHECK_THROWS_AS(parse_program(SourceText{"var x: integer;\nx := (1"}), ParseError);
}

TEST_CASE("restore nodes cannot be rendered") {
  Stmt s = st::seq(st::skip(), st::restore({normal_var("x", Type::basic(BaseType::Integer))}, {Value::integer(5)}));
  CHECK_THROWS(render(s));
  CHECK(render_runtime(s).find("restore(x:=5)") != std::string::npos);
}

TEST_CASE("state literals") {
  Program p = load_program(data_path("find.oo"));
  State s = load_state(data_path("chain3.state"), p.sig);
  CHECK(to_string(s) == "state { this=o1; z=o3; o1.next=o2; o2.next=o3; }");
  Signature sig;
  sig.declare(normal_var("a", Type::array({BaseType::Integer, BaseType::Integer}, BaseType::Integer)));
  sig.declare(normal_var("x", Type::basic(BaseType::Integer)));
  State t = parse_state(SourceText{"state { x=5; a[1,2]=7; }"}, sig);
  CHECK(t.read(Location{*sig.find("a"), std::nullopt, {Value::integer(1), Value::integer(2)}}) == Value::integer(7));
  CHECK(t.read(Location{*sig.find("x"), std::nullopt, {}}) == Value::integer(5));
}

TEST_CASE("render is a right inverse of parse on random programs") {
  Rng r(5);
  for (int k = 0; k < 300; ++k) {
    Program p = gen_oo_program(r);
    std::string text = render(p);
    Program q = parse_program(SourceText{text}, Flavor::OO);
    CHECK(q == p);
    CHECK(render(q) == text);
  }
}

TEST_CASE("render is a right inverse of parse on random assertions") {
  Rng r(6);
  Signature sig = vocab().signature();
  ExprGenOptions o;
  o.navigation = true;
  o.depth = 4;
  for (int k = 0; k < 1000; ++k) {
    Expr p = gen_assertion(r, o);
    CHECK(parse_assertion(SourceText{render(p)}, sig) == p);
  }
}

TEST_CASE("golden proofs round-trip") {
  for (const auto& g : golden_proofs()) {
    LoadedProof lp = load_golden(g);
    Signature sig = lp.program.sig;
    std::string text = render(lp.file);
    ProofFile again = parse_proof(SourceText{text}, sig);
    CHECK_MESSAGE(same_derivation(again.root, lp.file.root), g.proof);
  }
}
