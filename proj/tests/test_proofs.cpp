#include <functional>

#include "doctest.h"
#include "oov/assertions.hpp"
#include "oov/io.hpp"
#include "oov/parser.hpp"
#include "oov/proofs.hpp"
#include "oov/suites.hpp"
#include "oov/transform.hpp"

using namespace oov;

namespace {

const Type kInt = Type::basic(BaseType::Integer);

CheckOptions opts() {
  CheckOptions o;
  o.universe = Universe::make(-3, 3, 2);
  return o;
}

struct Golden {
  Program program;
  Derivation root;
};

Golden golden(const std::string& proof, const std::string& program = "") {
  Golden g;
  if (!program.empty()) g.program = load_program(data_path(program));
  g.root = load_proof(data_path("proofs/" + proof), g.program.sig).root;
  return g;
}

Verdict check_text(const std::string& text, ProofSystem sys, const DeclSet& decls = {}) {
  Signature sig;
  ProofFile pf = parse_proof(SourceText{"(var x, y, z: integer)\n" + text}, sig);
  return check(pf.root, sys, decls, opts());
}

bool contains_rule(const Derivation& d, const std::function<bool(const Derivation&)>& pred) {
  if (pred(d)) return true;
  for (const auto& p : d.premises) {
    if (contains_rule(p, pred)) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("discharge of simple implications") {
  VarRef x = normal_var("x", kInt);
  Universe u = Universe::make(-2, 2, 1);
  Obligation a{Obligation::Kind::Implication, ex::eq(ex::var(x), ex::int_lit(1)),
               ex::binary(BinOp::Ge, ex::var(x), ex::int_lit(0)), "a"};
  CHECK(discharge(a, u).status == Validity::Valid);
  Obligation b{Obligation::Kind::Implication, ex::true_(), ex::eq(ex::var(x), ex::int_lit(0)), "b"};
  ValidityResult rb = discharge(b, u);
  REQUIRE(rb.status == Validity::Counterexample);
  REQUIRE(rb.witness);
  CHECK(rb.witness->read(Location{x, std::nullopt, {}}) != Value::integer(0));
  CHECK_FALSE(eval_assertion(*rb.witness, b.formula(), u));
}

TEST_CASE("not-null obligation over a bounded array") {
  Signature sig;
  VarRef a = normal_var("a", Type::array({BaseType::Integer}, BaseType::Object));
  sig.declare(a);
  Expr pre = parse_assertion(SourceText{"this = a[0] and (forall i: integer: a[i] /= null)"}, sig);
  Obligation ob{Obligation::Kind::NotNull, pre, ex::sub(a, {ex::int_lit(0)}), "n"};
  CHECK(discharge(ob, Universe::make(0, 1, 2)).status == Validity::Valid);
  Obligation weak{Obligation::Kind::NotNull, ex::true_(), ex::sub(a, {ex::int_lit(0)}), "w"};
  CHECK(discharge(weak, Universe::make(0, 1, 2)).status == Validity::Counterexample);
}

TEST_CASE("null call is provable in PO+") {
  Golden g = golden("nullm_po.prf", "nullm.oo");
  Verdict v = check(g.root, ProofSystem::POPlus, g.program.decls, opts());
  CHECK(v.accepted());
  CHECK(v.all_valid());
  CHECK(v.exit_code() == 0);
  CHECK_FALSE(v.obligations.empty());
}

TEST_CASE("null call skeleton fails the not-null premise in SPO+") {
  Golden g = golden("nullm_spo.prf", "nullm.oo");
  Verdict v = check(g.root, ProofSystem::SPOPlus, g.program.decls, opts());
  REQUIRE(v.accepted());
  CHECK(v.any(Validity::Counterexample));
  CHECK(v.exit_code() == 2);
  bool found = false;
  for (const auto& o : v.obligations) {
    if (o.obligation.kind == Obligation::Kind::NotNull) {
      found = true;
      CHECK(o.result.status == Validity::Counterexample);
      CHECK(o.obligation.origin.find("not-null") != std::string::npos);
    }
  }
  CHECK(found);
  // the partial correctness proof uses WEAKEN, which SPO+ lacks
  Golden po = golden("nullm_po.prf", "nullm.oo");
  CHECK_FALSE(check(po.root, ProofSystem::SPOPlus, po.program.decls, opts()).accepted());
}

TEST_CASE("skip axiom") {
  Verdict v = check_text("(rule SKIP (conclusion {x = 1} skip {x = 1}))", ProofSystem::PK);
  CHECK(v.accepted());
  CHECK(v.obligations.empty());
  CHECK(v.exit_code() == 0);
  CHECK_FALSE(check_text("(rule SKIP (conclusion {x = 1} skip {x = 2}))", ProofSystem::PK).accepted());
}

TEST_CASE("failure rules are gated by system") {
  for (ProofSystem s : {ProofSystem::SPK, ProofSystem::SPO, ProofSystem::SPOPlus, ProofSystem::SPR,
                        ProofSystem::SPRPlus}) {
    CHECK_FALSE(allows(s, Rule::FailI));
    CHECK(allows(s, Rule::FailII));
    CHECK(is_strong(s));
  }
  for (ProofSystem s : {ProofSystem::PK, ProofSystem::PO, ProofSystem::POPlus, ProofSystem::PR,
                        ProofSystem::PRPlus}) {
    CHECK(allows(s, Rule::FailI));
    CHECK_FALSE(allows(s, Rule::FailII));
    CHECK_FALSE(is_strong(s));
  }
  Golden fi = golden("guard_faili.prf");
  Verdict v = check(fi.root, ProofSystem::SPK, {}, opts());
  CHECK_FALSE(v.accepted());
  CHECK(v.exit_code() == 2);
  CHECK(check(fi.root, ProofSystem::PK, {}, opts()).all_valid());
  Golden fii = golden("guard_failii.prf");
  CHECK_FALSE(check(fii.root, ProofSystem::PK, {}, opts()).accepted());
  CHECK(check(fii.root, ProofSystem::SPK, {}, opts()).all_valid());
}

TEST_CASE("rule sets of the systems") {
  CHECK_FALSE(allows(ProofSystem::PK, Rule::AssignInst));
  CHECK(allows(ProofSystem::PO, Rule::AssignInst));
  CHECK(allows(ProofSystem::PO, Rule::Weaken));
  CHECK_FALSE(allows(ProofSystem::SPO, Rule::Weaken));
  CHECK_FALSE(allows(ProofSystem::PO, Rule::RecI));
  CHECK(allows(ProofSystem::POPlus, Rule::RecI));
  CHECK(allows(ProofSystem::SPOPlus, Rule::RecII));
  CHECK_FALSE(allows(ProofSystem::SPOPlus, Rule::RecI));
  CHECK(allows(ProofSystem::PRPlus, Rule::RecIII));
  CHECK_FALSE(allows(ProofSystem::PR, Rule::RecIII));
  CHECK(allows(ProofSystem::PR, Rule::Invariance));
  CHECK(flavor_of(ProofSystem::SPOPlus) == Flavor::OO);
  CHECK(flavor_of(ProofSystem::PRPlus) == Flavor::Recursive);
  CHECK(flavor_of(ProofSystem::SPK) == Flavor::Kernel);
  for (const char* n : {"PK", "SPK", "PO", "PO+", "SPO", "SPO+", "PR", "SPR", "PR+", "SPR+"}) {
    REQUIRE(system_from_name(n));
    CHECK(to_string(*system_from_name(n)) == n);
  }
  CHECK_FALSE(system_from_name("XYZ"));
}

TEST_CASE("side conditions") {
  // block local free in the postcondition
  CHECK_FALSE(check_text("(rule BLOCK (conclusion {true} begin local x := 1; skip end {x = 1})"
                         "  (rule CONSEQ (conclusion {true} x := 1; skip {x = 1})"
                         "    (rule COMP (conclusion {1 = 1} x := 1; skip {x = 1})"
                         "      (rule ASSIGN (conclusion {1 = 1} x := 1 {x = 1}))"
                         "      (rule SKIP (conclusion {x = 1} skip {x = 1})))))",
                         ProofSystem::PK)
                  .accepted());
  // invariant over a changed variable
  CHECK_FALSE(check_text("(rule INVARIANCE (conclusion {x = 1 and true} x := 2 {x = 1 and true})"
                         "  (rule CONSEQ (conclusion {true} x := 2 {true})"
                         "    (rule ASSIGN (conclusion {true} x := 2 {true}))))",
                         ProofSystem::PK)
                  .accepted());
  Golden frame = golden("frame.prf");
  CHECK(check(frame.root, ProofSystem::PR, {}, opts()).all_valid());
  // an existential over a variable of the statement
  CHECK_FALSE(check_text("(rule EXISTS-INTRO (conclusion {exists x: integer: x = 1} x := 1 {true})"
                         "  (rule CONSEQ (conclusion {x = 1} x := 1 {true})"
                         "    (rule ASSIGN (conclusion {true} x := 1 {true}))))",
                         ProofSystem::PR)
                  .accepted());
}

TEST_CASE("consequence obligations get counterexamples") {
  Verdict v = check_text("(rule CONSEQ (conclusion {true} x := 1 {x = 2})"
                         "  (rule ASSIGN (conclusion {1 = 1} x := 1 {x = 1})))",
                         ProofSystem::PK);
  REQUIRE(v.accepted());
  CHECK(v.any(Validity::Counterexample));
  CHECK(v.report().find("verdict\tACCEPTED") == 0);
  CHECK(v.report().find("COUNTEREXAMPLE") != std::string::npos);
}

TEST_CASE("assumptions are scoped to their recursion rule") {
  Golden g = golden("nullm_po.prf", "nullm.oo");
  Derivation pruned = g.root;
  bool dropped = false;
  std::function<void(Derivation&)> drop = [&](Derivation& d) {
    if (is_recursion_rule(d.rule) && !dropped) {
      d.assumptions.clear();
      d.premises.resize(1);
      dropped = true;
      return;
    }
    for (auto& p : d.premises) drop(p);
  };
  drop(pruned);
  REQUIRE(dropped);
  Verdict v = check(pruned, ProofSystem::POPlus, g.program.decls, opts());
  CHECK_FALSE(v.accepted());
  CHECK(v.reason.find("assumption") != std::string::npos);
  // an assumption cited outside any recursion rule
  Signature sig = g.program.sig;
  ProofFile bare = parse_proof(SourceText{"(assume 1 (conclusion {false} null.m() {false}))"}, sig);
  CHECK_FALSE(check(bare.root, ProofSystem::POPlus, g.program.decls, opts()).accepted());
}

TEST_CASE("recursion rules do not nest") {
  Golden g = golden("nullm_po.prf", "nullm.oo");
  // REC-I node is premise 0 of CONSEQ, which is premise 0 of WEAKEN
  Derivation rec = g.root.premises.at(0).premises.at(0);
  REQUIRE(rec.rule == Rule::RecI);
  Derivation outer = rec;
  outer.premises.at(1) = Derivation{Rule::RecI, rec.premises.at(1).conclusion, {rec.premises.at(1)}, {}, 0, {}, {}, {}};
  CHECK_FALSE(check(outer, ProofSystem::POPlus, g.program.decls, opts()).accepted());
}

TEST_CASE("golden derivations are sound on their universe") {
  for (const auto& gp : golden_proofs()) {
    if (gp.expect != Expect::Valid) continue;
    LoadedProof lp = load_golden(gp);
    AuditResult a = audit_formula(lp.file.root.conclusion, lp.program.decls, flavor_of(gp.system),
                                  is_strong(gp.system), opts().universe, 100'000);
    CHECK_MESSAGE(a.status == AuditStatus::Holds, gp.proof);
  }
}

TEST_CASE("translation of a skip leaf is the same leaf") {
  Golden g = golden("skip.prf");
  Derivation t = translate_proof(g.root, ProofSystem::PO, {});
  CHECK(same_derivation(t, g.root));
  CHECK(translation_target(ProofSystem::PO) == ProofSystem::PRPlus);
  CHECK(translation_target(ProofSystem::SPOPlus) == ProofSystem::SPRPlus);
}

TEST_CASE("translated null call proof ends in a failure rule over the procedure call") {
  Golden g = golden("nullm_po.prf", "nullm.oo");
  Derivation t = translate_proof(g.root, ProofSystem::POPlus, g.program.decls);
  CHECK(t.conclusion == theta(g.root.conclusion));
  DeclSet decls = theta(g.program.decls);
  Verdict v = check(t, ProofSystem::PRPlus, decls, opts());
  CHECK(v.accepted());
  CHECK(v.all_valid());
  Stmt guarded = st::fail_if(ex::ne(ex::null(), ex::null()), st::proc_call("m", {ex::null()}));
  CHECK(contains_rule(t, [&](const Derivation& d) { return d.rule == Rule::FailI && d.conclusion.stmt == guarded; }));
  CHECK_FALSE(contains_rule(t, [](const Derivation& d) { return d.rule == Rule::RecI || d.rule == Rule::Weaken; }));
}

TEST_CASE("translated strong proof uses FAIL-II with a valid guard obligation") {
  Golden g = golden("add_spo.prf", "add.oo");
  REQUIRE(check(g.root, ProofSystem::SPOPlus, g.program.decls, opts()).all_valid());
  Derivation t = translate_proof(g.root, ProofSystem::SPOPlus, g.program.decls);
  Verdict v = check(t, ProofSystem::SPRPlus, theta(g.program.decls), opts());
  CHECK(v.accepted());
  CHECK(v.all_valid());
  CHECK(contains_rule(t, [](const Derivation& d) { return d.rule == Rule::FailII; }));
  bool guard = false;
  for (const auto& o : v.obligations) {
    if (o.obligation.origin.find("guard") != std::string::npos) {
      guard = true;
      CHECK(o.result.status == Validity::Valid);
    }
  }
  CHECK(guard);
}

TEST_CASE("translation preserves acceptance on the object goldens") {
  for (const auto& gp : golden_proofs()) {
    if (flavor_of(gp.system) != Flavor::OO || gp.expect == Expect::Rejected) continue;
    LoadedProof lp = load_golden(gp);
    TranslationCheck tc = check_translation(lp.file.root, gp.system, lp.program.decls, opts());
    CHECK_MESSAGE(tc.accepted, gp.proof << ": " << tc.detail);
    CHECK_MESSAGE(tc.preserved, gp.proof << ": " << tc.detail);
  }
}

TEST_CASE("normal form of a partial failure derivation") {
  Golden g = golden("guard_faili.prf");
  Derivation nf = normal_form_failure(g.root);
  const auto* fi = g.root.conclusion.stmt.as<FailIfStmt>();
  REQUIRE(fi);
  CHECK(nf.conclusion.stmt == fi->body);
  CHECK(equivalent_syntax(nf.conclusion.pre, ex::and_(g.root.conclusion.pre, fi->cond)));
  CHECK(check(nf, ProofSystem::PR, {}, opts()).all_valid());
}

TEST_CASE("verdict exit codes") {
  Verdict v;
  CHECK(v.exit_code() == 0);
  v.obligations.push_back({Obligation{}, ValidityResult{Validity::Unknown, std::nullopt}});
  CHECK(v.exit_code() == 3);
  v.obligations.push_back({Obligation{}, ValidityResult{Validity::Counterexample, State{}}});
  CHECK(v.exit_code() == 2);
  Verdict r;
  r.status = VerdictStatus::Rejected;
  CHECK(r.exit_code() == 2);
}
