#include "oov/suites.hpp"

#include <chrono>
#include <functional>
#include <sstream>
#include <stdexcept>

#include "oov/assertions.hpp"
#include "oov/explore.hpp"
#include "oov/gen.hpp"
#include "oov/interp.hpp"
#include "oov/io.hpp"
#include "oov/parser.hpp"
#include "oov/transform.hpp"
#include "oov/wp.hpp"

namespace oov {

std::string SuiteResult::report() const {
  std::ostringstream os;
  os << "suite " << name << " seed=" << seed << "\n";
  os << "cases " << cases << " passed " << passed << " failed " << failed << " inconclusive " << inconclusive
     << "\n";
  for (const auto& [k, v] : metrics) os << k << " " << v << "\n";
  for (const auto& f : failures) os << "FAIL " << f << "\n";
  os << (ok() ? "PASS" : "FAIL") << "\n";
  return os.str();
}

namespace {

constexpr std::size_t kMaxFailures = 5;

struct Tally {
  SuiteResult& r;

  void pass() {
    ++r.cases;
    ++r.passed;
  }
  void skip() {
    ++r.cases;
    ++r.inconclusive;
  }
  void fail(const std::string& why) {
    ++r.cases;
    ++r.failed;
    if (r.failures.size() < kMaxFailures) r.failures.push_back(why);
  }
  void expect(bool ok, const std::function<std::string()>& why) {
    if (ok) pass();
    else fail(why());
  }
};

std::string strip_ws(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (!std::isspace(static_cast<unsigned char>(c))) out += c;
  }
  return out;
}

Universe small_universe() { return Universe::make(-2, 2, 3); }

// ---------------------------------------------------------------------------

void transform_golden(const SuiteOptions&, SuiteResult& res) {
  Tally t{res};
  Program add = load_program(data_path("add.oo"));
  ThetaImage img = transform_program(add);
  std::string main = render(img.program.main);
  t.expect(strip_ws(main) == strip_ws("if y /= null -> add(y,1) fi; if y /= null -> add(y,2) fi"),
           [&] { return "add main: " + main; });
  const Decl* d = find_decl(img.program.decls, "add");
  bool decl_ok = d && d->formals.size() == 2 && d->formals[0].name == "this" && d->formals[1].name == "x" &&
                 strip_ws(render(d->body)) == strip_ws("sum[this] := sum[this] + x");
  t.expect(decl_ok, [&] { return "add decl: " + (d ? render(*d, Flavor::Recursive) : std::string("missing")); });

  Program find = load_program(data_path("find.oo"));
  Program golden = load_program(data_path("find.rec"));
  ThetaImage fimg = transform_program(find);
  t.expect(fimg.program.decls == golden.decls && fimg.program.main == golden.main,
           [&] { return "find image:\n" + render(fimg.program); });
  t.expect(theta(st::skip()) == st::skip(), [] { return "theta(skip)"; });
  t.expect(theta(ex::this_()) == ex::this_(), [] { return "theta(this)"; });
}

// ---------------------------------------------------------------------------

void differential(const SuiteOptions& o, SuiteResult& res) {
  Tally t{res};
  Rng r(o.seed);
  SafetyCounters safety;
  std::size_t compared = 0;
  std::size_t terminated = 0;
  std::size_t failed_runs = 0;
  for (std::size_t k = 0; k < o.cases; ++k) {
    Program prog = gen_oo_program(r);
    State s0 = gen_state(r, o.universe);
    auto diags = typecheck(prog);
    if (!diags.empty()) {
      t.fail("generated program does not typecheck: " + to_string(diags.front()) + "\n" + render(prog));
      continue;
    }
    RunResult a = run(prog, s0, o.fuel, safety_observer(prog.decls, prog.flavor, safety));
    if (a.status == RunStatus::OutOfFuel) {
      t.skip();
      continue;
    }
    ThetaImage img = transform_program(prog);
    RunResult b = run(img.program, theta(s0), 2 * o.fuel);
    if (b.status == RunStatus::OutOfFuel) {
      t.skip();
      continue;
    }
    ++compared;
    bool agree = a.status == b.status;
    if (agree && a.status == RunStatus::Terminated) agree = states_equal(theta(*a.state), *b.state);
    if (a.status == RunStatus::Terminated) ++terminated;
    if (a.status == RunStatus::Failed) ++failed_runs;
    t.expect(agree, [&] {
      return "case " + std::to_string(k) + ": " + to_string(a.status) + " vs " + to_string(b.status) + "\n" +
             render(prog) + "\nfrom " + to_string(s0);
    });
  }
  res.metrics["compared"] = static_cast<double>(compared);
  res.metrics["non_oof_ratio"] = o.cases ? static_cast<double>(compared) / static_cast<double>(o.cases) : 0;
  res.metrics["terminated"] = static_cast<double>(terminated);
  res.metrics["failed_runs"] = static_cast<double>(failed_runs);
  res.metrics["safety_runs"] = static_cast<double>(safety.runs);
  res.metrics["safety_steps"] = static_cast<double>(safety.steps);
  res.metrics["null_this"] = static_cast<double>(safety.null_this);
  res.metrics["ill_typed"] = static_cast<double>(safety.ill_typed);
}

// ---------------------------------------------------------------------------

/// Random program-level target of the given type: simple or subscripted,
/// normal or instance.
Expr gen_target(Rng& r, BaseType ty, const ExprGenOptions& eo) {
  const auto& V = vocab();
  switch (ty) {
    case BaseType::Boolean: return ex::var(r.chance(0.5) ? V.b : V.g);
    case BaseType::Object: return ex::var(r.pick(std::vector<VarRef>{V.p, V.q, V.nx}));
    default: break;
  }
  ExprGenOptions io = eo;
  io.depth = 1;
  io.navigation = false;
  switch (r.range(0, 3)) {
    case 0: return ex::var(V.x);
    case 1: return ex::sub(V.arr, {gen_expr(r, BaseType::Integer, io)});
    case 2: return ex::var(V.f);
    default: return ex::sub(V.h, {gen_expr(r, BaseType::Integer, io)});
  }
}

/// Access to the same variable as `target` with a random owner and index,
/// so that substitution has aliases to resolve.
Expr alias_probe(Rng& r, const Expr& target, const ExprGenOptions& eo) {
  ExprGenOptions io = eo;
  io.depth = 1;
  VarRef v = target.is<VarExpr>() ? target.as<VarExpr>()->var : target.as<SubExpr>()->array;
  std::vector<Expr> index;
  if (v.is_array()) index.push_back(r.chance(0.5) ? target.as<SubExpr>()->index[0] : gen_expr(r, BaseType::Integer, io));
  if (!v.is_instance() || r.chance(0.3)) return v.is_array() ? ex::sub(v, index) : ex::var(v);
  return ex::nav(gen_expr(r, BaseType::Object, io), v, index);
}

BaseType target_type(const Expr& u) {
  if (const auto* v = u.as<VarExpr>()) return v->var.type.value;
  return u.as<SubExpr>()->array.type.value;
}

State with_bound_values(Rng& r, State s) {
  const auto& V = vocab();
  s.write(Location{V.i, std::nullopt, {}}, Value::integer(r.range(-2, 2)));
  s.write(Location{V.o, std::nullopt, {}}, Value::object(r.chance(0.3) ? ObjRef::null() : ObjRef::oid(1)));
  return s;
}

void substitution(const SuiteOptions& o, SuiteResult& res) {
  Tally t{res};
  Rng r(o.seed);
  Universe u = small_universe();
  const auto& V = vocab();

  // a[x] and y through min, with a[1] := 2
  {
    Expr ax = ex::sub(V.arr, {ex::var(V.x)});
    auto min = [](Expr a, Expr b) { return ex::cond(ex::binary(BinOp::Lt, a, b), a, b); };
    Expr s = min(ax, ex::var(V.y));
    Expr got = substitute(s, ex::sub(V.arr, {ex::int_lit(1)}), ex::int_lit(2));
    Expr alias = ex::cond(ex::eq(ex::var(V.x), ex::int_lit(1)), ex::int_lit(2), ax);
    Expr want = min(alias, ex::var(V.y));
    t.expect(alpha_equal(got, want), [&] { return "min example: " + render(got); });
  }
  // this.u with u := t
  {
    Expr s = ex::nav(ex::this_(), V.f);
    Expr tt = ex::binary(BinOp::Add, ex::var(V.x), ex::int_lit(1));
    Expr got = substitute(s, ex::var(V.f), tt);
    Expr want = ex::cond(ex::eq(ex::this_(), ex::this_()), tt, s);
    bool same = alpha_equal(got, want);
    for (int k = 0; k < 50 && same; ++k) {
      State st = gen_state(r, u);
      same = eval(st, got) == eval(st, tt);
    }
    t.expect(same, [&] { return "this.u example: " + render(got); });
  }

  ExprGenOptions eo;
  eo.navigation = true;
  eo.depth = 3;
  for (std::size_t k = 0; k < o.cases; ++k) {
    State s0 = with_bound_values(r, gen_state(r, u));
    BaseType ty = r.pick(std::vector<BaseType>{BaseType::Integer, BaseType::Integer, BaseType::Boolean, BaseType::Object});
    Expr target = gen_target(r, ty, eo);
    ExprGenOptions to = eo;
    to.depth = 2;
    Expr value = gen_expr(r, target_type(target), to);
    if (target_type(target) == BaseType::Integer && r.chance(0.25)) {
      // free occurrence of a name the phrase may bind
      value = ex::binary(BinOp::Add, value, ex::var(V.i));
    }
    bool as_assertion = k % 2 == 0;
    Expr s = as_assertion ? gen_assertion(r, eo) : gen_expr(r, r.pick(std::vector<BaseType>{BaseType::Integer, BaseType::Boolean, BaseType::Object}), eo);
    if (r.chance(0.5)) {
      Expr probe = alias_probe(r, target, eo);
      Expr other = gen_expr(r, target_type(target), to);
      Expr fact = target_type(target) == BaseType::Boolean ? ex::eq(probe, other) : ex::ne(probe, other);
      if (type_of(s) == BaseType::Boolean) {
        s = ex::and_(s, fact);
      } else {
        s = ex::cond(fact, type_of(s) == target_type(target) ? probe : s, s);
      }
    }
    Expr sub = substitute(s, target, value);
    Outcome after = update(s0, target, eval(s0, value));
    bool agree;
    if (as_assertion) {
      agree = eval_assertion(s0, sub, u) == eval_assertion(after.state(), s, u);
    } else {
      agree = eval(s0, sub) == eval(after.state(), s);
    }
    t.expect(agree, [&] {
      return "case " + std::to_string(k) + ": (" + render(s) + ")[" + render(target) + " := " + render(value) +
             "] = " + render(sub) + " in " + to_string(s0);
    });
  }
}

// ---------------------------------------------------------------------------

void translation_lemma(const SuiteOptions& o, SuiteResult& res) {
  Tally t{res};
  Rng r(o.seed);
  Universe u = small_universe();
  ExprGenOptions eo;
  eo.navigation = true;
  eo.depth = 3;
  for (std::size_t k = 0; k < o.cases; ++k) {
    State s0 = gen_state(r, u);
    Expr e = gen_expr(r, r.pick(std::vector<BaseType>{BaseType::Integer, BaseType::Boolean, BaseType::Object}), eo);
    Value a = eval(s0, e);
    Value b = eval(theta(s0), theta(e));
    t.expect(a == b, [&] { return "value of " + render(e) + " in " + to_string(s0); });
  }
  for (std::size_t k = 0; k < o.cases; ++k) {
    State s0 = gen_state(r, u);
    BaseType ty = r.pick(std::vector<BaseType>{BaseType::Integer, BaseType::Boolean, BaseType::Object});
    Expr target = gen_target(r, ty, eo);
    ExprGenOptions vo;
    vo.depth = 1;
    Value d = eval(s0, gen_expr(r, ty, vo));
    Outcome lhs = theta(update(s0, target, d));
    Outcome rhs = update(theta(s0), theta(target), d);
    t.expect(states_equal(lhs, rhs), [&] { return "update of " + render(target) + " in " + to_string(s0); });
  }
}

void assertion_lemma(const SuiteOptions& o, SuiteResult& res) {
  Tally t{res};
  Rng r(o.seed);
  Universe u = small_universe();
  ExprGenOptions eo;
  eo.navigation = true;
  eo.depth = 3;
  for (std::size_t k = 0; k < o.cases; ++k) {
    State s0 = gen_state(r, u);
    Expr p = gen_assertion(r, eo);
    bool a = eval_assertion(s0, p, u);
    bool b = eval_assertion(theta(s0), theta(p), u);
    t.expect(a == b, [&] { return render(p) + " in " + to_string(s0); });
  }
}

void homomorphism_lemma(const SuiteOptions& o, SuiteResult& res) {
  Tally t{res};
  Rng r(o.seed);
  ExprGenOptions eo;
  eo.navigation = true;
  eo.depth = 3;
  for (std::size_t k = 0; k < o.cases; ++k) {
    Expr p = gen_assertion(r, eo);
    BaseType ty = r.pick(std::vector<BaseType>{BaseType::Integer, BaseType::Boolean, BaseType::Object});
    Expr target = gen_target(r, ty, eo);
    ExprGenOptions to = eo;
    to.depth = 2;
    Expr value = gen_expr(r, ty, to);
    Expr lhs = theta(substitute(p, target, value));
    Expr rhs = substitute(theta(p), theta(target), theta(value));
    t.expect(equivalent_syntax(lhs, rhs), [&] {
      return "(" + render(p) + ")[" + render(target) + " := " + render(value) + "]: " + render(lhs) + " vs " +
             render(rhs);
    });
  }
}

// ---------------------------------------------------------------------------

using StatePred = std::function<bool(const State&)>;

/// σ ∈ W(S, post) by running S, for a post given as a state predicate.
/// nullopt when the run is out of fuel.
std::optional<bool> member(const Stmt& s, const StatePred& post, const State& sigma, WpMode mode,
                           std::uint64_t fuel) {
  RunResult rr = run_stmt(s, {}, Flavor::Kernel, sigma, fuel);
  switch (rr.status) {
    case RunStatus::OutOfFuel: return std::nullopt;
    case RunStatus::Failed: return mode == WpMode::Partial;
    case RunStatus::Terminated: return post(*rr.state);
  }
  return std::nullopt;
}

/// Right-hand side of the weakest precondition equation for the top
/// constructor of `s`, computed from the semantics of its parts.
std::optional<bool> equation_rhs(const Stmt& s, const Expr& post, const State& sigma, const Universe& u,
                                 WpMode mode, std::uint64_t fuel) {
  StatePred p = [&](const State& t) { return eval_assertion(t, post, u); };
  auto holds = [&](const Expr& b) { return eval(sigma, b).as_bool(); };
  if (s.is<SkipStmt>()) return p(sigma);
  if (s.is<AssignStmt>() || s.is<ParAssignStmt>()) return eval_assertion(sigma, wp_symbolic(s, post, mode), u);
  if (const auto* q = s.as<SeqStmt>()) {
    Stmt first = q->items.front();
    Stmt rest = st::seq(std::vector<Stmt>(q->items.begin() + 1, q->items.end()));
    bool unknown = false;
    StatePred mid = [&](const State& t) {
      auto m = member(rest, p, t, mode, fuel);
      if (!m) unknown = true;
      return m.value_or(false);
    };
    auto m = member(first, mid, sigma, mode, fuel);
    if (unknown) return std::nullopt;
    return m;
  }
  if (const auto* c = s.as<IfStmt>()) return member(holds(c->cond) ? c->then_branch : c->else_branch, p, sigma, mode, fuel);
  if (const auto* f = s.as<FailIfStmt>()) {
    if (holds(f->cond)) return member(f->body, p, sigma, mode, fuel);
    return mode == WpMode::Partial;
  }
  if (const auto* b = s.as<BlockStmt>()) {
    return member(st::seq(st::par_assign(b->locals, b->inits), b->body), p, sigma, mode, fuel);
  }
  if (const auto* w = s.as<WhileStmt>()) {
    if (!holds(w->cond)) return p(sigma);
    bool unknown = false;
    StatePred again = [&](const State& t) {
      auto m = member(s, p, t, mode, fuel);
      if (!m) unknown = true;
      return m.value_or(false);
    };
    auto m = member(w->body, again, sigma, mode, fuel);
    if (unknown) return std::nullopt;
    return m;
  }
  throw UnsupportedWp("no equation for this statement");
}

void sub_statements(const Stmt& s, std::vector<Stmt>& out) {
  out.push_back(s);
  if (const auto* q = s.as<SeqStmt>()) {
    for (const auto& i : q->items) sub_statements(i, out);
  } else if (const auto* c = s.as<IfStmt>()) {
    sub_statements(c->then_branch, out);
    sub_statements(c->else_branch, out);
  } else if (const auto* f = s.as<FailIfStmt>()) {
    sub_statements(f->body, out);
  } else if (const auto* b = s.as<BlockStmt>()) {
    sub_statements(b->body, out);
  }
}

constexpr const char* kLoopFixtures[][2] = {
    {"while x > 0 do x := x - 1 od", "x = 0"},
    {"while x > 0 do x := x - 1; y := y + 1 od", "y >= x"},
    {"while x < y do x := x + 1 od", "x = y"},
    {"while x /= 0 do if x > 0 then x := x - 1 else x := x + 1 fi od", "x = 0"},
    {"while b do b := false; y := y + 1 od", "y > 0"},
    {"while x > 0 do if y > 0 -> x := x - 1 fi od", "x = 0"},
    {"while x < 2 do x := x + 1; y := y * 2 od", "y >= 0"},
    {"while x > y do x, y := y, x od", "x <= y"},
    {"while x > 0 do begin local w := x; y := y + w end; x := x - 1 od", "y >= 0"},
    {"while x + y > 0 do if x > y then x := x - 1 else y := y - 1 fi od", "x + y <= 0"},
};

void wp_suite(const SuiteOptions& o, SuiteResult& res) {
  Tally t{res};
  Rng r(o.seed);
  Universe u = Universe::make(-2, 2, 1);
  std::size_t programs = std::max<std::size_t>(o.cases / 5, 50);
  std::size_t max_space = 0;
  std::size_t equations = 0;
  for (std::size_t k = 0; k < programs; ++k) {
    Stmt s = gen_loop_free(r, 3);
    ExprGenOptions eo;
    eo.instance = false;
    eo.depth = 2;
    Expr post = gen_assertion(r, eo);
    StateSpace space = space_for(s, {post}, u);
    std::vector<State> states = space.states();
    max_space = std::max(max_space, states.size());
    if (states.size() > 1000) {
      t.fail("space too large: " + std::to_string(states.size()));
      continue;
    }
    std::vector<Stmt> parts;
    sub_statements(s, parts);
    for (WpMode mode : {WpMode::Partial, WpMode::StrongPartial}) {
      WpSet sem = wp_semantic(s, post, space, {}, Flavor::Kernel, o.fuel, mode);
      Expr sym = wp_symbolic(s, post, mode);
      std::vector<bool> ext = extension(sym, space);
      bool agree = !sem.has_unknown();
      for (std::size_t j = 0; agree && j < states.size(); ++j) agree = ext[j] == (sem.member[j] == Membership::In);
      t.expect(agree, [&] { return "symbolic vs semantic for " + render(s) + " / " + render(post); });
      bool eq_ok = true;
      for (const auto& part : parts) {
        WpSet ps = wp_semantic(part, post, space, {}, Flavor::Kernel, o.fuel, mode);
        for (std::size_t j = 0; eq_ok && j < states.size(); ++j) {
          auto rhs = equation_rhs(part, post, states[j], u, mode, o.fuel);
          eq_ok = rhs && *rhs == (ps.member[j] == Membership::In);
        }
        ++equations;
      }
      t.expect(eq_ok, [&] { return "equation for a part of " + render(s) + " / " + render(post); });
    }
  }
  Signature sig = vocab().signature();
  std::size_t loops = 0;
  for (const auto& [text, post_text] : kLoopFixtures) {
    Stmt s = parse_stmt(SourceText{text}, sig);
    Expr post = parse_assertion(SourceText{post_text}, sig);
    StateSpace space = space_for(s, {post}, u);
    std::vector<State> states = space.states();
    for (WpMode mode : {WpMode::Partial, WpMode::StrongPartial}) {
      WpSet sem = wp_semantic(s, post, space, {}, Flavor::Kernel, o.fuel, mode);
      if (sem.has_unknown()) {
        t.fail(std::string("loop fixture does not terminate: ") + text);
        continue;
      }
      bool ok = true;
      for (std::size_t j = 0; ok && j < states.size(); ++j) {
        auto rhs = equation_rhs(s, post, states[j], u, mode, o.fuel);
        ok = rhs && *rhs == (sem.member[j] == Membership::In);
      }
      t.expect(ok, [&] { return std::string("loop equation for ") + text; });
    }
    ++loops;
  }
  res.metrics["programs"] = static_cast<double>(programs);
  res.metrics["loop_fixtures"] = static_cast<double>(loops);
  res.metrics["equations_checked"] = static_cast<double>(equations);
  res.metrics["max_space"] = static_cast<double>(max_space);
}

// ---------------------------------------------------------------------------

bool meets(const Verdict& v, Expect e) {
  switch (e) {
    case Expect::Valid: return v.accepted() && v.all_valid();
    case Expect::Counterexample: return v.accepted() && v.any(Validity::Counterexample);
    case Expect::Rejected: return !v.accepted();
  }
  return false;
}

std::string expect_name(Expect e) {
  switch (e) {
    case Expect::Valid: return "valid";
    case Expect::Counterexample: return "counterexample";
    case Expect::Rejected: return "rejected";
  }
  return "?";
}

std::string golden_label(const GoldenProof& g) { return g.proof + " under " + to_string(g.system); }

CheckOptions check_options(const SuiteOptions& o) {
  CheckOptions c;
  c.universe = o.universe;
  return c;
}

/// Empties the assumption list of the first recursion rule in `d`.
bool drop_assumptions(Derivation& d) {
  if (is_recursion_rule(d.rule) && !d.assumptions.empty()) {
    d.assumptions.clear();
    d.premises.resize(1);
    return true;
  }
  for (auto& p : d.premises) {
    if (drop_assumptions(p)) return true;
  }
  return false;
}

void proof_goldens(const SuiteOptions& o, SuiteResult& res) {
  Tally t{res};
  for (const auto& g : golden_proofs()) {
    LoadedProof lp = load_golden(g);
    Verdict v = check(lp.file.root, g.system, lp.program.decls, check_options(o));
    t.expect(meets(v, g.expect), [&] { return golden_label(g) + ": expected " + expect_name(g.expect) + "\n" + v.report(); });
    if (g.expect == Expect::Rejected) continue;
    Derivation pruned = lp.file.root;
    if (drop_assumptions(pruned)) {
      CheckOptions co = check_options(o);
      co.discharge = false;
      Verdict pv = check(pruned, g.system, lp.program.decls, co);
      t.expect(!pv.accepted(), [&] { return golden_label(g) + ": accepted without its assumptions"; });
    }
  }
}

void soundness(const SuiteOptions& o, SuiteResult& res) {
  Tally t{res};
  std::size_t audited_states = 0;
  for (const auto& g : golden_proofs()) {
    if (g.expect != Expect::Valid) continue;
    LoadedProof lp = load_golden(g);
    Verdict v = check(lp.file.root, g.system, lp.program.decls, check_options(o));
    if (!v.accepted() || !v.all_valid()) {
      t.fail(golden_label(g) + " is no longer accepted with valid obligations");
      continue;
    }
    AuditResult a = audit_formula(lp.file.root.conclusion, lp.program.decls, flavor_of(g.system), is_strong(g.system),
                                  o.universe, o.fuel);
    audited_states += a.states;
    if (a.status == AuditStatus::Inconclusive) {
      t.skip();
      continue;
    }
    t.expect(a.status == AuditStatus::Holds, [&] {
      return golden_label(g) + ": conclusion fails from " + (a.witness ? to_string(*a.witness) : std::string("?"));
    });
  }
  res.metrics["audited_states"] = static_cast<double>(audited_states);
}

bool oo_system(ProofSystem s) { return flavor_of(s) == Flavor::OO; }

void proof_translation(const SuiteOptions& o, SuiteResult& res) {
  Tally t{res};
  for (const auto& g : golden_proofs()) {
    if (!oo_system(g.system) || g.expect == Expect::Rejected) continue;
    LoadedProof lp = load_golden(g);
    TranslationCheck tc = check_translation(lp.file.root, g.system, lp.program.decls, check_options(o));
    t.expect(tc.accepted && tc.preserved, [&] { return golden_label(g) + ": " + tc.detail; });
  }
}

// ---------------------------------------------------------------------------

void roundtrip(const SuiteOptions& o, SuiteResult& res) {
  Tally t{res};
  Rng r(o.seed);
  for (std::size_t k = 0; k < o.cases / 4; ++k) {
    Program p = gen_oo_program(r);
    std::string text = render(p);
    Program back = parse_program(SourceText{text});
    t.expect(back == p, [&] { return "program:\n" + text + "\nreparsed:\n" + render(back); });
  }
  Signature sig = vocab().signature();
  ExprGenOptions eo;
  eo.navigation = true;
  eo.depth = 4;
  for (std::size_t k = 0; k < o.cases / 4; ++k) {
    Expr p = gen_assertion(r, eo);
    std::string text = render(p);
    Expr back = parse_assertion(SourceText{text}, sig);
    t.expect(back == p, [&] { return "assertion " + text + " reparsed as " + render(back); });
  }
}

using SuiteFn = void (*)(const SuiteOptions&, SuiteResult&);

const std::vector<std::pair<std::string, SuiteFn>>& registry() {
  static const std::vector<std::pair<std::string, SuiteFn>> r{
      {"transform-golden", transform_golden},   {"differential", differential},
      {"substitution", substitution},           {"translation-lemma", translation_lemma},
      {"assertion-lemma", assertion_lemma},     {"homomorphism-lemma", homomorphism_lemma},
      {"wp", wp_suite},                         {"proof-goldens", proof_goldens},
      {"soundness", soundness},                 {"proof-translation", proof_translation},
      {"roundtrip", roundtrip},
  };
  return r;
}

}  // namespace

std::vector<std::string> suite_names() {
  std::vector<std::string> out;
  for (const auto& [name, fn] : registry()) out.push_back(name);
  return out;
}

SuiteResult run_suite(const std::string& name, const SuiteOptions& opts) {
  for (const auto& [n, fn] : registry()) {
    if (n != name) continue;
    SuiteResult res;
    res.name = name;
    res.seed = opts.seed;
    auto start = std::chrono::steady_clock::now();
    try {
      fn(opts, res);
    } catch (const std::exception& e) {
      ++res.failed;
      res.failures.push_back(std::string("aborted: ") + e.what());
    }
    res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return res;
  }
  throw std::invalid_argument("unknown suite " + name);
}

// ---------------------------------------------------------------------------

const std::vector<GoldenProof>& golden_proofs() {
  using PS = ProofSystem;
  static const std::vector<GoldenProof> g{
      {"nullm_po.prf", "nullm.oo", PS::POPlus, Expect::Valid},
      {"nullm_spo.prf", "nullm.oo", PS::SPOPlus, Expect::Counterexample},
      {"nullm_po.prf", "nullm.oo", PS::SPOPlus, Expect::Rejected},
      {"skip.prf", "", PS::PK, Expect::Valid},
      {"guard_faili.prf", "", PS::PK, Expect::Valid},
      {"guard_faili.prf", "", PS::SPK, Expect::Rejected},
      {"guard_failii.prf", "", PS::SPK, Expect::Valid},
      {"guard_failii.prf", "", PS::PK, Expect::Rejected},
      {"countdown.prf", "countdown.krn", PS::PK, Expect::Valid},
      {"countdown.prf", "countdown.krn", PS::SPK, Expect::Valid},
      {"order.prf", "", PS::PK, Expect::Valid},
      {"swap.prf", "swap.krn", PS::PK, Expect::Valid},
      {"frame.prf", "", PS::PR, Expect::Valid},
      {"frame.prf", "", PS::PK, Expect::Rejected},
      {"inst.prf", "add.oo", PS::PO, Expect::Valid},
      {"inst.prf", "add.oo", PS::SPO, Expect::Valid},
      {"add_po.prf", "add.oo", PS::POPlus, Expect::Valid},
      {"add_spo.prf", "add.oo", PS::SPOPlus, Expect::Valid},
      {"add_po.prf", "add.oo", PS::PO, Expect::Rejected},
      {"dec.prf", "dec.rec", PS::PRPlus, Expect::Valid},
      {"dec.prf", "dec.rec", PS::SPRPlus, Expect::Valid},
  };
  return g;
}

LoadedProof load_golden(const GoldenProof& g) {
  LoadedProof lp;
  if (g.program.empty()) {
    lp.program.flavor = flavor_of(g.system);
  } else {
    lp.program = load_program(data_path(g.program));
  }
  lp.file = load_proof(data_path("proofs/" + g.proof), lp.program.sig);
  return lp;
}

AuditResult audit_formula(const Formula& f, const DeclSet& decls, Flavor flavor, bool strong, const Universe& u,
                          std::uint64_t fuel, std::size_t leaf_cap) {
  AuditResult out;
  bool unknown = false;
  ExploreOptions eo;
  eo.universe = u;
  eo.this_nonnull = flavor == Flavor::OO;
  eo.leaf_cap = leaf_cap;
  ExploreResult er = explore(
      [&](const State& s) {
        if (!eval_assertion(s, f.pre, u)) return true;
        RunResult rr = run_stmt(f.stmt, decls, flavor, s, fuel);
        bool ok = true;
        switch (rr.status) {
          case RunStatus::OutOfFuel: unknown = true; break;
          case RunStatus::Failed: ok = !strong; break;
          case RunStatus::Terminated: ok = eval_assertion(*rr.state, f.post, u); break;
        }
        ++out.states;
        if (!ok) out.witness = s.to_strict();
        return ok;
      },
      eo);
  if (out.witness) {
    out.status = AuditStatus::Violated;
  } else if (unknown || !er.complete) {
    out.status = AuditStatus::Inconclusive;
  }
  return out;
}

TranslationCheck check_translation(const Derivation& d, ProofSystem source, const DeclSet& decls,
                                   const CheckOptions& opts) {
  TranslationCheck tc;
  Verdict sv = check(d, source, decls, opts);
  if (!sv.accepted()) {
    tc.detail = "source rejected: " + sv.reason;
    return tc;
  }
  ProofSystem target = translation_target(source);
  tc.target = translate_proof(d, source, decls);
  Verdict tv = check(tc.target, target, theta(decls), opts);
  tc.accepted = tv.accepted();
  if (!tc.accepted) {
    tc.detail = "target rejected: " + tv.reason;
    return tc;
  }
  std::vector<bool> matched(tv.obligations.size(), false);
  tc.preserved = true;
  for (const auto& so : sv.obligations) {
    Expr image = theta(so.obligation.formula());
    bool found = false;
    for (std::size_t j = 0; j < tv.obligations.size(); ++j) {
      if (!equivalent_syntax(tv.obligations[j].obligation.formula(), image)) continue;
      found = true;
      matched[j] = true;
      if (tv.obligations[j].result.status != so.result.status) {
        tc.preserved = false;
        tc.detail = so.obligation.origin + " changes status in " + tv.obligations[j].obligation.origin;
      }
    }
    if (!found) {
      tc.preserved = false;
      tc.detail = "no image for " + so.obligation.origin;
    }
  }
  for (std::size_t j = 0; j < tv.obligations.size(); ++j) {
    if (!matched[j] && tv.obligations[j].result.status != Validity::Valid) {
      tc.preserved = false;
      tc.detail = "new obligation " + tv.obligations[j].obligation.origin + " is " +
                  to_string(tv.obligations[j].result.status);
    }
  }
  if (tc.preserved) tc.detail = "ok";
  return tc;
}

}  // namespace oov
