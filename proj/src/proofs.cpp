#include "oov/proofs.hpp"

#include <sstream>

#include "oov/assertions.hpp"
#include "oov/parser.hpp"
#include "oov/transform.hpp"

namespace oov {

namespace {

constexpr std::pair<ProofSystem, const char*> kSystemNames[] = {
    {ProofSystem::PK, "PK"},        {ProofSystem::SPK, "SPK"},     {ProofSystem::PO, "PO"},
    {ProofSystem::POPlus, "PO+"},   {ProofSystem::SPO, "SPO"},     {ProofSystem::SPOPlus, "SPO+"},
    {ProofSystem::PR, "PR"},        {ProofSystem::SPR, "SPR"},     {ProofSystem::PRPlus, "PR+"},
    {ProofSystem::SPRPlus, "SPR+"},
};

bool in(Rule r, std::initializer_list<Rule> rules) {
  for (Rule x : rules) {
    if (x == r) return true;
  }
  return false;
}

bool kernel_partial(Rule r) {
  return in(r, {Rule::Skip, Rule::Assign, Rule::ParAssign, Rule::Comp, Rule::Cond, Rule::Loop, Rule::Conseq,
                Rule::FailI, Rule::Block});
}
bool kernel_strong(Rule r) {
  return in(r, {Rule::Skip, Rule::Assign, Rule::ParAssign, Rule::Comp, Rule::Cond, Rule::Loop, Rule::Conseq,
                Rule::FailII, Rule::Block});
}
bool auxiliary(Rule r) { return in(r, {Rule::Disj, Rule::Conj, Rule::ExistsIntro, Rule::Invariance, Rule::Subst}); }

}  // namespace

std::string to_string(ProofSystem s) {
  for (const auto& [sys, name] : kSystemNames) {
    if (sys == s) return name;
  }
  return "?";
}

std::optional<ProofSystem> system_from_name(const std::string& name) {
  for (const auto& [sys, n] : kSystemNames) {
    if (name == n) return sys;
  }
  return std::nullopt;
}

bool allows(ProofSystem s, Rule r) {
  switch (s) {
    case ProofSystem::PK: return kernel_partial(r);
    case ProofSystem::SPK: return kernel_strong(r);
    case ProofSystem::PO: return kernel_partial(r) || auxiliary(r) || in(r, {Rule::AssignInst, Rule::Weaken});
    case ProofSystem::POPlus:
      return allows(ProofSystem::PO, r) || in(r, {Rule::RecI, Rule::Assume});
    case ProofSystem::SPO: return kernel_strong(r) || auxiliary(r) || r == Rule::AssignInst;
    case ProofSystem::SPOPlus: return allows(ProofSystem::SPO, r) || in(r, {Rule::RecII, Rule::Assume});
    case ProofSystem::PR: return kernel_partial(r) || auxiliary(r);
    case ProofSystem::SPR: return kernel_strong(r) || auxiliary(r);
    case ProofSystem::PRPlus: return allows(ProofSystem::PR, r) || in(r, {Rule::RecIII, Rule::Assume});
    case ProofSystem::SPRPlus: return allows(ProofSystem::SPR, r) || in(r, {Rule::RecIII, Rule::Assume});
  }
  return false;
}

bool is_strong(ProofSystem s) {
  return s == ProofSystem::SPK || s == ProofSystem::SPO || s == ProofSystem::SPOPlus || s == ProofSystem::SPR ||
         s == ProofSystem::SPRPlus;
}

Flavor flavor_of(ProofSystem s) {
  switch (s) {
    case ProofSystem::PK:
    case ProofSystem::SPK: return Flavor::Kernel;
    case ProofSystem::PO:
    case ProofSystem::POPlus:
    case ProofSystem::SPO:
    case ProofSystem::SPOPlus: return Flavor::OO;
    default: return Flavor::Recursive;
  }
}

Expr Obligation::formula() const {
  if (kind == Kind::NotNull) return ex::implies(lhs, ex::ne(rhs, ex::null()));
  return ex::implies(lhs, rhs);
}

bool Verdict::all_valid() const {
  for (const auto& o : obligations) {
    if (o.result.status != Validity::Valid) return false;
  }
  return true;
}

bool Verdict::any(Validity v) const {
  for (const auto& o : obligations) {
    if (o.result.status == v) return true;
  }
  return false;
}

int Verdict::exit_code() const {
  if (!accepted() || any(Validity::Counterexample)) return 2;
  if (any(Validity::Unknown)) return 3;
  return 0;
}

std::string Verdict::report() const {
  std::ostringstream os;
  os << "verdict\t" << (accepted() ? "ACCEPTED" : "REJECTED") << "\n";
  if (!accepted()) os << "reason\t" << reason << "\n";
  if (!bounds.empty()) os << "bounded\t" << bounds << "\n";
  for (const auto& o : obligations) {
    os << o.obligation.origin << "\t" << to_string(o.result.status);
    if (o.result.witness) os << "\t" << to_string(*o.result.witness);
    os << "\n";
  }
  return os.str();
}

ValidityResult discharge(const Obligation& ob, const Universe& u, std::size_t leaf_cap) {
  if (ob.kind == Obligation::Kind::Implication && equivalent_syntax(ob.lhs, ob.rhs)) {
    return ValidityResult{Validity::Valid, std::nullopt};
  }
  ExploreOptions opts;
  opts.universe = u;
  opts.leaf_cap = leaf_cap;
  return check_valid(ob.formula(), opts);
}

// ---------------------------------------------------------------------------
// Checker
// ---------------------------------------------------------------------------

namespace {

bool eqv(const Expr& a, const Expr& b) { return equivalent_syntax(a, b); }

bool disjoint(const NameSet& a, const NameSet& b) {
  for (const auto& x : a) {
    if (b.count(x)) return false;
  }
  return true;
}

NameSet unite(NameSet a, const NameSet& b) {
  a.insert(b.begin(), b.end());
  return a;
}

std::string show(const Formula& f) {
  try {
    return render(f);
  } catch (const std::exception&) {
    return "{" + render(f.pre) + "} " + render_runtime(f.stmt) + " {" + render(f.post) + "}";
  }
}

/// Block expected for the recursion-rule premise of call `call`.
std::optional<Stmt> call_block(const Stmt& call, const DeclSet& decls) {
  if (const auto* m = call.as<MethodCallStmt>()) {
    const Decl* d = find_decl(decls, m->method);
    if (!d) return std::nullopt;
    std::vector<VarRef> locals{this_var()};
    locals.insert(locals.end(), d->formals.begin(), d->formals.end());
    std::vector<Expr> inits{m->callee};
    inits.insert(inits.end(), m->args.begin(), m->args.end());
    return st::block(locals, inits, d->body);
  }
  if (const auto* p = call.as<ProcCallStmt>()) {
    const Decl* d = find_decl(decls, p->proc);
    if (!d) return std::nullopt;
    if (d->formals.empty()) return d->body;
    return st::block(d->formals, p->args, d->body);
  }
  return std::nullopt;
}

class ProofChecker {
 public:
  ProofChecker(ProofSystem sys, const DeclSet& decls)
      : sys_(sys), decls_(decls), flavor_(flavor_of(sys)), var_d_(vars_of(decls)), change_d_(change_of(decls)) {}

  void check(const Derivation& d, const std::string& path) {
    std::string origin = path + " " + rule_name(d.rule);
    if (d.loc.line > 0) origin += " @" + to_string(d.loc);
    const Formula& f = d.conclusion;
    if (!allows(sys_, d.rule)) {
      reject(origin, rule_name(d.rule) + " is not a rule of " + to_string(sys_));
      return;
    }
    if (!f.pre || !f.stmt || !f.post) {
      reject(origin, "incomplete conclusion");
      return;
    }
    if (!well_typed(f, origin)) return;
    for (std::size_t i = 0; i < d.premises.size(); ++i) {
      if (is_recursion_rule(d.rule)) continue;
      check(d.premises[i], path + "." + std::to_string(i));
    }
    apply(d, origin, path);
  }

  std::vector<Obligation> obligations;
  std::optional<std::string> error;

 private:
  void reject(const std::string& origin, const std::string& msg) {
    if (!error) error = origin + ": " + msg;
  }

  bool well_typed(const Formula& f, const std::string& origin) {
    std::vector<Diagnostic> diags = typecheck_stmt(f.stmt, decls_, flavor_, CheckMode::Runtime);
    for (const auto& p : {f.pre, f.post}) {
      auto more = typecheck_assertion(p);
      diags.insert(diags.end(), more.begin(), more.end());
    }
    if (diags.empty()) return true;
    reject(origin, "ill-typed formula " + show(f) + ": " + to_string(diags.front()));
    return false;
  }

  bool arity(const Derivation& d, std::size_t n, const std::string& origin) {
    if (d.premises.size() == n) return true;
    reject(origin, "expects " + std::to_string(n) + " premises, got " + std::to_string(d.premises.size()));
    return false;
  }

  bool expect(bool ok, const std::string& origin, const std::string& what) {
    if (!ok) reject(origin, what);
    return ok;
  }

  void oblige(Obligation::Kind kind, Expr lhs, Expr rhs, const std::string& origin) {
    obligations.push_back(Obligation{kind, std::move(lhs), std::move(rhs), origin});
  }

  const Formula& prem(const Derivation& d, std::size_t i) const { return d.premises[i].conclusion; }

  void apply(const Derivation& d, const std::string& origin, const std::string& path) {
    const Formula& f = d.conclusion;
    const Expr& p = f.pre;
    const Expr& q = f.post;
    const Stmt& s = f.stmt;
    switch (d.rule) {
      case Rule::Skip:
        if (!arity(d, 0, origin)) return;
        expect(s.is<SkipStmt>(), origin, "statement is not skip");
        expect(eqv(p, q), origin, "pre- and postcondition differ");
        return;
      case Rule::Assign:
      case Rule::AssignInst: {
        if (!arity(d, 0, origin)) return;
        const auto* a = s.as<AssignStmt>();
        if (!expect(a != nullptr, origin, "statement is not an assignment")) return;
        bool instance = a->target.is<VarExpr>() ? a->target.as<VarExpr>()->var.is_instance()
                                                : a->target.as<SubExpr>()->array.is_instance();
        if (!expect(instance == (d.rule == Rule::AssignInst), origin,
                    instance ? "instance variable target needs ASSIGN-INST" : "ASSIGN-INST needs an instance target")) {
          return;
        }
        Expr expected;
        if (const auto* v = a->target.as<VarExpr>(); v && !instance) {
          expected = substitute_parallel(q, {v->var}, {a->value});
        } else {
          expected = substitute(q, a->target, a->value);
        }
        expect(eqv(p, expected), origin, "precondition is not " + render(expected));
        return;
      }
      case Rule::ParAssign: {
        if (!arity(d, 0, origin)) return;
        const auto* a = s.as<ParAssignStmt>();
        if (!expect(a != nullptr, origin, "statement is not a parallel assignment")) return;
        Expr expected = substitute_parallel(q, a->targets, a->values);
        expect(eqv(p, expected), origin, "precondition is not " + render(expected));
        return;
      }
      case Rule::Comp: {
        if (!arity(d, 2, origin)) return;
        std::vector<Stmt> items = seq_items(s);
        bool split = false;
        for (std::size_t k = 1; k < items.size() && !split; ++k) {
          split = prem(d, 0).stmt == st::seq(std::vector<Stmt>(items.begin(), items.begin() + k)) &&
                  prem(d, 1).stmt == st::seq(std::vector<Stmt>(items.begin() + k, items.end()));
        }
        if (!expect(split, origin, "premise statements do not compose to the conclusion")) return;
        expect(eqv(prem(d, 0).pre, p), origin, "first premise has a different precondition");
        expect(eqv(prem(d, 0).post, prem(d, 1).pre), origin, "intermediate assertions differ");
        expect(eqv(prem(d, 1).post, q), origin, "second premise has a different postcondition");
        return;
      }
      case Rule::Cond: {
        if (!arity(d, 2, origin)) return;
        const auto* c = s.as<IfStmt>();
        if (!expect(c != nullptr, origin, "statement is not a conditional")) return;
        expect(prem(d, 0).stmt == c->then_branch && prem(d, 1).stmt == c->else_branch, origin,
               "premises do not match the branches");
        expect(eqv(prem(d, 0).pre, ex::and_(p, c->cond)), origin, "first premise precondition is not p and B");
        expect(eqv(prem(d, 1).pre, ex::and_(p, ex::not_(c->cond))), origin,
               "second premise precondition is not p and not B");
        expect(eqv(prem(d, 0).post, q) && eqv(prem(d, 1).post, q), origin, "premise postconditions differ");
        return;
      }
      case Rule::Loop: {
        if (!arity(d, 1, origin)) return;
        const auto* w = s.as<WhileStmt>();
        if (!expect(w != nullptr, origin, "statement is not a loop")) return;
        expect(prem(d, 0).stmt == w->body, origin, "premise is not about the loop body");
        expect(eqv(prem(d, 0).pre, ex::and_(p, w->cond)), origin, "premise precondition is not p and B");
        expect(eqv(prem(d, 0).post, p), origin, "premise postcondition is not the invariant");
        expect(eqv(q, ex::and_(p, ex::not_(w->cond))), origin, "postcondition is not p and not B");
        return;
      }
      case Rule::Conseq:
        if (!arity(d, 1, origin)) return;
        if (!expect(prem(d, 0).stmt == s, origin, "premise is about a different statement")) return;
        oblige(Obligation::Kind::Implication, p, prem(d, 0).pre, origin + " pre");
        oblige(Obligation::Kind::Implication, prem(d, 0).post, q, origin + " post");
        return;
      case Rule::FailI:
      case Rule::FailII: {
        if (!arity(d, 1, origin)) return;
        const auto* fi = s.as<FailIfStmt>();
        if (!expect(fi != nullptr, origin, "statement is not a failure statement")) return;
        expect(prem(d, 0).stmt == fi->body, origin, "premise is not about the body");
        expect(eqv(prem(d, 0).post, q), origin, "premise postcondition differs");
        if (d.rule == Rule::FailI) {
          expect(eqv(prem(d, 0).pre, ex::and_(p, fi->cond)), origin, "premise precondition is not p and B");
        } else {
          expect(eqv(prem(d, 0).pre, p), origin, "premise precondition differs");
          oblige(Obligation::Kind::Implication, p, fi->cond, origin + " guard");
        }
        return;
      }
      case Rule::Block: {
        if (!arity(d, 1, origin)) return;
        const auto* b = s.as<BlockStmt>();
        if (!expect(b != nullptr, origin, "statement is not a block")) return;
        Stmt expected = st::seq(st::par_assign(b->locals, b->inits), b->body);
        expect(prem(d, 0).stmt == expected, origin, "premise statement is not the initialization followed by the body");
        expect(eqv(prem(d, 0).pre, p) && eqv(prem(d, 0).post, q), origin, "premise assertions differ");
        NameSet locals;
        for (const auto& x : b->locals) locals.insert(x.name);
        expect(disjoint(locals, free_vars(q)), origin, "a block local occurs free in the postcondition");
        return;
      }
      case Rule::Weaken: {
        if (!arity(d, 1, origin)) return;
        const auto* m = s.as<MethodCallStmt>();
        if (!expect(m != nullptr, origin, "statement is not a method call")) return;
        expect(prem(d, 0).stmt == s, origin, "premise is about a different statement");
        expect(eqv(prem(d, 0).pre, ex::and_(p, ex::ne(m->callee, ex::null()))), origin,
               "premise precondition is not p and s /= null");
        expect(eqv(prem(d, 0).post, q), origin, "premise postcondition differs");
        return;
      }
      case Rule::Disj:
        if (!arity(d, 2, origin)) return;
        expect(prem(d, 0).stmt == s && prem(d, 1).stmt == s, origin, "premises are about a different statement");
        expect(eqv(p, ex::or_(prem(d, 0).pre, prem(d, 1).pre)), origin, "precondition is not the disjunction");
        expect(eqv(prem(d, 0).post, q) && eqv(prem(d, 1).post, q), origin, "premise postconditions differ");
        return;
      case Rule::Conj:
        if (!arity(d, 2, origin)) return;
        expect(prem(d, 0).stmt == s && prem(d, 1).stmt == s, origin, "premises are about a different statement");
        expect(eqv(p, ex::and_(prem(d, 0).pre, prem(d, 1).pre)), origin, "precondition is not the conjunction");
        expect(eqv(q, ex::and_(prem(d, 0).post, prem(d, 1).post)), origin, "postcondition is not the conjunction");
        return;
      case Rule::ExistsIntro: {
        if (!arity(d, 1, origin)) return;
        const auto* qe = p.as<QuantExpr>();
        if (!expect(qe && qe->q == Quantifier::Exists, origin, "precondition is not existential")) return;
        expect(prem(d, 0).stmt == s, origin, "premise is about a different statement");
        expect(eqv(qe->body, prem(d, 0).pre), origin, "quantified body differs from the premise precondition");
        expect(eqv(prem(d, 0).post, q), origin, "premise postcondition differs");
        NameSet forbidden = unite(unite(var_d_, vars_of(s)), free_vars(q));
        expect(!forbidden.count(qe->var.name), origin, qe->var.name + " occurs in D, S or free in q");
        return;
      }
      case Rule::Invariance: {
        if (!arity(d, 1, origin)) return;
        const auto* pa = p.as<BinaryExpr>();
        const auto* qa = q.as<BinaryExpr>();
        if (!expect(pa && pa->op == BinOp::And && qa && qa->op == BinOp::And, origin,
                    "pre- and postcondition must be conjunctions")) {
          return;
        }
        expect(prem(d, 0).stmt == s, origin, "premise is about a different statement");
        expect(eqv(pa->lhs, qa->lhs), origin, "invariant differs between pre- and postcondition");
        expect(eqv(pa->rhs, prem(d, 0).pre) && eqv(qa->rhs, prem(d, 0).post), origin,
               "conjuncts differ from the premise");
        expect(disjoint(free_vars(pa->lhs), unite(change_d_, change_of(s))), origin,
               "invariant mentions a variable changed by D or S");
        return;
      }
      case Rule::Subst: {
        if (!arity(d, 1, origin)) return;
        if (!expect(!d.subst_vars.empty() && d.subst_vars.size() == d.subst_terms.size(), origin,
                    "missing or malformed substitution")) {
          return;
        }
        expect(prem(d, 0).stmt == s, origin, "premise is about a different statement");
        Expr pre = substitute_parallel(prem(d, 0).pre, d.subst_vars, d.subst_terms);
        Expr post = substitute_parallel(prem(d, 0).post, d.subst_vars, d.subst_terms);
        expect(eqv(p, pre) && eqv(q, post), origin, "conclusion is not the substituted premise");
        NameSet zs;
        for (const auto& z : d.subst_vars) zs.insert(z.name);
        NameSet ts;
        for (const auto& t : d.subst_terms) ts = unite(ts, vars_of(t));
        expect(disjoint(zs, unite(var_d_, vars_of(s))), origin, "substituted variable occurs in D or S");
        expect(disjoint(ts, unite(change_d_, change_of(s))), origin, "substituted term mentions a changed variable");
        return;
      }
      case Rule::RecI:
      case Rule::RecII:
      case Rule::RecIII:
        recursion(d, origin, path);
        return;
      case Rule::Assume: {
        if (!arity(d, 0, origin)) return;
        if (!expect(assumptions_ != nullptr, origin, "assumption used outside a recursion rule")) return;
        int i = d.assume_index;
        if (!expect(i >= 1 && static_cast<std::size_t>(i) <= assumptions_->size(), origin,
                    "no assumption " + std::to_string(i))) {
          return;
        }
        const Formula& a = (*assumptions_)[static_cast<std::size_t>(i - 1)];
        expect(a.stmt == s && alpha_equal(a.pre, p) && alpha_equal(a.post, q), origin,
               "conclusion does not match assumption " + std::to_string(i));
        return;
      }
    }
  }

  void recursion(const Derivation& d, const std::string& origin, const std::string& path) {
    if (!expect(assumptions_ == nullptr, origin, "recursion rules cannot be nested")) return;
    const auto& as = d.assumptions;
    if (!arity(d, as.size() + 1, origin)) return;
    bool methods = d.rule != Rule::RecIII;
    for (std::size_t i = 0; i < as.size(); ++i) {
      std::string here = origin + " assumption " + std::to_string(i + 1);
      bool shape = methods ? as[i].stmt.is<MethodCallStmt>() : as[i].stmt.is<ProcCallStmt>();
      if (!expect(shape, here, methods ? "assumption is not a method call" : "assumption is not a procedure call")) {
        return;
      }
      if (!well_typed(as[i], here)) return;
      auto block = call_block(as[i].stmt, decls_);
      if (!expect(block.has_value(), here, "call to an undeclared method or procedure")) return;
      const Formula& pi = prem(d, i + 1);
      expect(pi.stmt == *block, here, "premise " + std::to_string(i + 1) + " is not about the call's block");
      expect(eqv(pi.pre, as[i].pre) && eqv(pi.post, as[i].post), here,
             "premise " + std::to_string(i + 1) + " assertions differ from the assumption");
      if (d.rule == Rule::RecII) {
        oblige(Obligation::Kind::NotNull, as[i].pre, as[i].stmt.as<MethodCallStmt>()->callee, here + " not-null");
      }
    }
    const Formula& p0 = prem(d, 0);
    expect(p0.stmt == d.conclusion.stmt && eqv(p0.pre, d.conclusion.pre) && eqv(p0.post, d.conclusion.post), origin,
           "first premise does not prove the conclusion");
    assumptions_ = &as;
    for (std::size_t i = 0; i < d.premises.size(); ++i) check(d.premises[i], path + "." + std::to_string(i));
    assumptions_ = nullptr;
  }

  ProofSystem sys_;
  const DeclSet& decls_;
  Flavor flavor_;
  NameSet var_d_;
  NameSet change_d_;
  const std::vector<Formula>* assumptions_ = nullptr;
};

}  // namespace

Verdict check(const Derivation& d, ProofSystem system, const DeclSet& decls, const CheckOptions& opts) {
  ProofChecker checker(system, decls);
  checker.check(d, "r");
  Verdict v;
  if (checker.error) {
    v.status = VerdictStatus::Rejected;
    v.reason = *checker.error;
  }
  for (auto& ob : checker.obligations) {
    ValidityResult r;
    if (opts.discharge) r = discharge(ob, opts.universe, opts.leaf_cap);
    v.obligations.push_back({std::move(ob), std::move(r)});
  }
  if (opts.discharge && !v.obligations.empty()) v.bounds = to_string(opts.universe);
  return v;
}

// ---------------------------------------------------------------------------
// Translation
// ---------------------------------------------------------------------------

namespace {

Derivation node(Rule r, Formula f, std::vector<Derivation> premises = {}) {
  Derivation d;
  d.rule = r;
  d.conclusion = std::move(f);
  d.premises = std::move(premises);
  return d;
}

Formula theta_assumption(const Formula& a) {
  const auto* m = a.stmt.as<MethodCallStmt>();
  if (!m) throw TranslationError("assumption is not a method call");
  std::vector<Expr> args{theta(m->callee)};
  for (const auto& t : m->args) args.push_back(theta(t));
  return Formula{theta(a.pre), st::proc_call(m->method, args, a.stmt.loc()), theta(a.post)};
}

class Translator {
 public:
  explicit Translator(bool strong) : strong_(strong) {}

  Derivation go(const Derivation& d) {
    Formula f = theta(d.conclusion);
    switch (d.rule) {
      case Rule::AssignInst: return node(Rule::Assign, f);
      case Rule::Assume: return assume(d, f);
      case Rule::Weaken: {
        if (strong_) throw TranslationError("WEAKEN in a strong partial correctness proof");
        const auto* fi = f.stmt.as<FailIfStmt>();
        Derivation inner = normal_form_failure(go(d.premises.at(0)));
        Formula mid{ex::and_(f.pre, fi->cond), fi->body, f.post};
        return node(Rule::FailI, f, {node(Rule::Conseq, mid, {std::move(inner)})});
      }
      case Rule::RecI:
      case Rule::RecII: {
        if ((d.rule == Rule::RecII) != strong_) throw TranslationError("recursion rule does not match the system");
        Derivation out = node(Rule::RecIII, f);
        for (const auto& a : d.assumptions) out.assumptions.push_back(theta_assumption(a));
        saved_ = &out.assumptions;
        for (const auto& p : d.premises) out.premises.push_back(go(p));
        saved_ = nullptr;
        return out;
      }
      case Rule::RecIII:
      case Rule::FailII:
        if (d.rule == Rule::RecIII || !strong_) throw TranslationError(rule_name(d.rule) + " in the source proof");
        [[fallthrough]];
      default: {
        Derivation out = node(d.rule, f);
        out.subst_vars = d.subst_vars;
        for (const auto& t : d.subst_terms) out.subst_terms.push_back(theta(t));
        for (const auto& p : d.premises) out.premises.push_back(go(p));
        return out;
      }
    }
  }

 private:
  Derivation assume(const Derivation& d, const Formula& f) {
    if (!saved_) throw TranslationError("assumption outside a recursion rule");
    std::size_t i = static_cast<std::size_t>(d.assume_index);
    if (i < 1 || i > saved_->size()) throw TranslationError("dangling assumption reference");
    const Formula& a = (*saved_)[i - 1];
    Derivation leaf = node(Rule::Assume, a);
    leaf.assume_index = d.assume_index;
    const auto* fi = f.stmt.as<FailIfStmt>();
    if (strong_) return node(Rule::FailII, f, {std::move(leaf)});
    Formula mid{ex::and_(f.pre, fi->cond), fi->body, f.post};
    return node(Rule::FailI, f, {node(Rule::Conseq, mid, {std::move(leaf)})});
  }

  bool strong_;
  const std::vector<Formula>* saved_ = nullptr;
};

}  // namespace

ProofSystem translation_target(ProofSystem source) {
  switch (source) {
    case ProofSystem::PO:
    case ProofSystem::POPlus: return ProofSystem::PRPlus;
    case ProofSystem::SPO:
    case ProofSystem::SPOPlus: return ProofSystem::SPRPlus;
    default: throw TranslationError("proof translation starts from an object-oriented system");
  }
}

Derivation translate_proof(const Derivation& d, ProofSystem source, const DeclSet& /*decls*/) {
  Translator t(translation_target(source) == ProofSystem::SPRPlus);
  return t.go(d);
}

Derivation normal_form_failure(const Derivation& d) {
  const Formula& f = d.conclusion;
  const auto* fi = f.stmt.as<FailIfStmt>();
  if (!fi) throw TranslationError("normal form needs a failure statement");
  const Expr& b = fi->cond;
  const Stmt& body = fi->body;
  Formula target{ex::and_(f.pre, b), body, f.post};
  auto nf = [](const Derivation& p) { return normal_form_failure(p); };
  switch (d.rule) {
    case Rule::FailI: return d.premises.at(0);
    case Rule::Conseq: return node(Rule::Conseq, target, {nf(d.premises.at(0))});
    case Rule::Disj:
    case Rule::Conj: {
      Derivation a = nf(d.premises.at(0));
      Derivation c = nf(d.premises.at(1));
      Expr pre = d.rule == Rule::Disj ? ex::or_(a.conclusion.pre, c.conclusion.pre)
                                      : ex::and_(a.conclusion.pre, c.conclusion.pre);
      Formula mid{pre, body, f.post};
      return node(Rule::Conseq, target, {node(d.rule, mid, {std::move(a), std::move(c)})});
    }
    case Rule::ExistsIntro: {
      const auto* q = f.pre.as<QuantExpr>();
      Derivation a = nf(d.premises.at(0));
      Formula mid{ex::quant(q->q, q->var, a.conclusion.pre), body, f.post};
      return node(Rule::Conseq, target, {node(Rule::ExistsIntro, mid, {std::move(a)})});
    }
    case Rule::Invariance: {
      const auto* pa = f.pre.as<BinaryExpr>();
      Derivation a = nf(d.premises.at(0));
      Formula mid{ex::and_(pa->lhs, a.conclusion.pre), body, f.post};
      return node(Rule::Conseq, target, {node(Rule::Invariance, mid, {std::move(a)})});
    }
    case Rule::Subst: {
      Derivation out = node(Rule::Subst, target, {nf(d.premises.at(0))});
      out.subst_vars = d.subst_vars;
      out.subst_terms = d.subst_terms;
      return out;
    }
    case Rule::RecIII: {
      Derivation out = d;
      out.conclusion = target;
      out.premises.at(0) = nf(d.premises.at(0));
      return out;
    }
    default: throw TranslationError("no normal form for " + rule_name(d.rule) + " over a failure statement");
  }
}

}  // namespace oov
