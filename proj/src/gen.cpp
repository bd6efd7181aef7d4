#include "oov/gen.hpp"

#include <algorithm>

namespace oov {

int Rng::range(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(eng_); }

bool Rng::chance(double p) { return std::bernoulli_distribution(p)(eng_); }

namespace {

const Type kInt = Type::basic(BaseType::Integer);
const Type kBool = Type::basic(BaseType::Boolean);
const Type kObj = Type::basic(BaseType::Object);
const Type kIntArr = Type::array({BaseType::Integer}, BaseType::Integer);

}  // namespace

Vocabulary::Vocabulary()
    : x(normal_var("x", kInt)),
      y(normal_var("y", kInt)),
      b(normal_var("b", kBool)),
      p(normal_var("p", kObj)),
      q(normal_var("q", kObj)),
      arr(normal_var("arr", kIntArr)),
      f(instance_var("f", kInt)),
      g(instance_var("g", kBool)),
      nx(instance_var("nx", kObj)),
      h(instance_var("h", kIntArr)),
      i(normal_var("i", kInt)),
      o(normal_var("o", kObj)),
      n(normal_var("n", kInt)),
      w(normal_var("w", kInt)) {}

Signature Vocabulary::signature() const {
  Signature s;
  for (const auto& v : {x, y, b, p, q, arr, f, g, nx, h, i, o, n, w}) s.declare(v);
  return s;
}

const Vocabulary& vocab() {
  static const Vocabulary v;
  return v;
}

namespace {

struct ExprGen {
  Rng& r;
  ExprGenOptions opts;
  /// Quantifier-bound variables and the block local currently in scope.
  std::vector<VarRef> scope;

  bool in_scope(const VarRef& v) const {
    for (const auto& s : scope) {
      if (s.name == v.name) return true;
    }
    return false;
  }

  Expr obj(int depth) {
    const auto& V = vocab();
    std::vector<Expr> leaves{ex::null(), ex::this_(), ex::var(V.p), ex::var(V.q)};
    if (opts.instance) leaves.push_back(ex::var(V.nx));
    if (in_scope(V.o)) {
      if (r.chance(0.5)) return ex::var(V.o);
      leaves.push_back(ex::var(V.o));
    }
    if (depth > 0 && opts.navigation && r.chance(0.3)) return ex::nav(obj(depth - 1), V.nx);
    if (depth > 0 && r.chance(0.1)) return ex::cond(boolean(depth - 1), obj(depth - 1), obj(depth - 1));
    return r.pick(leaves);
  }

  Expr integer(int depth) {
    const auto& V = vocab();
    if (depth <= 0 || r.chance(0.35)) {
      if (in_scope(V.i) && r.chance(0.5)) return ex::var(V.i);
      std::vector<Expr> leaves{ex::int_lit(r.range(-3, 3)), ex::var(V.x), ex::var(V.y)};
      if (opts.instance) leaves.push_back(ex::var(V.f));
      if (opts.formal) leaves.push_back(ex::var(V.n));
      if (in_scope(V.i)) leaves.push_back(ex::var(V.i));
      if (in_scope(V.w)) leaves.push_back(ex::var(V.w));
      return r.pick(leaves);
    }
    switch (r.range(0, 7)) {
      case 0: return ex::binary(BinOp::Add, integer(depth - 1), integer(depth - 1));
      case 1: return ex::binary(BinOp::Sub, integer(depth - 1), integer(depth - 1));
      case 2: return ex::binary(BinOp::Mul, integer(depth - 1), ex::int_lit(r.range(-2, 2)));
      case 3: return ex::sub(V.arr, {integer(depth - 1)});
      case 4:
        if (opts.instance) return ex::sub(V.h, {integer(depth - 1)});
        return ex::neg(integer(depth - 1));
      case 5:
        if (opts.navigation) {
          if (r.chance(0.5)) return ex::nav(obj(depth - 1), V.f);
          return ex::nav(obj(depth - 1), V.h, {integer(depth - 1)});
        }
        return ex::var(V.x);
      case 6: return ex::cond(boolean(depth - 1), integer(depth - 1), integer(depth - 1));
      default: return ex::neg(integer(depth - 1));
    }
  }

  Expr boolean(int depth) {
    const auto& V = vocab();
    if (depth <= 0 || r.chance(0.2)) {
      std::vector<Expr> leaves{ex::bool_lit(r.chance(0.5)), ex::var(V.b)};
      if (opts.instance) leaves.push_back(ex::var(V.g));
      return r.pick(leaves);
    }
    static const BinOp cmp[] = {BinOp::Eq, BinOp::Ne, BinOp::Lt, BinOp::Le, BinOp::Gt, BinOp::Ge};
    switch (r.range(0, 7)) {
      case 0: return ex::not_(boolean(depth - 1));
      case 1: return ex::and_(boolean(depth - 1), boolean(depth - 1));
      case 2: return ex::or_(boolean(depth - 1), boolean(depth - 1));
      case 3:
      case 4: return ex::binary(cmp[r.range(0, 5)], integer(depth - 1), integer(depth - 1));
      case 5: return r.chance(0.5) ? ex::eq(obj(depth - 1), obj(depth - 1)) : ex::ne(obj(depth - 1), obj(depth - 1));
      case 6:
        if (opts.navigation && r.chance(0.5)) return ex::nav(obj(depth - 1), V.g);
        return ex::eq(boolean(depth - 1), boolean(depth - 1));
      default: return ex::cond(boolean(depth - 1), boolean(depth - 1), boolean(depth - 1));
    }
  }

  Expr of(BaseType t, int depth) {
    switch (t) {
      case BaseType::Boolean: return boolean(depth);
      case BaseType::Object: return obj(depth);
      default: return integer(depth);
    }
  }

  Expr assertion(int depth) {
    const auto& V = vocab();
    if (depth > 0 && r.chance(0.3)) {
      VarRef bv = r.chance(0.6) ? V.i : V.o;
      if (in_scope(bv)) bv = bv == V.i ? V.o : V.i;
      scope.push_back(bv);
      Expr body = assertion(depth - 1);
      scope.pop_back();
      return r.chance(0.5) ? ex::forall(bv, body) : ex::exists(bv, body);
    }
    if (depth > 0 && r.chance(0.4)) {
      switch (r.range(0, 3)) {
        case 0: return ex::and_(assertion(depth - 1), assertion(depth - 1));
        case 1: return ex::or_(assertion(depth - 1), assertion(depth - 1));
        case 2: return ex::implies(assertion(depth - 1), assertion(depth - 1));
        default: return ex::not_(assertion(depth - 1));
      }
    }
    return atom(depth);
  }

  Expr atom(int depth) {
    static const BinOp cmp[] = {BinOp::Eq, BinOp::Ne, BinOp::Lt, BinOp::Le, BinOp::Gt, BinOp::Ge};
    int d = std::max(depth, 1);
    switch (r.range(0, 4)) {
      case 0:
      case 1: return ex::binary(cmp[r.range(0, 5)], integer(d), integer(d));
      case 2: return r.chance(0.5) ? ex::eq(obj(d), obj(d)) : ex::ne(obj(d), obj(d));
      default: return boolean(depth);
    }
  }
};

}  // namespace

Expr gen_expr(Rng& r, BaseType t, const ExprGenOptions& o) {
  ExprGen g{r, o, {}};
  return g.of(t, o.depth);
}

Expr gen_assertion(Rng& r, const ExprGenOptions& o) {
  ExprGen g{r, o, {}};
  return g.assertion(o.depth);
}

namespace {

struct StmtGen {
  Rng& r;
  int methods = 0;
  bool in_method = false;
  bool with_w = false;

  ExprGen exprs(int depth) {
    ExprGenOptions o;
    o.depth = depth;
    o.instance = true;
    o.formal = in_method;
    ExprGen g{r, o, {}};
    if (with_w) g.scope.push_back(vocab().w);
    return g;
  }

  Stmt assign() {
    const auto& V = vocab();
    auto e = exprs(2);
    switch (r.range(0, 8)) {
      case 0: return st::assign(ex::var(V.x), e.integer(2));
      case 1: return st::assign(ex::var(V.y), e.integer(2));
      case 2: return st::assign(ex::var(V.b), e.boolean(2));
      case 3: return st::assign(ex::var(r.chance(0.5) ? V.p : V.q), e.obj(1));
      case 4: return st::assign(ex::sub(V.arr, {e.integer(1)}), e.integer(2));
      case 5: return st::assign(ex::var(V.f), e.integer(2));
      case 6: return st::assign(ex::var(V.g), e.boolean(2));
      case 7: return st::assign(ex::var(V.nx), e.obj(1));
      default: return st::assign(ex::sub(V.h, {e.integer(1)}), e.integer(2));
    }
  }

  Stmt call() {
    const auto& V = vocab();
    std::string m = "m" + std::to_string(r.range(1, methods));
    std::vector<Expr> callees{ex::this_(), ex::var(V.p), ex::var(V.q), ex::var(V.nx)};
    if (r.chance(0.05)) callees.push_back(ex::null());
    Expr callee = r.pick(callees);
    if (in_method) {
      Expr arg = ex::binary(BinOp::Sub, ex::var(V.n), ex::int_lit(1));
      Stmt c = st::method_call(callee, m, {arg});
      return st::if_(ex::binary(BinOp::Gt, ex::var(V.n), ex::int_lit(0)), c, st::skip());
    }
    return st::method_call(callee, m, {ex::int_lit(r.range(0, 3))});
  }

  Stmt loop(int depth) {
    const auto& V = vocab();
    if (r.chance(0.8)) {
      // counted loop over the block local w
      bool saved = with_w;
      Expr bound = ex::int_lit(r.range(0, 3));
      with_w = true;
      Stmt body = stmt(depth - 1);
      with_w = saved;
      Stmt inc = st::assign(ex::var(V.w), ex::binary(BinOp::Add, ex::var(V.w), ex::int_lit(1)));
      Stmt w = st::while_(ex::binary(BinOp::Lt, ex::var(V.w), bound), st::seq(body, inc));
      return st::block({V.w}, {ex::int_lit(0)}, w);
    }
    return st::while_(exprs(2).boolean(2), stmt(depth - 1));
  }

  Stmt stmt(int depth) {
    if (depth <= 0) {
      int k = r.range(0, 9);
      if (k < 6) return assign();
      if (k < 8 && methods > 0) return call();
      return st::skip();
    }
    int k = r.range(0, 14);
    if (k < 3) return assign();
    if (k < 5) return st::seq(stmt(depth - 1), stmt(depth - 1));
    if (k < 7) return st::if_(exprs(2).boolean(2), stmt(depth - 1), stmt(depth - 1));
    if (k < 8) return st::fail_if(exprs(2).boolean(1), stmt(depth - 1));
    if (k < 10) return loop(depth);
    if (k < 11) {
      bool saved = with_w;
      Expr init = exprs(2).integer(2);
      with_w = true;
      Stmt body = stmt(depth - 1);
      with_w = saved;
      return st::block({vocab().w}, {init}, body);
    }
    if (methods > 0) return call();
    return assign();
  }

  /// Sequence of a few statements.
  Stmt body(int lo, int hi, int depth) {
    std::vector<Stmt> items;
    int count = r.range(lo, hi);
    for (int k = 0; k < count; ++k) items.push_back(stmt(r.range(1, depth)));
    return st::seq(items);
  }
};

}  // namespace

Program gen_oo_program(Rng& r) {
  const auto& V = vocab();
  Program prog;
  prog.flavor = Flavor::OO;
  for (const auto& v : {V.x, V.y, V.b, V.p, V.q, V.arr, V.f, V.g, V.nx, V.h, V.n, V.w}) prog.sig.declare(v);
  StmtGen g{r};
  g.methods = r.range(0, 3);
  for (int k = 1; k <= g.methods; ++k) {
    g.in_method = true;
    Decl d;
    d.name = "m" + std::to_string(k);
    d.formals = {V.n};
    d.body = g.body(1, 3, 3);
    prog.decls.push_back(d);
  }
  g.in_method = false;
  prog.main = g.body(2, 4, 4);
  if (g.methods > 0 && r.chance(0.7)) prog.main = st::seq(prog.main, g.call());
  return prog;
}

State gen_state(Rng& r, const Universe& u) {
  const auto& V = vocab();
  auto some_int = [&] { return Value::integer(r.range(-3, 3)); };
  auto some_obj = [&] {
    int k = r.range(0, static_cast<int>(u.oids.size()));
    return Value::object(k == 0 ? ObjRef::null() : ObjRef::oid(u.oids[static_cast<std::size_t>(k - 1)]));
  };
  State s;
  s.write(Location{this_var(), std::nullopt, {}},
          Value::object(ObjRef::oid(u.oids[static_cast<std::size_t>(r.range(0, static_cast<int>(u.oids.size()) - 1))])));
  s.write(Location{V.x, std::nullopt, {}}, some_int());
  s.write(Location{V.y, std::nullopt, {}}, some_int());
  s.write(Location{V.b, std::nullopt, {}}, Value::boolean(r.chance(0.5)));
  s.write(Location{V.p, std::nullopt, {}}, some_obj());
  s.write(Location{V.q, std::nullopt, {}}, some_obj());
  for (int k = 0; k < 3; ++k) s.write(Location{V.arr, std::nullopt, {some_int()}}, some_int());
  std::vector<ObjRef> owners{ObjRef::null()};
  for (auto id : u.oids) owners.push_back(ObjRef::oid(id));
  for (const auto& o : owners) {
    s.write(Location{V.f, o, {}}, some_int());
    s.write(Location{V.g, o, {}}, Value::boolean(r.chance(0.5)));
    s.write(Location{V.nx, o, {}}, some_obj());
    for (int k = 0; k < 2; ++k) s.write(Location{V.h, o, {some_int()}}, some_int());
  }
  return s;
}

namespace {

struct LoopFreeGen {
  Rng& r;
  bool with_w = false;

  ExprGen exprs() {
    ExprGenOptions o;
    o.depth = 2;
    o.instance = false;
    ExprGen g{r, o, {}};
    if (with_w) g.scope.push_back(vocab().w);
    return g;
  }

  Stmt assign() {
    const auto& V = vocab();
    auto e = exprs();
    switch (r.range(0, 5)) {
      case 0: return st::assign(ex::var(V.x), e.integer(2));
      case 1: return st::assign(ex::var(V.y), e.integer(2));
      case 2: return st::assign(ex::var(V.b), e.boolean(2));
      case 3: return st::assign(ex::sub(V.arr, {e.integer(1)}), e.integer(2));
      case 4: return st::par_assign({V.x, V.y}, {e.integer(2), e.integer(2)});
      default:
        if (with_w) return st::assign(ex::var(V.w), e.integer(2));
        return st::par_assign({V.y, V.b}, {e.integer(1), e.boolean(1)});
    }
  }

  Stmt stmt(int depth, bool blocks) {
    if (depth <= 0) return r.chance(0.85) ? assign() : st::skip();
    switch (r.range(0, 7)) {
      case 0:
      case 1: return assign();
      case 2:
      case 3: return st::seq(stmt(depth - 1, blocks), stmt(depth - 1, blocks));
      case 4: return st::if_(exprs().boolean(2), stmt(depth - 1, blocks), stmt(depth - 1, blocks));
      case 5: return st::fail_if(exprs().boolean(1), stmt(depth - 1, blocks));
      case 6:
        if (blocks) {
          Expr init = exprs().integer(2);
          with_w = true;
          Stmt body = stmt(depth - 1, false);
          with_w = false;
          return st::block({vocab().w}, {init}, body);
        }
        return assign();
      default: return st::skip();
    }
  }
};

}  // namespace

Stmt gen_loop_free(Rng& r, int depth) {
  LoopFreeGen g{r};
  return g.stmt(depth, true);
}

}  // namespace oov
