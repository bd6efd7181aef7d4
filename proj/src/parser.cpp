#include "oov/parser.hpp"

#include <cctype>
#include <set>
#include <sstream>

namespace oov {

ParseError::ParseError(std::string origin, SourceLoc loc, const std::string& message)
    : std::runtime_error(origin + ":" + to_string(loc) + ": " + message),
      origin_(std::move(origin)),
      loc_(loc),
      detail_(message) {}

namespace {

// ---------------------------------------------------------------------------
// Lexer
// ---------------------------------------------------------------------------

enum class Tok : std::uint8_t { Ident, Int, Punct, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  SourceLoc loc;
};

std::string describe(const Token& t) {
  switch (t.kind) {
    case Tok::End: return "end of input";
    case Tok::Int: return "number " + t.text;
    default: return "'" + t.text + "'";
  }
}

std::vector<Token> lex(const SourceText& src) {
  std::vector<Token> out;
  const std::string& s = src.text;
  std::size_t i = 0;
  int line = 1;
  int col = 1;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      if (s[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++i;
    }
  };
  while (i < s.size()) {
    char c = s[i];
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
      advance(1);
      continue;
    }
    if (c == '/' && i + 1 < s.size() && s[i + 1] == '/') {
      while (i < s.size() && s[i] != '\n') advance(1);
      continue;
    }
    SourceLoc loc{line, col};
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
      if (j < s.size() && s[j] == '#' && j + 1 < s.size() && std::isdigit(static_cast<unsigned char>(s[j + 1]))) {
        ++j;
        while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      }
      std::string text = s.substr(i, j - i);
      if (text == "fi" && j < s.size() && s[j] == '\'') {
        text = "fi'";
        ++j;
      }
      out.push_back({Tok::Ident, text, loc});
      advance(j - i);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      out.push_back({Tok::Int, s.substr(i, j - i), loc});
      advance(j - i);
      continue;
    }
    static const char* two[] = {":=", "/=", "<=", ">=", "->"};
    bool matched = false;
    for (const char* t : two) {
      if (s.compare(i, 2, t) == 0) {
        out.push_back({Tok::Punct, t, loc});
        advance(2);
        matched = true;
        break;
      }
    }
    if (matched) continue;
    if (std::string("()[]{},;:.?=<>+-*").find(c) != std::string::npos) {
      out.push_back({Tok::Punct, std::string(1, c), loc});
      advance(1);
      continue;
    }
    if (static_cast<unsigned char>(c) >= 0x80) {
      throw ParseError(src.origin, loc, "non-ASCII character outside comments");
    }
    throw ParseError(src.origin, loc, std::string("unexpected character '") + c + "'");
  }
  out.push_back({Tok::End, "", SourceLoc{line, col}});
  return out;
}

const std::set<std::string>& reserved() {
  static const std::set<std::string> words{
      "skip", "if",   "then", "else",   "fi",     "fi'",    "while",  "do",  "od",   "begin",
      "local", "end", "true", "false",  "null",   "not",    "and",    "or",  "forall", "exists",
      "method", "proc", "var", "ivar"};
  return words;
}

std::optional<BaseType> basic_type(const std::string& s) {
  if (s == "integer") return BaseType::Integer;
  if (s == "boolean") return BaseType::Boolean;
  if (s == "object") return BaseType::Object;
  if (s == "nat") return BaseType::Nat;
  return std::nullopt;
}

bool is_oid_text(const std::string& s) {
  if (s.size() < 2 || s[0] != 'o') return false;
  for (std::size_t i = 1; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------

class Parser {
 public:
  Parser(const SourceText& src, Signature* sig) : origin_(src.origin), toks_(lex(src)), sig_(sig) {}

  [[noreturn]] void fail(const Token& t, const std::string& msg) const { throw ParseError(origin_, t.loc, msg); }
  [[noreturn]] void expected(const std::string& what) const {
    fail(peek(), "expected " + what + ", found " + describe(peek()));
  }

  const Token& peek(std::size_t k = 0) const {
    std::size_t i = std::min(pos_ + k, toks_.size() - 1);
    return toks_[i];
  }
  bool at(const std::string& text, std::size_t k = 0) const {
    const Token& t = peek(k);
    return t.kind != Tok::End && t.kind != Tok::Int && t.text == text;
  }
  bool accept(const std::string& text) {
    if (!at(text)) return false;
    ++pos_;
    return true;
  }
  const Token& expect(const std::string& text) {
    if (!at(text)) expected("'" + text + "'");
    return toks_[pos_++];
  }
  bool at_end() const { return peek().kind == Tok::End; }
  void expect_end() {
    if (!at_end()) expected("end of input");
  }

  std::string identifier(const std::string& what) {
    const Token& t = peek();
    if (t.kind != Tok::Ident || reserved().count(t.text)) expected(what);
    ++pos_;
    return t.text;
  }

  // -- types ---------------------------------------------------------------

  BaseType basic() {
    const Token& t = peek();
    auto b = t.kind == Tok::Ident ? basic_type(t.text) : std::nullopt;
    if (!b) expected("a basic type");
    ++pos_;
    return *b;
  }

  Type type() {
    std::vector<BaseType> parts{basic()};
    while (accept("*")) parts.push_back(basic());
    if (accept("->")) return Type::array(parts, basic());
    if (parts.size() > 1) expected("'->' after argument types");
    return Type::basic(parts.front());
  }

  // -- names -------------------------------------------------------------

  VarRef resolve(const Token& t) const {
    for (auto it = bound_.rbegin(); it != bound_.rend(); ++it) {
      if (it->name == t.text) return *it;
    }
    if (const VarRef* v = sig_->find(t.text)) return *v;
    fail(t, "undeclared variable " + t.text);
  }

  void declare(const Token& at_tok, const VarRef& v) {
    if (v.name == kThis && v != this_var()) fail(at_tok, "this cannot be redeclared");
    if (!sig_->declare(v)) fail(at_tok, "conflicting declaration of " + v.name);
  }

  // -- expressions -------------------------------------------------------

  Expr expr() {
    Expr l = disjunction();
    if (accept("->")) return ex::implies(l, expr());
    return l;
  }

  Expr disjunction() {
    Expr l = conjunction();
    while (accept("or")) l = ex::or_(l, conjunction());
    return l;
  }

  Expr conjunction() {
    Expr l = negation();
    while (accept("and")) l = ex::and_(l, negation());
    return l;
  }

  Expr negation() {
    if (accept("not")) return ex::not_(negation());
    return comparison();
  }

  Expr comparison() {
    Expr l = additive();
    static const std::pair<const char*, BinOp> ops[] = {{"=", BinOp::Eq},  {"/=", BinOp::Ne}, {"<", BinOp::Lt},
                                                       {"<=", BinOp::Le}, {">", BinOp::Gt},  {">=", BinOp::Ge}};
    for (const auto& [text, op] : ops) {
      if (peek().kind == Tok::Punct && peek().text == text) {
        ++pos_;
        return ex::binary(op, l, additive());
      }
    }
    return l;
  }

  Expr additive() {
    Expr l = multiplicative();
    for (;;) {
      if (peek().kind == Tok::Punct && peek().text == "+") {
        ++pos_;
        l = ex::binary(BinOp::Add, l, multiplicative());
      } else if (peek().kind == Tok::Punct && peek().text == "-") {
        ++pos_;
        l = ex::binary(BinOp::Sub, l, multiplicative());
      } else {
        return l;
      }
    }
  }

  Expr multiplicative() {
    Expr l = unary();
    while (peek().kind == Tok::Punct && peek().text == "*") {
      ++pos_;
      l = ex::binary(BinOp::Mul, l, unary());
    }
    return l;
  }

  Expr unary() {
    if (peek().kind == Tok::Punct && peek().text == "-") {
      ++pos_;
      if (peek().kind == Tok::Int) return ex::int_lit(-Int(toks_[pos_++].text));
      return ex::neg(unary());
    }
    return postfix(false);
  }

  /// Primary followed by navigation steps. With `for_call`, stops before a
  /// `.m(` so the caller can read a method call.
  Expr postfix(bool for_call) {
    Expr e = primary();
    while (at(".") && peek(1).kind == Tok::Ident) {
      if (for_call && at("(", 2)) break;
      ++pos_;
      const Token& name = toks_[pos_++];
      const VarRef* f = sig_->find(name.text);
      if (!f || !f->is_instance()) fail(name, name.text + " is not an instance variable");
      std::vector<Expr> index;
      if (f->is_array()) {
        expect("[");
        index = expr_list("]");
      }
      e = ex::nav(e, *f, index);
    }
    return e;
  }

  std::vector<Expr> expr_list(const std::string& close) {
    std::vector<Expr> out;
    if (accept(close)) return out;
    out.push_back(expr());
    while (accept(",")) out.push_back(expr());
    expect(close);
    return out;
  }

  Expr quantifier() {
    Quantifier q = toks_[pos_++].text == "forall" ? Quantifier::Forall : Quantifier::Exists;
    const Token& name_tok = peek();
    std::string name = identifier("a bound variable");
    expect(":");
    BaseType t = basic();
    expect(":");
    VarRef v = normal_var(name, Type::basic(t));
    if (const VarRef* existing = sig_->find(name); existing && existing->is_instance()) {
      fail(name_tok, "cannot quantify over instance variable " + name);
    }
    bound_.push_back(v);
    Expr body = expr();
    bound_.pop_back();
    return ex::quant(q, v, body);
  }

  Expr primary() {
    const Token& t = peek();
    if (t.kind == Tok::Int) {
      ++pos_;
      return ex::int_lit(Int(t.text));
    }
    if (t.kind == Tok::Ident) {
      if (t.text == "true" || t.text == "false") {
        ++pos_;
        return ex::bool_lit(t.text == "true");
      }
      if (t.text == "null") {
        ++pos_;
        return ex::null();
      }
      if (t.text == "forall" || t.text == "exists") return quantifier();
      if (reserved().count(t.text)) expected("an expression");
      ++pos_;
      VarRef v = resolve(t);
      if (v.is_array()) {
        expect("[");
        return ex::sub(v, expr_list("]"));
      }
      return ex::var(v);
    }
    if (accept("(")) {
      Expr e = expr();
      if (accept("?")) {
        Expr a = expr();
        expect(":");
        Expr b = expr();
        expect(")");
        return ex::cond(e, a, b);
      }
      expect(")");
      return e;
    }
    expected("an expression");
  }

  // -- statements --------------------------------------------------------

  bool at_stmt_end() const {
    static const std::set<std::string> stops{"end", "fi", "fi'", "od", "else", "}", "{", ")"};
    return at_end() || (peek().kind != Tok::Int && stops.count(peek().text));
  }

  Stmt stmts() {
    SourceLoc loc = peek().loc;
    std::vector<Stmt> items{simple()};
    while (accept(";")) {
      if (at_stmt_end()) break;
      items.push_back(simple());
    }
    return st::seq(items, loc);
  }

  Stmt simple() {
    const Token& t = peek();
    SourceLoc loc = t.loc;
    if (accept("skip")) return st::skip(loc);
    if (accept("if")) {
      Expr b = disjunction();
      if (accept("then")) {
        Stmt s1 = stmts();
        expect("else");
        Stmt s2 = stmts();
        expect("fi");
        return st::if_(b, s1, s2, loc);
      }
      if (!accept("->")) expected("'then' or '->'");
      Stmt s = stmts();
      if (accept("fi'")) return st::if_(b, s, st::skip(), loc);
      if (accept("fi")) return st::fail_if(b, s, loc);
      expected("'fi' or 'fi''");
    }
    if (accept("while")) {
      Expr b = expr();
      expect("do");
      Stmt s = stmts();
      expect("od");
      return st::while_(b, s, loc);
    }
    if (accept("begin")) {
      expect("local");
      std::vector<Token> names{peek()};
      identifier("a local variable");
      while (accept(",")) {
        names.push_back(peek());
        identifier("a local variable");
      }
      expect(":=");
      std::vector<Expr> inits{expr()};
      while (accept(",")) inits.push_back(expr());
      if (inits.size() != names.size()) fail(names.front(), "block declares " + std::to_string(names.size()) +
                                                                " locals but has " + std::to_string(inits.size()) +
                                                                " initializers");
      std::vector<VarRef> locals;
      for (std::size_t i = 0; i < names.size(); ++i) {
        if (const VarRef* v = sig_->find(names[i].text)) {
          locals.push_back(*v);
        } else {
          VarRef v2 = normal_var(names[i].text, Type::basic(type_of(inits[i])));
          declare(names[i], v2);
          locals.push_back(v2);
        }
      }
      expect(";");
      Stmt body = stmts();
      expect("end");
      return st::block(locals, inits, body, loc);
    }
    if (t.kind == Tok::Ident && at("(", 1) && !reserved().count(t.text) && !sig_->find(t.text)) {
      pos_ += 2;
      return st::proc_call(t.text, expr_list(")"), loc);
    }
    Expr e = postfix(true);
    if (at(".") && peek(1).kind == Tok::Ident && at("(", 2)) {
      ++pos_;
      std::string m = toks_[pos_++].text;
      ++pos_;
      return st::method_call(e, m, expr_list(")"), loc);
    }
    if (at(",")) {
      std::vector<VarRef> targets;
      const auto* v = e.as<VarExpr>();
      if (!v) fail(t, "parallel assignment targets must be simple variables");
      targets.push_back(v->var);
      while (accept(",")) {
        const Token& nt = peek();
        identifier("a variable");
        targets.push_back(resolve(nt));
      }
      expect(":=");
      std::vector<Expr> values{expr()};
      while (accept(",")) values.push_back(expr());
      if (values.size() != targets.size()) fail(t, "parallel assignment arity mismatch");
      return st::par_assign(targets, values, loc);
    }
    if (accept(":=")) {
      if (!e.is<VarExpr>() && !e.is<SubExpr>()) fail(t, "assignment target must be a variable");
      return st::assign(e, expr(), loc);
    }
    expected("':=' or a method call");
  }

  // -- programs ----------------------------------------------------------

  void var_decl() {
    VarKind kind = toks_[pos_++].text == "ivar" ? VarKind::Instance : VarKind::Normal;
    std::vector<Token> names{peek()};
    identifier("a variable name");
    while (accept(",")) {
      names.push_back(peek());
      identifier("a variable name");
    }
    expect(":");
    Type ty = type();
    expect(";");
    for (const auto& n : names) {
      if (n.text == kThis) fail(n, "this is implicitly declared");
      declare(n, VarRef{kind, n.text, ty});
    }
  }

  Decl decl() {
    SourceLoc loc = peek().loc;
    ++pos_;
    Decl d;
    d.loc = loc;
    d.name = identifier("a method or procedure name");
    expect("(");
    if (!accept(")")) {
      do {
        const Token& nt = peek();
        std::string name = nt.text;
        if (name != kThis) identifier("a formal parameter");
        else ++pos_;
        expect(":");
        VarRef v = normal_var(name, Type::basic(basic()));
        declare(nt, v);
        d.formals.push_back(v);
      } while (accept(","));
      expect(")");
    }
    expect("{");
    d.body = stmts();
    expect("}");
    return d;
  }

  Program program(std::optional<Flavor> flavor) {
    Program p;
    bool has_methods = false;
    bool has_procs = false;
    bool has_ivars = false;
    for (;;) {
      if (at("var") || at("ivar")) {
        has_ivars |= at("ivar");
        var_decl();
      } else if (at("method") || at("proc")) {
        const Token& kw = peek();
        bool is_method = kw.text == "method";
        if ((is_method && has_procs) || (!is_method && has_methods)) {
          fail(kw, "methods and procedures cannot be mixed in one program");
        }
        (is_method ? has_methods : has_procs) = true;
        p.decls.push_back(decl());
      } else {
        break;
      }
    }
    p.main = stmts();
    expect_end();
    if (flavor) {
      p.flavor = *flavor;
    } else if (has_methods || has_ivars) {
      p.flavor = Flavor::OO;
    } else if (has_procs) {
      p.flavor = Flavor::Recursive;
    } else {
      p.flavor = Flavor::Kernel;
    }
    p.sig = *sig_;
    return p;
  }

  Formula formula() {
    Formula f;
    expect("{");
    f.pre = expr();
    expect("}");
    f.stmt = stmts();
    expect("{");
    f.post = expr();
    expect("}");
    return f;
  }

  // -- state literals ----------------------------------------------------

  Value value_literal(BaseType want) {
    const Token& t = peek();
    Value v;
    if (t.kind == Tok::Int) {
      ++pos_;
      v = Value::integer(Int(t.text));
    } else if (at("-") && peek(1).kind == Tok::Int) {
      pos_ += 2;
      v = Value::integer(-Int(toks_[pos_ - 1].text));
    } else if (at("true") || at("false")) {
      ++pos_;
      v = Value::boolean(t.text == "true");
    } else if (at("null")) {
      ++pos_;
      v = Value::object(ObjRef::null());
    } else if (t.kind == Tok::Ident && is_oid_text(t.text)) {
      ++pos_;
      v = Value::object(ObjRef::oid(std::stoull(t.text.substr(1))));
    } else {
      expected("a value");
    }
    BaseType got = v.is_int() ? BaseType::Integer : v.is_bool() ? BaseType::Boolean : BaseType::Object;
    if (!compatible(got, want)) fail(t, "value of type " + to_string(got) + " where " + to_string(want) + " expected");
    if (want == BaseType::Nat && v.as_int() < 0) fail(t, "negative value for a nat");
    return v;
  }

  std::vector<Value> index_literal(const VarRef& var, const Token& at_tok) {
    std::vector<Value> index;
    if (!var.is_array()) return index;
    expect("[");
    for (std::size_t i = 0; i < var.type.args.size(); ++i) {
      if (i > 0) expect(",");
      index.push_back(value_literal(var.type.args[i]));
    }
    if (!accept("]")) fail(at_tok, "wrong number of subscripts for " + var.name);
    return index;
  }

  State state() {
    State s;
    if (!(peek().kind == Tok::Ident && peek().text == "state")) expected("'state'");
    ++pos_;
    expect("{");
    while (!accept("}")) {
      const Token& t = peek();
      Location loc;
      if ((t.kind == Tok::Ident && is_oid_text(t.text) && at(".", 1)) || (at("null") && at(".", 1))) {
        ++pos_;
        ObjRef owner = t.text == "null" ? ObjRef::null() : ObjRef::oid(std::stoull(t.text.substr(1)));
        ++pos_;
        const Token& nt = peek();
        const VarRef* f = sig_->find(nt.text);
        if (nt.kind != Tok::Ident || !f || !f->is_instance()) fail(nt, nt.text + " is not an instance variable");
        ++pos_;
        loc = Location{*f, owner, index_literal(*f, nt)};
      } else {
        if (t.kind != Tok::Ident) expected("a variable");
        const VarRef* v = sig_->find(t.text);
        if (!v || v->is_instance()) fail(t, t.text + " is not a declared normal variable");
        ++pos_;
        loc = Location{*v, std::nullopt, index_literal(*v, t)};
      }
      expect("=");
      s.write(loc, value_literal(loc.var.type.value));
      if (!accept(";")) {
        if (!at("}")) expected("';' or '}'");
      }
    }
    expect_end();
    return s;
  }

  // -- proofs ------------------------------------------------------------

  bool at_word(const std::string& w, std::size_t k = 0) const {
    return peek(k).kind == Tok::Ident && peek(k).text == w;
  }

  std::string rule_text() {
    std::string name = peek().text;
    if (peek().kind != Tok::Ident) expected("a rule name");
    ++pos_;
    while (at("-") && peek(1).kind == Tok::Ident) {
      name += "-" + peek(1).text;
      pos_ += 2;
    }
    return name;
  }

  Formula conclusion() {
    expect("(");
    if (!at_word("conclusion")) expected("'conclusion'");
    ++pos_;
    Formula f = formula();
    expect(")");
    return f;
  }

  Derivation derivation() {
    SourceLoc loc = expect("(").loc;
    Derivation d;
    d.loc = loc;
    if (at_word("assume")) {
      ++pos_;
      const Token& n = peek();
      if (n.kind != Tok::Int) expected("an assumption number");
      ++pos_;
      d.rule = Rule::Assume;
      d.assume_index = std::stoi(n.text);
      if (d.assume_index < 1) fail(n, "assumption numbers start at 1");
      d.conclusion = conclusion();
      expect(")");
      return d;
    }
    if (!at_word("rule")) expected("'rule' or 'assume'");
    ++pos_;
    const Token& name_tok = peek();
    std::string name = rule_text();
    auto rule = rule_from_name(name);
    if (!rule || *rule == Rule::Assume) fail(name_tok, "unknown rule " + name);
    d.rule = *rule;
    d.conclusion = conclusion();
    if (at("(") && at_word("side", 1)) {
      pos_ += 2;
      while (accept("(")) {
        if (at_word("assumptions")) {
          ++pos_;
          while (accept("(")) {
            d.assumptions.push_back(formula());
            expect(")");
          }
        } else if (at_word("subst")) {
          ++pos_;
          do {
            const Token& vt = peek();
            identifier("a variable");
            VarRef v = resolve(vt);
            d.subst_vars.push_back(v);
          } while (accept(","));
          expect(":=");
          d.subst_terms.push_back(expr());
          while (accept(",")) d.subst_terms.push_back(expr());
        } else {
          expected("'assumptions' or 'subst'");
        }
        expect(")");
      }
      expect(")");
    }
    while (at("(")) d.premises.push_back(derivation());
    expect(")");
    return d;
  }

  ProofFile proof() {
    ProofFile pf;
    while (at("(") && at("var", 1)) {
      pos_ += 2;
      std::vector<Token> names{peek()};
      identifier("a variable name");
      while (accept(",")) {
        names.push_back(peek());
        identifier("a variable name");
      }
      expect(":");
      Type ty = type();
      expect(")");
      for (const auto& n : names) {
        VarRef v = normal_var(n.text, ty);
        declare(n, v);
        pf.extra_vars.push_back(v);
      }
    }
    pf.root = derivation();
    expect_end();
    return pf;
  }

 private:
  std::string origin_;
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  Signature* sig_;
  std::vector<VarRef> bound_;
};

// ---------------------------------------------------------------------------
// Rendering
// ---------------------------------------------------------------------------

enum Level : int { kImplies = 1, kOr, kAnd, kNot, kCmp, kAdd, kMul, kNeg, kAtom };

int level_of(const Expr& e) {
  if (const auto* b = e.as<BinaryExpr>()) {
    switch (b->op) {
      case BinOp::Implies: return kImplies;
      case BinOp::Or: return kOr;
      case BinOp::And: return kAnd;
      case BinOp::Add:
      case BinOp::Sub: return kAdd;
      case BinOp::Mul: return kMul;
      default: return kCmp;
    }
  }
  if (const auto* u = e.as<UnaryExpr>()) return u->op == UnOp::Not ? kNot : kNeg;
  if (const auto* i = e.as<IntLit>()) return i->value < 0 ? kNeg : kAtom;
  return kAtom;
}

const char* op_text(BinOp op) {
  switch (op) {
    case BinOp::Add: return "+";
    case BinOp::Sub: return "-";
    case BinOp::Mul: return "*";
    case BinOp::Eq: return "=";
    case BinOp::Ne: return "/=";
    case BinOp::Lt: return "<";
    case BinOp::Le: return "<=";
    case BinOp::Gt: return ">";
    case BinOp::Ge: return ">=";
    case BinOp::And: return "and";
    case BinOp::Or: return "or";
    case BinOp::Implies: return "->";
  }
  return "?";
}

std::string render_expr(const Expr& e, int min_level);

std::string render_list(const std::vector<Expr>& es, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < es.size(); ++i) {
    if (i > 0) out += sep;
    out += render_expr(es[i], kImplies);
  }
  return out;
}

std::string render_bare(const Expr& e) {
  return std::visit(
      [&](const auto& n) -> std::string {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, IntLit>) {
          return n.value.str();
        } else if constexpr (std::is_same_v<T, BoolLit>) {
          return n.value ? "true" : "false";
        } else if constexpr (std::is_same_v<T, NullLit>) {
          return "null";
        } else if constexpr (std::is_same_v<T, VarExpr>) {
          return n.var.name;
        } else if constexpr (std::is_same_v<T, SubExpr>) {
          return n.array.name + "[" + render_list(n.index, ",") + "]";
        } else if constexpr (std::is_same_v<T, NavExpr>) {
          std::string out = render_expr(n.base, kAtom) + "." + n.field.name;
          if (!n.index.empty()) out += "[" + render_list(n.index, ",") + "]";
          return out;
        } else if constexpr (std::is_same_v<T, CondExpr>) {
          return "(" + render_expr(n.guard, kImplies) + " ? " + render_expr(n.then_expr, kImplies) + " : " +
                 render_expr(n.else_expr, kImplies) + ")";
        } else if constexpr (std::is_same_v<T, UnaryExpr>) {
          if (n.op == UnOp::Not) return "not " + render_expr(n.arg, kNot);
          // "-5" would read back as a literal, and "--x" is unreadable
          if (n.arg.template is<IntLit>() || n.arg.template is<UnaryExpr>()) {
            return "-(" + render_expr(n.arg, kImplies) + ")";
          }
          return "-" + render_expr(n.arg, kNeg);
        } else if constexpr (std::is_same_v<T, BinaryExpr>) {
          int lvl = level_of(e);
          std::string op = op_text(n.op);
          if (n.op == BinOp::Implies) {
            return render_expr(n.lhs, kOr) + " -> " + render_expr(n.rhs, kImplies);
          }
          if (lvl == kCmp) return render_expr(n.lhs, kAdd) + " " + op + " " + render_expr(n.rhs, kAdd);
          return render_expr(n.lhs, lvl) + " " + op + " " + render_expr(n.rhs, lvl + 1);
        } else {
          return std::string("(") + (n.q == Quantifier::Forall ? "forall " : "exists ") + n.var.name + ":" +
                 to_string(n.var.type.value) + ": " + render_expr(n.body, kImplies) + ")";
        }
      },
      e.node().v);
}

std::string render_expr(const Expr& e, int min_level) {
  std::string s = render_bare(e);
  return level_of(e) < min_level ? "(" + s + ")" : s;
}

std::string render_vars(const std::vector<VarRef>& vs) {
  std::string out;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    if (i > 0) out += ", ";
    out += vs[i].name;
  }
  return out;
}

std::string render_stmt(const Stmt& s, bool runtime) {
  return std::visit(
      [&](const auto& n) -> std::string {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, SkipStmt>) {
          return "skip";
        } else if constexpr (std::is_same_v<T, EmptyStmt>) {
          if (!runtime) throw std::invalid_argument("cannot render the empty statement");
          return "E";
        } else if constexpr (std::is_same_v<T, RestoreStmt>) {
          if (!runtime) throw std::invalid_argument("cannot render an internal restore statement");
          std::string out = "restore(";
          for (std::size_t i = 0; i < n.targets.size(); ++i) {
            if (i > 0) out += ", ";
            out += n.targets[i].name + ":=" + (n.values[i] ? to_string(*n.values[i]) : "?");
          }
          return out + ")";
        } else if constexpr (std::is_same_v<T, AssignStmt>) {
          return render_expr(n.target, kAtom) + " := " + render_expr(n.value, kImplies);
        } else if constexpr (std::is_same_v<T, ParAssignStmt>) {
          return render_vars(n.targets) + " := " + render_list(n.values, ", ");
        } else if constexpr (std::is_same_v<T, SeqStmt>) {
          std::string out;
          for (std::size_t i = 0; i < n.items.size(); ++i) {
            if (i > 0) out += "; ";
            out += render_stmt(n.items[i], runtime);
          }
          return out;
        } else if constexpr (std::is_same_v<T, IfStmt>) {
          if (n.else_branch.template is<SkipStmt>()) {
            return "if " + render_expr(n.cond, kOr) + " -> " + render_stmt(n.then_branch, runtime) + " fi'";
          }
          return "if " + render_expr(n.cond, kOr) + " then " + render_stmt(n.then_branch, runtime) + " else " +
                 render_stmt(n.else_branch, runtime) + " fi";
        } else if constexpr (std::is_same_v<T, FailIfStmt>) {
          return "if " + render_expr(n.cond, kOr) + " -> " + render_stmt(n.body, runtime) + " fi";
        } else if constexpr (std::is_same_v<T, WhileStmt>) {
          return "while " + render_expr(n.cond, kOr) + " do " + render_stmt(n.body, runtime) + " od";
        } else if constexpr (std::is_same_v<T, BlockStmt>) {
          return "begin local " + render_vars(n.locals) + " := " + render_list(n.inits, ", ") + "; " +
                 render_stmt(n.body, runtime) + " end";
        } else if constexpr (std::is_same_v<T, MethodCallStmt>) {
          return render_expr(n.callee, kAtom) + "." + n.method + "(" + render_list(n.args, ",") + ")";
        } else {
          return n.proc + "(" + render_list(n.args, ",") + ")";
        }
      },
      s.node().v);
}

void render_derivation(std::ostringstream& os, const Derivation& d, int indent) {
  std::string pad(static_cast<std::size_t>(indent), ' ');
  if (d.rule == Rule::Assume) {
    os << pad << "(assume " << d.assume_index << " (conclusion " << render(d.conclusion) << "))";
    return;
  }
  os << pad << "(rule " << rule_name(d.rule) << " (conclusion " << render(d.conclusion) << ")";
  if (!d.assumptions.empty() || !d.subst_vars.empty()) {
    os << "\n" << pad << "  (side";
    if (!d.assumptions.empty()) {
      os << " (assumptions";
      for (const auto& a : d.assumptions) os << " (" << render(a) << ")";
      os << ")";
    }
    if (!d.subst_vars.empty()) {
      os << " (subst " << render_vars(d.subst_vars) << " := " << render_list(d.subst_terms, ", ") << ")";
    }
    os << ")";
  }
  for (const auto& p : d.premises) {
    os << "\n";
    render_derivation(os, p, indent + 2);
  }
  os << ")";
}

}  // namespace

// ---------------------------------------------------------------------------
// Public entry points
// ---------------------------------------------------------------------------

Program parse_program(const SourceText& src, std::optional<Flavor> flavor) {
  Signature sig;
  Parser p(src, &sig);
  return p.program(flavor);
}

Stmt parse_stmt(const SourceText& src, Signature& sig) {
  Parser p(src, &sig);
  Stmt s = p.stmts();
  p.expect_end();
  return s;
}

Expr parse_assertion(const SourceText& src, const Signature& sig) {
  Signature copy = sig;
  Parser p(src, &copy);
  Expr e = p.expr();
  p.expect_end();
  return e;
}

Formula parse_formula(const SourceText& src, Signature& sig) {
  Parser p(src, &sig);
  Formula f = p.formula();
  p.expect_end();
  return f;
}

State parse_state(const SourceText& src, const Signature& sig) {
  Signature copy = sig;
  Parser p(src, &copy);
  return p.state();
}

ProofFile parse_proof(const SourceText& src, Signature& sig) {
  Parser p(src, &sig);
  return p.proof();
}

std::optional<Flavor> flavor_for_path(const std::string& path) {
  auto ends_with = [&](const std::string& suffix) {
    return path.size() >= suffix.size() && path.compare(path.size() - suffix.size(), suffix.size(), suffix) == 0;
  };
  if (ends_with(".krn")) return Flavor::Kernel;
  if (ends_with(".oo")) return Flavor::OO;
  if (ends_with(".rec")) return Flavor::Recursive;
  return std::nullopt;
}

std::string render(const Expr& e) { return render_expr(e, kImplies); }
std::string render(const Stmt& s) { return render_stmt(s, false); }
std::string render_runtime(const Stmt& s) { return render_stmt(s, true); }
std::string render(const Formula& f) {
  return "{" + render(f.pre) + "} " + render(f.stmt) + " {" + render(f.post) + "}";
}

std::string render_type(const Type& t) { return to_string(t); }

std::string render(const Decl& d, Flavor flavor) {
  std::string out = (flavor == Flavor::OO ? "method " : "proc ") + d.name + "(";
  for (std::size_t i = 0; i < d.formals.size(); ++i) {
    if (i > 0) out += ", ";
    out += d.formals[i].name + ": " + to_string(d.formals[i].type);
  }
  return out + ") { " + render(d.body) + " }";
}

std::string render(const Program& p) {
  std::ostringstream os;
  for (const auto& [name, v] : p.sig.vars()) {
    if (name == kThis) continue;
    os << (v.is_instance() ? "ivar " : "var ") << name << ": " << to_string(v.type) << ";\n";
  }
  for (const auto& d : p.decls) os << render(d, p.flavor) << "\n";
  os << render(p.main) << "\n";
  return os.str();
}

std::string render(const Derivation& d) {
  std::ostringstream os;
  render_derivation(os, d, 0);
  return os.str();
}

std::string render(const ProofFile& p) {
  std::ostringstream os;
  for (const auto& v : p.extra_vars) os << "(var " << v.name << ": " << to_string(v.type) << ")\n";
  os << render(p.root) << "\n";
  return os.str();
}

}  // namespace oov
