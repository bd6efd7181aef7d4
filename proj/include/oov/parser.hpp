#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include "oov/derivation.hpp"
#include "oov/state.hpp"
#include "oov/syntax.hpp"

namespace oov {

struct SourceText {
  std::string text;
  std::string origin = "<inline>";
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::string origin, SourceLoc loc, const std::string& message);
  const std::string& origin() const { return origin_; }
  SourceLoc loc() const { return loc_; }
  /// Message without the location prefix.
  const std::string& detail() const { return detail_; }

 private:
  std::string origin_;
  SourceLoc loc_;
  std::string detail_;
};

/// Parses a program: variable declarations, method or procedure
/// declarations, then the main statement. Without an explicit flavor it is
/// inferred: methods or instance variables mean OO, procedures mean
/// recursive, otherwise kernel.
Program parse_program(const SourceText& src, std::optional<Flavor> flavor = std::nullopt);

/// Statements, assertions and formulas resolve identifiers in `sig`.
/// Undeclared block locals are added to `sig` with the type of their
/// initializer.
Stmt parse_stmt(const SourceText& src, Signature& sig);
Expr parse_assertion(const SourceText& src, const Signature& sig);
Formula parse_formula(const SourceText& src, Signature& sig);
/// `state { this=o1; x=5; o1.next=o2; a[1,2]=7; }`
State parse_state(const SourceText& src, const Signature& sig);
/// Proof file: optional `(var x: T)` forms followed by one derivation.
/// Variables it declares are added to `sig`.
ProofFile parse_proof(const SourceText& src, Signature& sig);

/// Flavor implied by a file extension (.krn, .oo, .rec), if any.
std::optional<Flavor> flavor_for_path(const std::string& path);

std::string render(const Expr& e);
/// Rejects statements containing internal restore nodes or E.
std::string render(const Stmt& s);
/// Like render but also prints `E` and restore nodes (`restore(x:=5)`);
/// for logs and diagnostics only, not parseable.
std::string render_runtime(const Stmt& s);
std::string render(const Formula& f);
std::string render(const Decl& d, Flavor flavor);
std::string render(const Program& p);
std::string render(const Derivation& d);
std::string render(const ProofFile& p);
std::string render_type(const Type& t);

}  // namespace oov
