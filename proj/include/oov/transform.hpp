#pragma once

#include <string>
#include <vector>

#include "oov/state.hpp"
#include "oov/syntax.hpp"

namespace oov {

/// Θ: object-oriented phrases to recursive ones. Instance variables become
/// normal arrays of the same name indexed first by the owning object.

/// x: T ↦ x: object → T; a: T1×…×Tn → T ↦ a: object×T1×…×Tn → T.
VarRef lift(const VarRef& instance_var);

Expr theta(const Expr& e);
Stmt theta(const Stmt& s);
Decl theta(const Decl& d);
DeclSet theta(const DeclSet& d);
Formula theta(const Formula& f);
Signature theta(const Signature& sig);
State theta(const State& s);
Outcome theta(const Outcome& o);

struct VarMapping {
  VarRef instance;
  VarRef lifted;
};

struct ThetaImage {
  Program program;
  std::vector<VarMapping> mapping;
};

/// Throws std::invalid_argument unless `p` is an OO program.
ThetaImage transform_program(const Program& p);

/// `// sum: integer => sum: object -> integer` lines for a rendered image.
std::string render_mapping(const std::vector<VarMapping>& m);

}  // namespace oov
