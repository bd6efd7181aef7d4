// oov: command-line front end for the workbench.

#include <algorithm>
#include <iostream>
#include <regex>

#include "CLI11.hpp"
#include "oov/io.hpp"
#include "oov/parser.hpp"
#include "oov/proofs.hpp"
#include "oov/suites.hpp"
#include "oov/transform.hpp"
#include "oov/wp.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kRejected = 2;
constexpr int kInconclusive = 3;

struct Globals {
  std::uint64_t fuel = oov::kDefaultFuel;
  std::string int_range = "-8..8";
  std::size_t objects = 4;
  std::uint64_t seed = 42;
  std::string mode = "p";

  oov::Universe universe() const {
    static const std::regex re(R"(^\s*(-?\d+)\s*\.\.\s*(-?\d+)\s*$)");
    std::smatch m;
    if (!std::regex_match(int_range, m, re)) throw CLI::ValidationError("--int-range", "expected LO..HI");
    oov::Universe u = oov::Universe::make(oov::Int(m[1].str()), oov::Int(m[2].str()), objects);
    u.validate();
    return u;
  }

  oov::WpMode wp_mode() const { return mode == "sp" ? oov::WpMode::StrongPartial : oov::WpMode::Partial; }
};

oov::State default_start(const oov::Program& p) {
  oov::State s;
  if (p.flavor == oov::Flavor::OO) {
    s.write(oov::Location{oov::this_var(), std::nullopt, {}}, oov::Value::object(oov::ObjRef::oid(1)));
  }
  return s;
}

int cmd_parse(const std::string& file, const std::string& kind) {
  oov::SourceText src{oov::read_file(file), file};
  if (kind == "program") {
    std::cout << oov::render(oov::parse_program(src, oov::flavor_for_path(file)));
  } else if (kind == "assertion") {
    oov::Signature sig;
    std::cout << oov::render(oov::parse_assertion(src, sig)) << "\n";
  } else if (kind == "proof") {
    oov::Signature sig;
    std::cout << oov::render(oov::parse_proof(src, sig)) << "\n";
  } else {
    throw CLI::ValidationError("--kind", "unknown kind " + kind);
  }
  return kOk;
}

int cmd_run(const Globals& g, const std::string& file, const std::string& state_file) {
  oov::Program p = oov::load_program(file);
  auto diags = oov::typecheck(p);
  if (!diags.empty()) {
    for (const auto& d : diags) std::cerr << file << ":" << oov::to_string(d) << "\n";
    return kRejected;
  }
  oov::State s0 = state_file.empty() ? default_start(p) : oov::load_state(state_file, p.sig);
  oov::RunResult r = oov::run(p, s0, g.fuel);
  std::cout << oov::to_string(r.status) << "\n";
  if (r.state) std::cout << oov::to_string(*r.state) << "\n";
  std::cout << "steps " << r.steps << "\n";
  return r.status == oov::RunStatus::OutOfFuel ? kInconclusive : kOk;
}

int cmd_transform(const std::string& file, const std::string& out) {
  oov::Program p = oov::load_program(file);
  auto diags = oov::typecheck(p);
  if (!diags.empty()) {
    for (const auto& d : diags) std::cerr << file << ":" << oov::to_string(d) << "\n";
    return kRejected;
  }
  oov::ThetaImage img = oov::transform_program(p);
  std::string text = oov::render_mapping(img.mapping) + oov::render(img.program);
  if (out.empty()) std::cout << text;
  else oov::write_file(out, text);
  return kOk;
}

int cmd_wp(const Globals& g, const std::string& file, const std::string& post_text, bool symbolic) {
  oov::Program p = oov::load_program(file);
  oov::Expr post = oov::parse_assertion(oov::SourceText{post_text, "--post"}, p.sig);
  if (symbolic) {
    std::cout << oov::render(oov::wp_symbolic(p.main, post, g.wp_mode())) << "\n";
    return kOk;
  }
  oov::StateSpace space = oov::space_for(p.main, {post}, g.universe());
  oov::WpSet w = oov::wp_semantic(p.main, post, space, p.decls, p.flavor, g.fuel, g.wp_mode());
  std::cout << "space " << w.states.size() << " in " << w.count(oov::Membership::In) << " unknown "
            << w.count(oov::Membership::Unknown) << "\n";
  for (std::size_t i = 0; i < w.states.size(); ++i) {
    if (w.member[i] == oov::Membership::In) std::cout << oov::to_string(w.states[i]) << "\n";
  }
  for (std::size_t i = 0; i < w.states.size(); ++i) {
    if (w.member[i] == oov::Membership::Unknown) std::cout << "unknown " << oov::to_string(w.states[i]) << "\n";
  }
  return w.has_unknown() ? kInconclusive : kOk;
}

int cmd_check_proof(const Globals& g, const std::string& file, const std::string& system,
                    const std::string& program) {
  auto sys = oov::system_from_name(system);
  if (!sys) throw CLI::ValidationError("--system", "unknown proof system " + system);
  oov::Program p;
  p.flavor = oov::flavor_of(*sys);
  if (!program.empty()) p = oov::load_program(program);
  oov::ProofFile pf = oov::load_proof(file, p.sig);
  oov::CheckOptions opts;
  opts.universe = g.universe();
  oov::Verdict v = oov::check(pf.root, *sys, p.decls, opts);
  std::cout << v.report();
  return v.exit_code();
}

int cmd_suite(const Globals& g, const std::string& name, std::size_t cases) {
  oov::SuiteOptions o;
  o.seed = g.seed;
  o.universe = g.universe();
  o.cases = cases;
  std::vector<std::string> names = oov::suite_names();
  if (name != "all") {
    if (std::find(names.begin(), names.end(), name) == names.end()) {
      throw CLI::ValidationError("suite", "unknown suite " + name);
    }
    names = {name};
  }
  bool ok = true;
  for (const auto& n : names) {
    oov::SuiteResult r = oov::run_suite(n, o);
    std::cout << r.report();
    ok = ok && r.ok();
  }
  return ok ? kOk : kRejected;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Workbench for object-oriented, recursive and kernel programs and their proofs"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--fuel", g.fuel, "Transition budget per run")->capture_default_str();
  app.add_option("--int-range", g.int_range, "Integer range LO..HI for quantifiers and enumeration")
      ->capture_default_str();
  app.add_option("--objects", g.objects, "Number of object identities")->capture_default_str();
  app.add_option("--seed", g.seed, "Seed for the random suites")->capture_default_str();
  app.add_option("--mode", g.mode, "p (partial) or sp (strong partial)")
      ->check(CLI::IsMember({"p", "sp"}))
      ->capture_default_str();

  std::string file;
  std::string kind = "program";
  auto* parse = app.add_subcommand("parse", "Parse a file and print its normalized rendering");
  parse->add_option("file", file)->required()->check(CLI::ExistingFile);
  parse->add_option("--kind", kind, "program, assertion or proof")->capture_default_str();

  std::string state_file;
  auto* run = app.add_subcommand("run", "Run a program and print its final state");
  run->add_option("file", file)->required()->check(CLI::ExistingFile);
  run->add_option("--state", state_file, "Initial state literal file")->check(CLI::ExistingFile);

  std::string out;
  auto* transform = app.add_subcommand("transform", "Translate an object-oriented program to a recursive one");
  transform->add_option("file", file)->required()->check(CLI::ExistingFile);
  transform->add_option("-o,--output", out, "Output file");

  std::string post;
  bool symbolic = false;
  auto* wp = app.add_subcommand("wp", "Weakest precondition of a program's main statement");
  wp->add_option("file", file)->required()->check(CLI::ExistingFile);
  wp->add_option("--post", post, "Postcondition")->required();
  wp->add_flag("--symbolic", symbolic, "Compute the assertion instead of the state set");

  std::string system;
  std::string program;
  auto* proof = app.add_subcommand("check-proof", "Check a derivation in a proof system");
  proof->add_option("file", file)->required()->check(CLI::ExistingFile);
  proof->add_option("--system", system, "PK, SPK, PO, PO+, SPO, SPO+, PR, SPR, PR+ or SPR+")->required();
  proof->add_option("--program", program, "Program supplying the declarations")->check(CLI::ExistingFile);

  std::string suite_name;
  std::size_t cases = 1000;
  auto* suite = app.add_subcommand("suite", "Run a named property suite, or all");
  suite->add_option("name", suite_name)->required();
  suite->add_option("--cases", cases, "Random cases per family")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kUsage;
  }

  try {
    if (*parse) return cmd_parse(file, kind);
    if (*run) return cmd_run(g, file, state_file);
    if (*transform) return cmd_transform(file, out);
    if (*wp) return cmd_wp(g, file, post, symbolic);
    if (*proof) return cmd_check_proof(g, file, system, program);
    if (*suite) return cmd_suite(g, suite_name, cases);
  } catch (const CLI::ValidationError& e) {
    std::cerr << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kRejected;
  }
  return kUsage;
}
