#include "oov/explore.hpp"

#include "oov/assertions.hpp"

namespace oov {

std::vector<Value> cell_domain(const Location& l, const ExploreOptions& opts) {
  bool is_this = !l.owner && l.var.name == kThis;
  return opts.universe.domain(l.var.type.value, !(is_this && opts.this_nonnull));
}

namespace {

struct Search {
  const std::function<bool(const State&)>& visit;
  const ExploreOptions& opts;
  ExploreResult result;

  /// Returns false when the search must end.
  bool go(State& s) {
    if (result.leaves >= opts.leaf_cap) {
      result.complete = false;
      return false;
    }
    std::optional<Location> need;
    try {
      ++result.leaves;
      if (!visit(s)) {
        result.stopped = true;
        return false;
      }
      return true;
    } catch (const NeedValue& nv) {
      --result.leaves;
      need = nv.location();
    }
    for (const auto& v : cell_domain(*need, opts)) {
      s.write(*need, v);
      bool more = go(s);
      s.erase(*need);
      if (!more) return false;
    }
    return true;
  }
};

}  // namespace

ExploreResult explore(const std::function<bool(const State&)>& visit, const ExploreOptions& opts, const State& seed) {
  Search search{visit, opts, {}};
  State s = seed;
  search.go(s);
  return search.result;
}

std::string to_string(Validity v) {
  switch (v) {
    case Validity::Valid: return "VALID";
    case Validity::Counterexample: return "COUNTEREXAMPLE";
    case Validity::Unknown: return "UNKNOWN";
  }
  return "?";
}

ValidityResult check_valid(const Expr& p, const ExploreOptions& opts) {
  ValidityResult out;
  auto r = explore(
      [&](const State& s) {
        if (eval_assertion(s, p, opts.universe)) return true;
        out.witness = s.to_strict();
        return false;
      },
      opts);
  if (r.stopped) {
    out.status = Validity::Counterexample;
  } else {
    out.status = r.complete ? Validity::Valid : Validity::Unknown;
  }
  return out;
}

}  // namespace oov
