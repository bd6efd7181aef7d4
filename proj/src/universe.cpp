#include "oov/universe.hpp"

#include <set>
#include <stdexcept>

namespace oov {

Universe Universe::make(Int lo, Int hi, std::size_t objects) {
  Universe u;
  u.lo = std::move(lo);
  u.hi = std::move(hi);
  u.oids.clear();
  for (std::size_t i = 1; i <= objects; ++i) u.oids.push_back(i);
  u.validate();
  return u;
}

std::vector<Value> Universe::domain(BaseType t, bool with_null) const {
  std::vector<Value> out;
  switch (t) {
    case BaseType::Boolean:
      out = {Value::boolean(false), Value::boolean(true)};
      break;
    case BaseType::Integer:
    case BaseType::Nat: {
      Int start = lo;
      if (t == BaseType::Nat && start < 0) start = 0;
      for (Int i = start; i <= hi; ++i) out.push_back(Value::integer(i));
      break;
    }
    case BaseType::Object:
      if (with_null) out.push_back(Value::object(ObjRef::null()));
      for (auto id : oids) out.push_back(Value::object(ObjRef::oid(id)));
      break;
  }
  return out;
}

void Universe::validate() const {
  if (lo > hi) throw std::invalid_argument("empty integer range " + lo.str() + ".." + hi.str());
  if (oids.empty()) throw std::invalid_argument("object pool is empty");
  if (std::set<std::uint64_t>(oids.begin(), oids.end()).size() != oids.size()) {
    throw std::invalid_argument("object pool has duplicates");
  }
}

std::string to_string(const Universe& u) {
  return "ints " + u.lo.str() + ".." + u.hi.str() + ", objects " + std::to_string(u.oids.size());
}

}  // namespace oov
