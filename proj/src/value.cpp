#include "oov/value.hpp"

namespace oov {

std::string to_string(ObjRef o) { return o.is_null() ? "null" : "o" + std::to_string(o.id()); }

std::string to_string(const Value& v) {
  if (v.is_int()) return v.as_int().str();
  if (v.is_bool()) return v.as_bool() ? "true" : "false";
  return to_string(v.as_object());
}

std::ostream& operator<<(std::ostream& os, const Value& v) { return os << to_string(v); }

}  // namespace oov
