#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace oov {

using Int = boost::multiprecision::cpp_int;

/// Reference to an object: either the void reference or an object identity.
/// `null` is its own constructor, never aliased with any numeric identity.
class ObjRef {
 public:
  ObjRef() = default;
  static ObjRef null() { return ObjRef(); }
  static ObjRef oid(std::uint64_t id) { return ObjRef(id); }

  bool is_null() const { return !id_.has_value(); }
  std::uint64_t id() const { return *id_; }

  friend bool operator==(const ObjRef&, const ObjRef&) = default;
  friend bool operator<(const ObjRef& a, const ObjRef& b) {
    // null sorts first
    if (a.is_null() || b.is_null()) return a.is_null() && !b.is_null();
    return *a.id_ < *b.id_;
  }

 private:
  explicit ObjRef(std::uint64_t id) : id_(id) {}
  std::optional<std::uint64_t> id_;
};

struct BoolV {
  bool value = false;
  friend bool operator==(const BoolV&, const BoolV&) = default;
  friend bool operator<(const BoolV& a, const BoolV& b) { return a.value < b.value; }
};

/// A runtime value of a basic type.
class Value {
 public:
  Value() : v_(Int(0)) {}
  static Value integer(Int i) { return Value(Rep(std::move(i))); }
  static Value boolean(bool b) { return Value(Rep(BoolV{b})); }
  static Value object(ObjRef o) { return Value(Rep(o)); }

  bool is_int() const { return std::holds_alternative<Int>(v_); }
  bool is_bool() const { return std::holds_alternative<BoolV>(v_); }
  bool is_object() const { return std::holds_alternative<ObjRef>(v_); }

  const Int& as_int() const { return std::get<Int>(v_); }
  bool as_bool() const { return std::get<BoolV>(v_).value; }
  ObjRef as_object() const { return std::get<ObjRef>(v_); }

  friend bool operator==(const Value& a, const Value& b) { return a.v_ == b.v_; }
  friend bool operator!=(const Value& a, const Value& b) { return !(a == b); }
  friend bool operator<(const Value& a, const Value& b) { return a.v_ < b.v_; }

 private:
  using Rep = std::variant<Int, BoolV, ObjRef>;
  explicit Value(Rep r) : v_(std::move(r)) {}
  Rep v_;
};

/// Renders `5`, `true`, `null`, `o3`.
std::string to_string(const Value& v);
std::string to_string(ObjRef o);
std::ostream& operator<<(std::ostream& os, const Value& v);

}  // namespace oov
