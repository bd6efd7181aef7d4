#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "oov/syntax.hpp"
#include "oov/value.hpp"

namespace oov {

/// Finite evaluation bounds: an integer range and a pool of object
/// identities. `null` is always an additional object value.
struct Universe {
  Int lo = -8;
  Int hi = 8;
  std::vector<std::uint64_t> oids{1, 2, 3, 4};

  static Universe make(Int lo, Int hi, std::size_t objects);

  /// Values of a basic type in this universe, in a fixed order. Objects
  /// list null first unless `with_null` is false.
  std::vector<Value> domain(BaseType t, bool with_null = true) const;

  /// Throws std::invalid_argument when lo > hi, the pool is empty or has
  /// duplicates.
  void validate() const;
};

std::string to_string(const Universe& u);

}  // namespace oov
