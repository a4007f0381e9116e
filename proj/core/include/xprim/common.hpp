#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace xprim {

/// Index of a point in a permutation domain {0, ..., n-1}.
using Point = std::uint32_t;

using BigInt = mpz_class;
using Rational = mpq_class;

/// Malformed or inconsistent input: bad files, wrong degrees, non-subgroups.
class InputError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class DegreeMismatch : public InputError {
public:
  using InputError::InputError;
};

/// A configured resource cap (degree, index, enumeration size) was exceeded.
class ResourceError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

inline std::string to_string(const BigInt& v) { return v.get_str(); }

inline std::string to_string(const Rational& v) {
  if (v.get_den() == 1) return v.get_num().get_str();
  return v.get_num().get_str() + "/" + v.get_den().get_str();
}

}  // namespace xprim
