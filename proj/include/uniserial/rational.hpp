#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>
#include <string>

namespace uniserial {

/// Exact rational scalar. Always held as a reduced fraction with positive
/// denominator (the backing type maintains that canonical form).
using Rational = boost::multiprecision::cpp_rational;
using Integer = boost::multiprecision::cpp_int;

enum class ErrorKind {
  syntax,
  composition,
  precondition,
  unsupported,
  evaluation,
  invariant,
  io,
};

struct Error : std::runtime_error {
  ErrorKind kind;
  Error(ErrorKind k, const std::string& msg) : std::runtime_error(msg), kind(k) {}
};

/// Parses "3", "-5/2", "0". Denominator must be nonzero.
inline Rational parse_rational(const std::string& text) {
  try {
    if (text.empty()) throw std::runtime_error("empty");
    Rational r(text);
    return r;
  } catch (const std::exception&) {
    throw Error(ErrorKind::syntax, "malformed rational '" + text + "'");
  }
}

inline std::string to_string(const Rational& r) { return r.str(); }

}  // namespace uniserial
