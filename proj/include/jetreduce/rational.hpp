#pragma once

#include <gmpxx.h>

#include <string>

namespace jetreduce {

using Rational = mpq_class;

inline Rational make_rational(long num, long den = 1) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline std::string rational_text(const Rational& r) { return r.get_str(); }

inline double rational_double(const Rational& r) { return r.get_d(); }

inline bool is_integer(const Rational& r) { return r.get_den() == 1; }

}  // namespace jetreduce
