#ifndef WEYLCALC_RATIONAL_HPP
#define WEYLCALC_RATIONAL_HPP

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>

namespace weylcalc {

/// Exact rational number. GMP keeps every value canonical: the denominator
/// is positive and coprime to the numerator after each arithmetic operation.
using Rational = mpq_class;

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }

/// "p/q", or "p" when the denominator is 1.
inline std::string to_string(const Rational& q) { return q.get_str(); }

inline Rational parse_rational(std::string_view text) {
  Rational q;
  if (text.empty() || q.set_str(std::string(text), 10) != 0) {
    throw std::invalid_argument("malformed rational: '" + std::string(text) + "'");
  }
  if (sgn(q.get_den()) == 0) {
    throw std::invalid_argument("zero denominator: '" + std::string(text) + "'");
  }
  q.canonicalize();
  return q;
}

}  // namespace weylcalc

#endif  // WEYLCALC_RATIONAL_HPP
