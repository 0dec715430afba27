#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <iterator>
#include <limits>
#include <stdexcept>
#include <string>

namespace ideals {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Integer binomial(long long n, long long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  Integer r = 1;
  for (long long i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;
  }
  return r;
}

inline Integer floor_of(const Rational& q) {
  Integer num = boost::multiprecision::numerator(q);
  const Integer den = boost::multiprecision::denominator(q);
  Integer quot = num / den;
  if (num < 0 && quot * den != num) quot -= 1;
  return quot;
}

inline std::string to_string(const Rational& q) {
  const auto den = boost::multiprecision::denominator(q);
  if (den == 1) return boost::multiprecision::numerator(q).str();
  return boost::multiprecision::numerator(q).str() + "/" + den.str();
}

inline Rational parse_rational(const std::string& s) {
  const auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rational(Integer(s));
    Integer den(s.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator");
    return Rational(Integer(s.substr(0, slash)), den);
  } catch (const std::exception&) {
    throw std::invalid_argument("not a rational: '" + s + "'");
  }
}

/// Closed interval of long doubles, widened outward after every operation.
///
/// Each arithmetic result is pushed one ulp outward in both directions and
/// libm transcendental results two ulps, which covers round-to-nearest error
/// for the basic operations and glibc's sub-ulp accuracy for logl.
struct Interval {
  long double lo = 0;
  long double hi = 0;

  static constexpr long double kInf = std::numeric_limits<long double>::infinity();

  static Interval widen(long double lo, long double hi, int ulps = 1) {
    for (int i = 0; i < ulps; ++i) {
      lo = std::nextafter(lo, -kInf);
      hi = std::nextafter(hi, kInf);
    }
    return {lo, hi};
  }

  static Interval exact(long double v) { return {v, v}; }
  static Interval of(long long v) {
    const auto d = static_cast<long double>(v);
    if (static_cast<long long>(d) == v) return exact(d);
    return widen(d, d);
  }
  static Interval of(const Rational& q) {
    const auto d = q.convert_to<long double>();
    return widen(d, d, 2);
  }
  static Interval parse(const char* decimal) {
    const long double d = std::strtold(decimal, nullptr);
    return widen(d, d);
  }

  friend Interval operator+(Interval a, Interval b) { return widen(a.lo + b.lo, a.hi + b.hi); }
  friend Interval operator-(Interval a, Interval b) { return widen(a.lo - b.hi, a.hi - b.lo); }
  friend Interval operator*(Interval a, Interval b) {
    const long double c[] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
    return widen(*std::min_element(std::begin(c), std::end(c)),
                 *std::max_element(std::begin(c), std::end(c)));
  }
  friend Interval operator/(Interval a, Interval b) {
    if (b.lo <= 0 && b.hi >= 0) throw std::domain_error("interval division by zero");
    const long double c[] = {a.lo / b.lo, a.lo / b.hi, a.hi / b.lo, a.hi / b.hi};
    return widen(*std::min_element(std::begin(c), std::end(c)),
                 *std::max_element(std::begin(c), std::end(c)));
  }

  long double mid() const { return (lo + hi) / 2; }

  /// Certainly below `o`.
  bool less(const Interval& o) const { return hi < o.lo; }
  bool less_eq(const Interval& o) const { return hi <= o.lo; }
};

inline Interval log(Interval x) {
  if (x.lo <= 0) throw std::domain_error("interval log of nonpositive value");
  return Interval::widen(std::log(x.lo), std::log(x.hi), 2);
}

inline Interval log2(Interval x) {
  if (x.lo <= 0) throw std::domain_error("interval log2 of nonpositive value");
  return Interval::widen(std::log2(x.lo), std::log2(x.hi), 2);
}

}  // namespace ideals
