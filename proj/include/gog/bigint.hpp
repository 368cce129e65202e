#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace gog {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline int sign(const BigInt& x) { return x.sign(); }

inline BigInt abs(const BigInt& x) { return x < 0 ? BigInt(-x) : x; }

inline Rational abs(const Rational& q) { return q < 0 ? Rational(-q) : q; }

inline BigInt gcd(const BigInt& a, const BigInt& b) {
  return boost::multiprecision::gcd(abs(a), abs(b));
}

inline BigInt lcm(const BigInt& a, const BigInt& b) {
  if (a == 0 || b == 0) return 0;
  return abs(a) / gcd(a, b) * abs(b);
}

// n/d with d != 0; the denominator sign is moved to the numerator first
inline Rational ratio(const BigInt& n, const BigInt& d) {
  return d < 0 ? Rational(BigInt(-n), BigInt(-d)) : Rational(n, d);
}

inline BigInt numerator(const Rational& q) {
  return boost::multiprecision::numerator(q);
}

inline BigInt denominator(const Rational& q) {
  return boost::multiprecision::denominator(q);
}

inline std::string to_string(const BigInt& x) { return x.str(); }

// "p/q", or "p" when the denominator is 1
inline std::string to_string(const Rational& q) {
  if (denominator(q) == 1) return numerator(q).str();
  return numerator(q).str() + "/" + denominator(q).str();
}

// exact q == 0 check happens at the call site; r^n for signed n
inline Rational pow(const Rational& q, long n) {
  Rational base = n < 0 ? Rational(1) / q : q;
  unsigned long e = n < 0 ? static_cast<unsigned long>(-n) : static_cast<unsigned long>(n);
  Rational out = 1;
  while (e) {
    if (e & 1) out *= base;
    base *= base;
    e >>= 1;
  }
  return out;
}

}  // namespace gog
