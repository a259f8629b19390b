#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace gkz {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

using IntVec = std::vector<Int>;
using RatVec = std::vector<Rat>;

// All contract violations surface as GkzError with a machine-readable kind
// and, where the contract promises one, a printable certificate.
struct GkzError : std::runtime_error {
  std::string kind;
  std::string certificate;
  GkzError(std::string k, const std::string& msg, std::string cert = "")
      : std::runtime_error(k + ": " + msg), kind(std::move(k)), certificate(std::move(cert)) {}
};

inline Int iabs(const Int& x) { return x < 0 ? Int(-x) : x; }

inline Int igcd(Int a, Int b) {
  a = iabs(a);
  b = iabs(b);
  while (b != 0) {
    Int t = a % b;
    a = b;
    b = t;
  }
  return a;
}

inline Int num(const Rat& q) { return boost::multiprecision::numerator(q); }
inline Int den(const Rat& q) { return boost::multiprecision::denominator(q); }

// floor of a rational
inline Int rfloor(const Rat& q) {
  Int n = num(q), d = den(q);
  Int t = n / d;
  if (n % d != 0 && n < 0) --t;
  return t;
}
inline Int rceil(const Rat& q) { return -rfloor(-q); }
inline bool is_integer(const Rat& q) { return den(q) == 1; }

// fractional part in [0,1)
inline Rat frac(const Rat& q) { return q - Rat(rfloor(q)); }

inline std::string to_string(const Int& x) { return x.str(); }
inline std::string to_string(const Rat& q) {
  if (den(q) == 1) return num(q).str();
  return num(q).str() + "/" + den(q).str();
}

template <class V>
std::string vec_string(const V& v) {
  std::string s = "(";
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += to_string(v[i]);
  }
  return s + ")";
}

// scale a rational vector to a primitive integer vector (positive gcd)
inline IntVec primitive(const RatVec& v) {
  Int l = 1;
  for (const auto& q : v) l = l / igcd(l, den(q)) * den(q);
  IntVec w(v.size());
  Int g = 0;
  for (size_t i = 0; i < v.size(); ++i) {
    w[i] = num(v[i]) * (l / den(v[i]));
    g = igcd(g, w[i]);
  }
  if (g > 1)
    for (auto& x : w) x /= g;
  return w;
}

inline IntVec primitive(const IntVec& v) {
  Int g = 0;
  for (const auto& x : v) g = igcd(g, x);
  IntVec w = v;
  if (g > 1)
    for (auto& x : w) x /= g;
  return w;
}

template <class T>
T dot(const std::vector<T>& a, const std::vector<T>& b) {
  T s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline Rat dot_ri(const RatVec& a, const IntVec& b) {
  Rat s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * Rat(b[i]);
  return s;
}

}  // namespace gkz
