#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/rational.hpp>

#include <cmath>
#include <cstdint>
#include <string>

namespace sigmaq {

/// Arbitrary-precision rational scalar for the exact solver pipeline.
using Rat = boost::rational<boost::multiprecision::cpp_int>;

/// Uniform access to the handful of scalar operations the solver core needs,
/// so the same templates run in double and in exact-rational arithmetic.
template <class T>
struct scalar_traits;

template <>
struct scalar_traits<double> {
  static constexpr bool is_exact = false;
  static double zero() { return 0.0; }
  static double one() { return 1.0; }
  static double from_int(long long v) { return static_cast<double>(v); }
  static double abs(double v) { return std::fabs(v); }
  static double to_double(double v) { return v; }
  // pivot threshold for elimination and simplex ratio tests
  static constexpr double pivot_tol = 1e-9;
};

template <>
struct scalar_traits<Rat> {
  static constexpr bool is_exact = true;
  static Rat zero() { return Rat(0); }
  static Rat one() { return Rat(1); }
  static Rat from_int(long long v) { return Rat(boost::multiprecision::cpp_int(v)); }
  static Rat abs(const Rat& v) { return v < Rat(0) ? -v : v; }
  static double to_double(const Rat& v) { return boost::rational_cast<double>(v); }
  static constexpr double pivot_tol = 0.0;
};

inline std::string to_string(const Rat& v) {
  std::string s = v.numerator().str();
  if (v.denominator() != 1) s += "/" + v.denominator().str();
  return s;
}

/// Parses "num/den" or a plain integer string.
inline Rat rat_from_string(const std::string& s) {
  auto slash = s.find('/');
  using boost::multiprecision::cpp_int;
  if (slash == std::string::npos) return Rat(cpp_int(s));
  return Rat(cpp_int(s.substr(0, slash)), cpp_int(s.substr(slash + 1)));
}

}  // namespace sigmaq
