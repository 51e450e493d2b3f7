#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace gforge {

using Int = boost::multiprecision::cpp_int;

// Floor division, b > 0.
inline Int floor_div(const Int& a, const Int& b) {
  Int q = a / b;
  if (a % b != 0 && a < 0) --q;
  return q;
}

// Euclidean remainder, b > 0, result in [0, b).
inline Int euclid_mod(const Int& a, const Int& b) {
  Int r = a % b;
  if (r < 0) r += b;
  return r;
}

inline long long to_ll(const Int& v) { return v.convert_to<long long>(); }

inline int sign_of(const Int& v) { return v > 0 ? 1 : (v < 0 ? -1 : 0); }

}  // namespace gforge
