#pragma once

#include <vector>

#include "cfl/errors.hpp"
#include "cfl/scalars.hpp"

namespace cfl {

// Exact small-range combinatorics. Degrees in this library stay below ~20,
// so 64-bit results suffice for the integer entry points; the Rational
// versions back symbolic computations of arbitrary composition.

inline long long binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  __int128 acc = 1;
  for (int i = 1; i <= k; ++i) {
    acc = acc * (n - k + i) / i;  // exact: prefix products of C(m, i)
  }
  if (acc > __int128(9223372036854775807LL))
    throw Error(Errc::BadInput, "binomial overflows 64 bits");
  return static_cast<long long>(acc);
}

inline Rational factorial_q(int n) {
  Rational acc = 1;
  for (int i = 2; i <= n; ++i) acc *= i;
  return acc;
}

// Multinomial coefficient k! / (i_1! ... i_n!) for a composition of k.
inline Rational multinomial_q(int k, const std::vector<int>& parts) {
  Rational acc = factorial_q(k);
  int sum = 0;
  for (int p : parts) {
    acc /= factorial_q(p);
    sum += p;
  }
  if (sum != k) throw Error(Errc::BadExponent, "composition does not sum to its degree");
  return acc;
}

}  // namespace cfl
