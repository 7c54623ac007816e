#pragma once

#include <numbers>

#include "cfl/form.hpp"

namespace cfl {

// Integral of x^a y^b over the closed unit disk, divided by pi. Zero unless
// both exponents are even; for a = 2u, b = 2v the value is
//   (2u)! (2v)! / (4^{u+v} u! v! (u+v+1)!).
inline Rational disk_monomial_integral_pi(int a, int b) {
  if (a < 0 || b < 0) throw Error(Errc::BadExponent, "negative exponent");
  if (a % 2 != 0 || b % 2 != 0) return Rational(0);
  const int u = a / 2, v = b / 2;
  Rational num = factorial_q(2 * u) * factorial_q(2 * v);
  Rational den = factorial_q(u) * factorial_q(v) * factorial_q(u + v + 1);
  for (int i = 0; i < u + v; ++i) den *= 4;
  return num / den;
}

// Integral of a bivariate form over the unit disk, in units of pi (exact in
// exact mode).
template <class S>
S disk_integral_pi_units(const Form<S>& p) {
  if (p.vars() != 2) throw Error(Errc::NotBivariate, "disk integral needs a bivariate form");
  S acc(0);
  for (const auto& [e, c] : p.terms()) {
    const Rational m = disk_monomial_integral_pi(e[0], e[1]);
    if (m == 0) continue;
    if constexpr (is_exact_scalar_v<S>)
      acc += c * m;
    else
      acc += c * scalar_cast<double>(m);
  }
  return acc;
}

// Integral of a bivariate form over the unit disk.
inline double disk_average(const Form<double>& p) {
  return disk_integral_pi_units(p) * std::numbers::pi;
}

}  // namespace cfl
