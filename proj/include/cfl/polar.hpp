#pragma once

#include <Eigen/Core>

#include <cmath>
#include <vector>

#include "cfl/form.hpp"

namespace cfl {

// Finite trigonometric polynomial sum_j (cos_c[j] cos(j t) + sin_c[j] sin(j t)).
template <class S>
struct TrigPoly {
  std::vector<S> cos_c;  // index 0..max frequency
  std::vector<S> sin_c;  // sin_c[0] is identically zero

  int max_frequency() const { return static_cast<int>(cos_c.size()) - 1; }
};

// Angular profile of a bivariate form: p(r cos t, r sin t) = r^k f(t).
template <class S>
struct PolarProfile {
  int degree = 0;
  TrigPoly<S> f;
};

// Exact conversion to the cos/sin basis through z = e^{it}:
// cos^a t sin^b t = 2^{-(a+b)} (z + z^-1)^a ((z - z^-1)/i)^b. All divisions
// are by powers of two, so the expansion is exact in both scalar modes.
template <class S>
PolarProfile<S> polar_profile(const Form<S>& p) {
  if (p.vars() != 2) throw Error(Errc::NotBivariate, "polar profile needs a bivariate form");
  using C = complex_of_t<S>;
  const int k = p.degree();
  std::vector<C> gamma(2 * k + 1);  // coefficient of z^m at index m + k
  for (const auto& [e, c] : p.terms()) {
    const int a = e[0], b = e[1];
    // (1/i)^b = (-i)^b, period 4
    C unit;
    switch (b % 4) {
      case 0: unit = C(S(1)); break;
      case 1: unit = C(S(0), S(-1)); break;
      case 2: unit = C(S(-1)); break;
      default: unit = C(S(0), S(1)); break;
    }
    const C base = div_int(scalar_cast<C>(c) * unit, 1LL << k);
    for (int i = 0; i <= a; ++i)
      for (int j = 0; j <= b; ++j) {
        const int m = 2 * (i + j) - k;
        const long long w = binomial(a, i) * binomial(b, j) * (((b - j) % 2) ? -1 : 1);
        gamma[m + k] += mul_int(base, w);
      }
  }
  PolarProfile<S> out;
  out.degree = k;
  out.f.cos_c.assign(k + 1, S(0));
  out.f.sin_c.assign(k + 1, S(0));
  out.f.cos_c[0] = real_part(gamma[k]);
  for (int j = 1; j <= k; ++j) {
    out.f.cos_c[j] = mul_int(real_part(gamma[k + j]), 2);
    out.f.sin_c[j] = mul_int(imag_part(gamma[k + j]), -2);
  }
  return out;
}

template <class S>
TrigPoly<S> derivative(const TrigPoly<S>& f) {
  const int m = f.max_frequency();
  TrigPoly<S> out;
  out.cos_c.assign(m + 1, S(0));
  out.sin_c.assign(m + 1, S(0));
  for (int j = 1; j <= m; ++j) {
    out.cos_c[j] = mul_int(f.sin_c[j], j);
    out.sin_c[j] = mul_int(f.cos_c[j], -j);
  }
  return out;
}

inline double evaluate(const TrigPoly<double>& f, double t) {
  double acc = 0;
  for (int j = 0; j <= f.max_frequency(); ++j)
    acc += f.cos_c[j] * std::cos(j * t) + f.sin_c[j] * std::sin(j * t);
  return acc;
}

template <class S>
PolarProfile<double> to_float_profile(const PolarProfile<S>& pp) {
  PolarProfile<double> out;
  out.degree = pp.degree;
  out.f.cos_c.reserve(pp.f.cos_c.size());
  out.f.sin_c.reserve(pp.f.sin_c.size());
  for (const auto& v : pp.f.cos_c) out.f.cos_c.push_back(scalar_cast<double>(v));
  for (const auto& v : pp.f.sin_c) out.f.sin_c.push_back(scalar_cast<double>(v));
  return out;
}

// Hessian of p = r^k f(t) at the point with polar coordinates (r, t):
//   r^{k-2} [ k(k-1) f e_r e_r' + (k-1) f' (e_r e_t' + e_t e_r') + (k f + f'') e_t e_t' ].
inline Eigen::Matrix2d polar_hessian(const PolarProfile<double>& pp, double r, double t) {
  const int k = pp.degree;
  const TrigPoly<double> f1 = derivative(pp.f);
  const TrigPoly<double> f2 = derivative(f1);
  const double f = evaluate(pp.f, t);
  const double fp = evaluate(f1, t);
  const double fpp = evaluate(f2, t);
  const Eigen::Vector2d er(std::cos(t), std::sin(t));
  const Eigen::Vector2d et(-std::sin(t), std::cos(t));
  const double scale = std::pow(r, k - 2);
  Eigen::Matrix2d H = k * (k - 1) * f * (er * er.transpose()) +
                      (k - 1) * fp * (er * et.transpose() + et * er.transpose()) +
                      (k * f + fpp) * (et * et.transpose());
  return scale * H;
}

}  // namespace cfl
