#pragma once

// Shared helpers for the test suites: seeded random inputs and independent
// oracles (finite differences, quadrature, direct binomial expansions) used
// to cross-check the library's symbolic paths.

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "cfl/combinatorics.hpp"
#include "cfl/form.hpp"
#include "cfl/polar.hpp"

namespace testutil {

using cfl::Exponents;
using cfl::Form;
using cfl::Rational;

inline Rational random_rational(std::mt19937_64& gen) {
  std::uniform_int_distribution<int> num(-9, 9);
  std::uniform_int_distribution<int> den(1, 4);
  return Rational(num(gen), den(gen));
}

inline Form<Rational> random_rational_form(std::mt19937_64& gen, int n, int k, int terms) {
  const auto basis = cfl::monomials_of_degree(n, k);
  std::uniform_int_distribution<size_t> pick(0, basis.size() - 1);
  Form<Rational> out(n, k);
  for (int t = 0; t < terms; ++t) out.accumulate(basis[pick(gen)], random_rational(gen));
  return out;
}

inline Form<double> random_double_form(std::mt19937_64& gen, int n, int k, int terms) {
  const auto basis = cfl::monomials_of_degree(n, k);
  std::uniform_int_distribution<size_t> pick(0, basis.size() - 1);
  std::uniform_real_distribution<double> coeff(-1.0, 1.0);
  Form<double> out(n, k);
  for (int t = 0; t < terms; ++t) out.accumulate(basis[pick(gen)], coeff(gen));
  return out;
}

inline Eigen::Matrix<Rational, Eigen::Dynamic, 1> random_rational_vector(std::mt19937_64& gen,
                                                                         int n) {
  Eigen::Matrix<Rational, Eigen::Dynamic, 1> v(n);
  for (int i = 0; i < n; ++i) v(i) = random_rational(gen);
  return v;
}

inline Eigen::VectorXd random_unit_vector(std::mt19937_64& gen, int n) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::VectorXd v(n);
  do {
    for (int i = 0; i < n; ++i) v(i) = normal(gen);
  } while (v.norm() < 1e-3);
  return v / v.norm();
}

// Central finite differences; independent of the symbolic derivative code.
inline Eigen::VectorXd fd_gradient(const Form<double>& p, const Eigen::VectorXd& x, double h) {
  const int n = p.vars();
  Eigen::VectorXd g(n);
  for (int i = 0; i < n; ++i) {
    Eigen::VectorXd xp = x, xm = x;
    xp(i) += h;
    xm(i) -= h;
    g(i) = (cfl::evaluate(p, xp) - cfl::evaluate(p, xm)) / (2 * h);
  }
  return g;
}

inline Eigen::MatrixXd fd_hessian(const Form<double>& p, const Eigen::VectorXd& x, double h) {
  const int n = p.vars();
  Eigen::MatrixXd H(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Eigen::VectorXd xpp = x, xpm = x, xmp = x, xmm = x;
      xpp(i) += h;
      xpp(j) += h;
      xpm(i) += h;
      xpm(j) -= h;
      xmp(i) -= h;
      xmp(j) += h;
      xmm(i) -= h;
      xmm(j) -= h;
      H(i, j) = (cfl::evaluate(p, xpp) - cfl::evaluate(p, xpm) - cfl::evaluate(p, xmp) +
                 cfl::evaluate(p, xmm)) /
                (4 * h * h);
    }
  return H;
}

// Gauss-Legendre nodes/weights on [0, 1] via Newton iteration.
inline void gauss_legendre_01(int m, std::vector<double>& nodes, std::vector<double>& weights) {
  nodes.assign(m, 0.0);
  weights.assign(m, 0.0);
  for (int i = 0; i < m; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (m + 0.5));
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int j = 2; j <= m; ++j) {
        const double p2 = ((2 * j - 1) * x * p1 - (j - 1) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      const double dp = m * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) {
        p0 = 1.0;
        double q1 = x;
        for (int j = 2; j <= m; ++j) {
          const double q2 = ((2 * j - 1) * x * q1 - (j - 1) * p0) / j;
          p0 = q1;
          q1 = q2;
        }
        weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
        break;
      }
    }
    nodes[i] = 0.5 * (x + 1.0);
    weights[i] *= 0.5;
  }
}

// Quadrature disk integral: exact for polynomial integrands of the sizes
// used here (radial Gauss-Legendre x angular trapezoid).
inline double quad_disk_integral(const Form<double>& p) {
  const int k = p.degree();
  std::vector<double> rn, rw;
  gauss_legendre_01(k / 2 + 4, rn, rw);
  const int na = 2 * k + 8;
  double acc = 0;
  for (size_t i = 0; i < rn.size(); ++i) {
    const double r = rn[i];
    double ang = 0;
    for (int j = 0; j < na; ++j) {
      const double t = 2 * std::numbers::pi * j / na;
      ang += cfl::evaluate(p, Eigen::Vector2d(r * std::cos(t), r * std::sin(t)));
    }
    acc += rw[i] * r * ang * (2 * std::numbers::pi / na);
  }
  return acc;
}

// Re (x + i y)^{2d} by direct binomial expansion.
inline Form<Rational> re_z_pow(int d) {
  Form<Rational> out(2, 2 * d);
  for (int j = 0; j <= d; ++j) {
    const long long c = cfl::binomial(2 * d, 2 * j) * ((j % 2) ? -1 : 1);
    out.accumulate({2 * d - 2 * j, 2 * j}, Rational(c));
  }
  return out;
}

}  // namespace testutil
