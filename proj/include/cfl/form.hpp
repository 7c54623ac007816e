#pragma once

#include <Eigen/Core>

#include <map>
#include <ostream>
#include <utility>
#include <vector>

#include "cfl/combinatorics.hpp"
#include "cfl/errors.hpp"
#include "cfl/scalars.hpp"

namespace cfl {

// Exponent vector of a monomial; length = number of variables.
using Exponents = std::vector<int>;

inline long long factorial_ll(int n) {
  long long acc = 1;
  for (int i = 2; i <= n; ++i) acc *= i;
  return acc;
}

namespace detail {
inline void enumerate_monomials(int n, int d, Exponents& cur, std::vector<Exponents>& out) {
  if (n == 1) {
    cur.push_back(d);
    out.push_back(cur);
    cur.pop_back();
    return;
  }
  for (int e = d; e >= 0; --e) {
    cur.push_back(e);
    enumerate_monomials(n - 1, d - e, cur, out);
    cur.pop_back();
  }
}
}  // namespace detail

// All degree-d monomials in n variables, in descending lexicographic order
// (x1^d first). This order is the canonical one throughout the library.
inline std::vector<Exponents> monomials_of_degree(int n, int d) {
  if (n < 1 || d < 0) throw Error(Errc::BadInput, "need n >= 1 and d >= 0");
  std::vector<Exponents> out;
  Exponents cur;
  detail::enumerate_monomials(n, d, cur, out);
  return out;
}

// A homogeneous form of fixed degree in n variables with sparse coefficient
// storage. Scalar is double (float mode) or Rational (exact mode); complex
// variants appear as intermediates of polarization. Instances are immutable
// once a builder returns them; all operations are free functions producing
// new values.
template <class Scalar>
class Form {
 public:
  using TermMap = std::map<Exponents, Scalar, std::greater<Exponents>>;

  Form() = default;
  Form(int n, int degree) : n_(n), degree_(degree) {
    if (n < 1 || degree < 0) throw Error(Errc::BadInput, "need n >= 1 and degree >= 0");
  }

  static Form from_terms(int n, int degree,
                         const std::vector<std::pair<Exponents, Scalar>>& terms) {
    Form f(n, degree);
    for (const auto& [e, c] : terms) {
      f.require_valid_exponents(e);
      validate_finite(c);
      f.accumulate(e, c);
    }
    return f;
  }

  int vars() const { return n_; }
  int degree() const { return degree_; }
  const TermMap& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

  Scalar coeff(const Exponents& e) const {
    require_valid_exponents(e);
    auto it = terms_.find(e);
    return it == terms_.end() ? Scalar(0) : it->second;
  }

  // Builder-side accumulation; keeps the term map free of exact zeros.
  void accumulate(const Exponents& e, const Scalar& c) {
    if (is_zero(c)) return;
    auto [it, fresh] = terms_.try_emplace(e, c);
    if (!fresh) {
      it->second += c;
      if (is_zero(it->second)) terms_.erase(it);
    }
  }

  friend bool operator==(const Form& a, const Form& b) {
    return a.n_ == b.n_ && a.degree_ == b.degree_ && a.terms_ == b.terms_;
  }
  friend bool operator!=(const Form& a, const Form& b) { return !(a == b); }

 private:
  void require_valid_exponents(const Exponents& e) const {
    if (static_cast<int>(e.size()) != n_)
      throw Error(Errc::BadExponent, "exponent vector length != variable count");
    int sum = 0;
    for (int v : e) {
      if (v < 0) throw Error(Errc::BadExponent, "negative exponent");
      sum += v;
    }
    if (sum != degree_) throw Error(Errc::BadExponent, "exponents do not sum to the degree");
  }

  int n_ = 1;
  int degree_ = 0;
  TermMap terms_;
};

template <class S>
Form<S> make_form(int n, int degree, const std::vector<std::pair<Exponents, S>>& terms) {
  return Form<S>::from_terms(n, degree, terms);
}

// Single-term convenience builder.
template <class S>
Form<S> monomial(int n, const Exponents& e, const S& c) {
  int d = 0;
  for (int v : e) d += v;
  return Form<S>::from_terms(n, d, {{e, c}});
}

template <class P, class S>
Form<P> promote_form(const Form<S>& p) {
  Form<P> out(p.vars(), p.degree());
  for (const auto& [e, c] : p.terms()) out.accumulate(e, scalar_cast<P>(c));
  return out;
}

inline Form<double> to_float_form(const Form<Rational>& p) { return promote_form<double>(p); }
inline Form<Rational> to_exact_form(const Form<double>& p) { return promote_form<Rational>(p); }

// --- ring operations ------------------------------------------------------

template <class S>
Form<S> operator+(const Form<S>& a, const Form<S>& b) {
  if (a.vars() != b.vars()) throw Error(Errc::DimensionMismatch, "variable counts differ");
  if (a.degree() != b.degree()) throw Error(Errc::DegreeMismatch, "degrees differ");
  Form<S> out = a;
  for (const auto& [e, c] : b.terms()) out.accumulate(e, c);
  return out;
}

template <class S>
Form<S> operator-(const Form<S>& a) {
  Form<S> out(a.vars(), a.degree());
  for (const auto& [e, c] : a.terms()) out.accumulate(e, -c);
  return out;
}

template <class S>
Form<S> operator-(const Form<S>& a, const Form<S>& b) {
  return a + (-b);
}

template <class S>
Form<S> operator*(const S& s, const Form<S>& a) {
  Form<S> out(a.vars(), a.degree());
  for (const auto& [e, c] : a.terms()) out.accumulate(e, s * c);
  return out;
}

template <class S>
Form<S> operator*(const Form<S>& a, const S& s) {
  return s * a;
}

template <class S>
Form<S> operator*(const Form<S>& a, const Form<S>& b) {
  if (a.vars() != b.vars()) throw Error(Errc::DimensionMismatch, "variable counts differ");
  Form<S> out(a.vars(), a.degree() + b.degree());
  for (const auto& [ea, ca] : a.terms())
    for (const auto& [eb, cb] : b.terms()) {
      Exponents e = ea;
      for (size_t i = 0; i < e.size(); ++i) e[i] += eb[i];
      out.accumulate(e, ca * cb);
    }
  return out;
}

template <class S>
Form<S> pow(const Form<S>& a, int k) {
  if (k < 0) throw Error(Errc::BadInput, "negative power");
  Form<S> out(a.vars(), 0);
  out.accumulate(Exponents(a.vars(), 0), S(1));
  for (int i = 0; i < k; ++i) out = out * a;
  return out;
}

// --- evaluation and calculus ----------------------------------------------

template <class S>
S constant_value(const Form<S>& p) {
  if (p.degree() != 0) throw Error(Errc::DegreeMismatch, "form is not a constant");
  S acc(0);
  for (const auto& [e, c] : p.terms()) acc += c;
  return acc;
}

namespace detail {
template <class S, class Derived>
std::vector<promote_t<S, typename Derived::Scalar>> point_as(const Form<S>& p,
                                                             const Eigen::MatrixBase<Derived>& x) {
  using P = promote_t<S, typename Derived::Scalar>;
  if (x.rows() != 1 && x.cols() != 1) throw Error(Errc::DimensionMismatch, "point must be a vector");
  if (static_cast<int>(x.size()) != p.vars())
    throw Error(Errc::DimensionMismatch, "point dimension != variable count");
  std::vector<P> pt(p.vars());
  for (int i = 0; i < p.vars(); ++i) pt[i] = scalar_cast<P>(x(i));
  return pt;
}
}  // namespace detail

template <class P>
P evaluate_at(const Form<P>& p, const std::vector<P>& pt) {
  P total(0);
  for (const auto& [e, c] : p.terms()) {
    P term = c;
    for (int i = 0; i < p.vars(); ++i)
      for (int k = 0; k < e[i]; ++k) term = term * pt[i];
    total += term;
  }
  return total;
}

template <class S, class Derived>
auto evaluate(const Form<S>& p, const Eigen::MatrixBase<Derived>& x)
    -> promote_t<S, typename Derived::Scalar> {
  using P = promote_t<S, typename Derived::Scalar>;
  return evaluate_at(promote_form<P>(p), detail::point_as(p, x));
}

template <class S>
Form<S> derivative(const Form<S>& p, int var) {
  if (var < 0 || var >= p.vars()) throw Error(Errc::DimensionMismatch, "variable index out of range");
  Form<S> out(p.vars(), p.degree() > 0 ? p.degree() - 1 : 0);
  for (const auto& [e, c] : p.terms()) {
    if (e[var] == 0) continue;
    Exponents d = e;
    d[var] -= 1;
    out.accumulate(d, mul_int(c, e[var]));
  }
  return out;
}

template <class P>
Form<P> directional_derivative(const Form<P>& p, const std::vector<P>& u) {
  if (static_cast<int>(u.size()) != p.vars())
    throw Error(Errc::DimensionMismatch, "direction dimension != variable count");
  Form<P> out(p.vars(), p.degree() > 0 ? p.degree() - 1 : 0);
  for (const auto& [e, c] : p.terms())
    for (int i = 0; i < p.vars(); ++i) {
      if (e[i] == 0) continue;
      Exponents d = e;
      d[i] -= 1;
      out.accumulate(d, mul_int(c, e[i]) * u[i]);
    }
  return out;
}

// Polarization T_p(x_1, ..., x_k) = (1/k!) D_{x_1} ... D_{x_k} p: the unique
// symmetric multilinear tensor with T_p(x, ..., x) = p(x).
template <class S, class T>
promote_t<S, T> polarize(const Form<S>& p,
                         const std::vector<Eigen::Matrix<T, Eigen::Dynamic, 1>>& points) {
  using P = promote_t<S, T>;
  if (static_cast<int>(points.size()) != p.degree())
    throw Error(Errc::WrongArity, "polarization needs exactly degree-many points");
  Form<P> f = promote_form<P>(p);
  for (const auto& pt : points) f = directional_derivative(f, detail::point_as(f, pt));
  return div_int(constant_value(f), factorial_ll(p.degree()));
}

// Biform of an even-degree form: Q_p(x, y) = T_p(x^{(d)}, y^{(d)}).
template <class S, class T>
promote_t<S, T> biform(const Form<S>& p, const Eigen::Matrix<T, Eigen::Dynamic, 1>& x,
                       const Eigen::Matrix<T, Eigen::Dynamic, 1>& y) {
  using P = promote_t<S, T>;
  if (p.degree() % 2 != 0) throw Error(Errc::OddDegree, "biform needs even degree");
  const int d = p.degree() / 2;
  Form<P> f = promote_form<P>(p);
  const std::vector<P> xu = detail::point_as(f, x);
  const std::vector<P> yu = detail::point_as(f, y);
  for (int i = 0; i < d; ++i) f = directional_derivative(f, xu);
  for (int i = 0; i < d; ++i) f = directional_derivative(f, yu);
  return div_int(constant_value(f), factorial_ll(p.degree()));
}

template <class S, class Derived>
auto gradient(const Form<S>& p, const Eigen::MatrixBase<Derived>& x)
    -> Eigen::Matrix<promote_t<S, typename Derived::Scalar>, Eigen::Dynamic, 1> {
  using P = promote_t<S, typename Derived::Scalar>;
  Eigen::Matrix<P, Eigen::Dynamic, 1> g(p.vars());
  for (int i = 0; i < p.vars(); ++i) g(i) = evaluate(derivative(p, i), x);
  return g;
}

template <class S, class Derived>
auto hessian(const Form<S>& p, const Eigen::MatrixBase<Derived>& x)
    -> Eigen::Matrix<promote_t<S, typename Derived::Scalar>, Eigen::Dynamic, Eigen::Dynamic> {
  using P = promote_t<S, typename Derived::Scalar>;
  const int n = p.vars();
  Eigen::Matrix<P, Eigen::Dynamic, Eigen::Dynamic> H(n, n);
  for (int i = 0; i < n; ++i) {
    const Form<S> di = derivative(p, i);
    for (int j = i; j < n; ++j) {
      H(i, j) = evaluate(derivative(di, j), x);
      if (j != i) H(j, i) = H(i, j);
    }
  }
  return H;
}

// Fischer inner product <p, q> = p(D) q = sum over I of (prod_t I_t!) p_I q_I
// for forms of equal degree; the weight is k! / C(k; I).
template <class S>
S fischer_inner(const Form<S>& p, const Form<S>& q) {
  if (p.vars() != q.vars()) throw Error(Errc::DimensionMismatch, "variable counts differ");
  if (p.degree() != q.degree()) throw Error(Errc::DegreeMismatch, "degrees differ");
  S acc(0);
  for (const auto& [e, c] : p.terms()) {
    auto it = q.terms().find(e);
    if (it == q.terms().end()) continue;
    long long w = 1;
    for (int v : e) w *= factorial_ll(v);
    const S prod = c * it->second;
    acc += mul_int(prod, w);
  }
  return acc;
}

// Apply op interpreted as a constant-coefficient differential operator
// (x^I  ->  D^I) to p.
template <class S>
Form<S> apply_diff_op(const Form<S>& op, const Form<S>& p) {
  if (op.vars() != p.vars()) throw Error(Errc::DimensionMismatch, "variable counts differ");
  if (op.degree() > p.degree())
    throw Error(Errc::DegreeExceeds, "operator degree exceeds target degree");
  Form<S> out(p.vars(), p.degree() - op.degree());
  for (const auto& [e, c] : op.terms()) {
    Form<S> g = p;
    for (int i = 0; i < p.vars(); ++i)
      for (int k = 0; k < e[i]; ++k) g = derivative(g, i);
    for (const auto& [eg, cg] : g.terms()) out.accumulate(eg, c * cg);
  }
  return out;
}

// Substitute (x, y) -> s*x + t*y, producing a bivariate form in (s, t).
template <class S>
Form<S> restrict_to_plane(const Form<S>& p, const std::vector<S>& x, const std::vector<S>& y) {
  const int n = p.vars();
  if (static_cast<int>(x.size()) != n || static_cast<int>(y.size()) != n)
    throw Error(Errc::DimensionMismatch, "plane spanning vectors must have the form's dimension");
  const int k = p.degree();
  Form<S> out(2, k);
  for (const auto& [e, c] : p.terms()) {
    // poly[a] = coefficient of s^a in prod_i (x_i s + y_i t)^{e_i}, times c
    std::vector<S> poly{c};
    for (int i = 0; i < n; ++i) {
      const int ei = e[i];
      if (ei == 0) continue;
      std::vector<S> factor(ei + 1, S(0));  // factor[a] = C(ei, a) x_i^a y_i^{ei-a}
      for (int a = 0; a <= ei; ++a) {
        S v = mul_int(S(1), binomial(ei, a));
        for (int t = 0; t < a; ++t) v = v * x[i];
        for (int t = 0; t < ei - a; ++t) v = v * y[i];
        factor[a] = v;
      }
      std::vector<S> next(poly.size() + ei, S(0));
      for (size_t a = 0; a < poly.size(); ++a) {
        if (is_zero(poly[a])) continue;
        for (int b = 0; b <= ei; ++b) next[a + b] += poly[a] * factor[b];
      }
      poly = std::move(next);
    }
    for (int a = 0; a < static_cast<int>(poly.size()); ++a)
      if (!is_zero(poly[a])) out.accumulate({a, k - a}, poly[a]);
  }
  return out;
}

template <class S, class Derived>
Form<typename Derived::Scalar> restrict_to_plane(const Form<S>& p,
                                                 const Eigen::MatrixBase<Derived>& x,
                                                 const Eigen::MatrixBase<Derived>& y) {
  using T = typename Derived::Scalar;
  static_assert(std::is_same_v<promote_t<S, T>, T>, "convert the form's mode explicitly first");
  const Form<T> q = promote_form<T>(p);
  std::vector<T> xv = detail::point_as(q, x), yv = detail::point_as(q, y);
  return restrict_to_plane(q, xv, yv);
}

template <class S>
Form<S> laplacian(const Form<S>& p) {
  if (p.degree() < 2) throw Error(Errc::DegreeMismatch, "degree must be at least 2");
  Form<S> out(p.vars(), p.degree() - 2);
  for (int i = 0; i < p.vars(); ++i) {
    const Form<S> dii = derivative(derivative(p, i), i);
    for (const auto& [e, c] : dii.terms()) out.accumulate(e, c);
  }
  return out;
}

// Iterated Laplacian collapsing a degree-2t form to its constant value.
template <class S>
S laplacian_power(const Form<S>& p, int times) {
  if (p.degree() != 2 * times)
    throw Error(Errc::DegreeMismatch, "degree must equal twice the iteration count");
  Form<S> g = p;
  for (int i = 0; i < times; ++i) g = laplacian(g);
  return constant_value(g);
}

// Hermitian biform Q_p(z, conj z) computed through the real plane spanned by
// Re z and Im z: restrict, then collapse with Delta^d / (2d)!. Real-valued by
// construction, exactly so in exact mode.
template <class S>
S hermitian_biform(const Form<S>& p,
                   const Eigen::Matrix<complex_of_t<S>, Eigen::Dynamic, 1>& z) {
  if (p.degree() % 2 != 0) throw Error(Errc::OddDegree, "hermitian biform needs even degree");
  if (static_cast<int>(z.size()) != p.vars())
    throw Error(Errc::DimensionMismatch, "point dimension != variable count");
  const int d = p.degree() / 2;
  std::vector<S> xr(p.vars()), yi(p.vars());
  for (int i = 0; i < p.vars(); ++i) {
    xr[i] = real_part(z(i));
    yi[i] = imag_part(z(i));
  }
  const Form<S> q = restrict_to_plane(p, xr, yi);
  return div_int(laplacian_power(q, d), factorial_ll(p.degree()));
}

template <class S>
std::ostream& operator<<(std::ostream& os, const Form<S>& p) {
  os << "Form(n=" << p.vars() << ", k=" << p.degree() << ")[";
  bool first = true;
  for (const auto& [e, c] : p.terms()) {
    if (!first) os << " + ";
    first = false;
    os << c << "*x^(";
    for (size_t i = 0; i < e.size(); ++i) os << (i ? "," : "") << e[i];
    os << ")";
  }
  return os << "]";
}

}  // namespace cfl
