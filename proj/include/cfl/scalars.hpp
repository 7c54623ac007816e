#pragma once

#include <Eigen/Core>
#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/eigen.hpp>

#include <cmath>
#include <complex>
#include <cstdint>
#include <ostream>
#include <string>
#include <type_traits>

#include "cfl/errors.hpp"

namespace cfl {

// Exact scalar mode. Conversions from double are exact (doubles are dyadic),
// conversions to double round once at the end of a computation.
using Rational = boost::multiprecision::cpp_rational;

// Complex numbers over Rational. std::complex is only specified for
// float/double/long double, so exact complex arithmetic gets its own type.
struct RationalComplex {
  Rational re{0};
  Rational im{0};

  RationalComplex() = default;
  RationalComplex(int v) : re(v) {}                       // NOLINT: implicit like std::complex
  RationalComplex(const Rational& r) : re(r) {}           // NOLINT
  RationalComplex(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

  friend RationalComplex operator+(const RationalComplex& a, const RationalComplex& b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend RationalComplex operator-(const RationalComplex& a, const RationalComplex& b) {
    return {a.re - b.re, a.im - b.im};
  }
  friend RationalComplex operator-(const RationalComplex& a) { return {-a.re, -a.im}; }
  friend RationalComplex operator*(const RationalComplex& a, const RationalComplex& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend RationalComplex operator*(const RationalComplex& a, const Rational& s) {
    return {a.re * s, a.im * s};
  }
  friend RationalComplex operator*(const Rational& s, const RationalComplex& a) { return a * s; }
  friend bool operator==(const RationalComplex& a, const RationalComplex& b) {
    return a.re == b.re && a.im == b.im;
  }
  friend bool operator!=(const RationalComplex& a, const RationalComplex& b) { return !(a == b); }
  RationalComplex& operator+=(const RationalComplex& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  RationalComplex& operator*=(const RationalComplex& o) { return *this = *this * o; }
};

inline RationalComplex conj(const RationalComplex& z) { return {z.re, -z.im}; }

inline std::ostream& operator<<(std::ostream& os, const RationalComplex& z) {
  return os << "(" << z.re << (z.im < 0 ? "" : "+") << z.im << "i)";
}

// --- type relationships ---------------------------------------------------

template <class S>
struct RealOf {
  using type = S;
};
template <>
struct RealOf<std::complex<double>> {
  using type = double;
};
template <>
struct RealOf<RationalComplex> {
  using type = Rational;
};
template <class S>
using real_of_t = typename RealOf<S>::type;

template <class S>
struct ComplexOf;
template <>
struct ComplexOf<double> {
  using type = std::complex<double>;
};
template <>
struct ComplexOf<Rational> {
  using type = RationalComplex;
};
template <class S>
using complex_of_t = typename ComplexOf<S>::type;

// Result scalar when a Form over S is combined with points of type T.
// Float and exact modes never mix implicitly; convert the form first.
template <class S, class T>
struct Promote;
template <>
struct Promote<double, double> {
  using type = double;
};
template <>
struct Promote<double, std::complex<double>> {
  using type = std::complex<double>;
};
template <>
struct Promote<std::complex<double>, double> {
  using type = std::complex<double>;
};
template <>
struct Promote<std::complex<double>, std::complex<double>> {
  using type = std::complex<double>;
};
template <>
struct Promote<Rational, Rational> {
  using type = Rational;
};
template <>
struct Promote<Rational, RationalComplex> {
  using type = RationalComplex;
};
template <>
struct Promote<RationalComplex, Rational> {
  using type = RationalComplex;
};
template <>
struct Promote<RationalComplex, RationalComplex> {
  using type = RationalComplex;
};
template <class S, class T>
using promote_t = typename Promote<S, T>::type;

// --- generic scalar helpers ----------------------------------------------

template <class S>
inline constexpr bool is_exact_scalar_v =
    std::is_same_v<S, Rational> || std::is_same_v<S, RationalComplex>;

template <class To, class From>
To scalar_cast(const From& v) {
  if constexpr (std::is_same_v<To, From>) {
    return v;
  } else if constexpr (std::is_same_v<To, double>) {
    if constexpr (std::is_same_v<From, Rational>)
      return v.template convert_to<double>();
    else
      return static_cast<double>(v);
  } else if constexpr (std::is_same_v<To, std::complex<double>>) {
    if constexpr (std::is_same_v<From, double>)
      return {v, 0.0};
    else if constexpr (std::is_same_v<From, Rational>)
      return {v.template convert_to<double>(), 0.0};
    else if constexpr (std::is_same_v<From, RationalComplex>)
      return {v.re.template convert_to<double>(), v.im.template convert_to<double>()};
    else
      return To(v);
  } else if constexpr (std::is_same_v<To, Rational>) {
    return Rational(v);  // exact for double inputs
  } else if constexpr (std::is_same_v<To, RationalComplex>) {
    if constexpr (std::is_same_v<From, double>)
      return RationalComplex(Rational(v));
    else
      return RationalComplex(v);
  }
}

template <class S>
bool is_zero(const S& v) {
  if constexpr (std::is_same_v<S, std::complex<double>>)
    return v.real() == 0.0 && v.imag() == 0.0;
  else if constexpr (std::is_same_v<S, RationalComplex>)
    return v.re == 0 && v.im == 0;
  else
    return v == S(0);
}

template <class S>
real_of_t<S> real_part(const S& v) {
  if constexpr (std::is_same_v<S, std::complex<double>>)
    return v.real();
  else if constexpr (std::is_same_v<S, RationalComplex>)
    return v.re;
  else
    return v;
}

template <class S>
real_of_t<S> imag_part(const S& v) {
  if constexpr (std::is_same_v<S, std::complex<double>>)
    return v.imag();
  else if constexpr (std::is_same_v<S, RationalComplex>)
    return v.im;
  else
    return real_of_t<S>(0);
}

template <class S>
S conj_value(const S& v) {
  if constexpr (std::is_same_v<S, std::complex<double>>)
    return std::conj(v);
  else if constexpr (std::is_same_v<S, RationalComplex>)
    return conj(v);
  else
    return v;
}

// Multiply by a small integer (exponents, factorials) without relying on
// implicit int conversions, which std::complex does not provide.
template <class S>
S mul_int(const S& v, long long k) {
  if constexpr (std::is_same_v<S, double> || std::is_same_v<S, std::complex<double>>)
    return v * static_cast<double>(k);
  else
    return v * Rational(k);
}

template <class S>
S div_int(const S& v, long long k) {
  if constexpr (std::is_same_v<S, double>)
    return v / static_cast<double>(k);
  else if constexpr (std::is_same_v<S, std::complex<double>>)
    return v / static_cast<double>(k);
  else
    return v * Rational(1, k);
}

// Float mode rejects NaN/inf at construction; exact mode has nothing to check.
template <class S>
void validate_finite(const S& v) {
  if constexpr (std::is_same_v<S, double>) {
    if (!std::isfinite(v)) throw Error(Errc::NonFiniteCoefficient, "coefficient is not finite");
  } else if constexpr (std::is_same_v<S, std::complex<double>>) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      throw Error(Errc::NonFiniteCoefficient, "coefficient is not finite");
  }
}

// --- serialization of exact scalars ---------------------------------------

// Canonical decimal-free encoding "numerator/denominator".
inline std::string rational_to_string(const Rational& r) {
  return numerator(r).str() + "/" + denominator(r).str();
}

inline Rational rational_from_string(const std::string& s) {
  if (s.empty()) throw Error(Errc::BadInput, "empty rational literal");
  const auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rational(boost::multiprecision::cpp_int(s));
    const boost::multiprecision::cpp_int num(s.substr(0, slash));
    const boost::multiprecision::cpp_int den(s.substr(slash + 1));
    if (den == 0) throw Error(Errc::BadInput, "zero denominator in '" + s + "'");
    return Rational(num, den);
  } catch (const std::runtime_error&) {
    throw Error(Errc::BadInput, "malformed rational literal '" + s + "'");
  }
}

}  // namespace cfl

namespace Eigen {

// Storage-level traits so Matrix<RationalComplex, ...> instantiates; exact
// matrices are used as typed containers, arithmetic stays in the Form layer.
template <>
struct NumTraits<cfl::RationalComplex> {
  using Real = cfl::Rational;
  using NonInteger = cfl::RationalComplex;
  using Literal = cfl::RationalComplex;
  using Nested = cfl::RationalComplex;
  enum {
    IsComplex = 1,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 8,
    AddCost = 16,
    MulCost = 32
  };
  static inline Real epsilon() { return Real(0); }
  static inline Real dummy_precision() { return Real(0); }
  static inline int digits10() { return 0; }
};

}  // namespace Eigen
