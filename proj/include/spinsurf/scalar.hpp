#pragma once

#include <boost/rational.hpp>

#include <cmath>
#include <complex>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <type_traits>

namespace spinsurf {

using Rational = boost::rational<std::int64_t>;

// a + i b over any commutative ring T. std::complex is only specified for
// floating types, so exact rationals need their own pair.
template <class T>
struct Complex {
  T re{};
  T im{};

  Complex() = default;
  Complex(T r) : re(std::move(r)), im(0) {}
  Complex(T r, T i) : re(std::move(r)), im(std::move(i)) {}
  template <class I>
    requires std::is_integral_v<I>
  Complex(I r) : re(T(r)), im(0) {}

  friend Complex operator+(const Complex& a, const Complex& b) { return {a.re + b.re, a.im + b.im}; }
  friend Complex operator-(const Complex& a, const Complex& b) { return {a.re - b.re, a.im - b.im}; }
  friend Complex operator-(const Complex& a) { return {-a.re, -a.im}; }
  friend Complex operator*(const Complex& a, const Complex& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend Complex operator/(const Complex& a, const Complex& b) {
    T d = b.re * b.re + b.im * b.im;
    return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
  }
  Complex& operator+=(const Complex& o) { return *this = *this + o; }
  Complex& operator-=(const Complex& o) { return *this = *this - o; }
  Complex& operator*=(const Complex& o) { return *this = *this * o; }
  friend bool operator==(const Complex& a, const Complex& b) { return a.re == b.re && a.im == b.im; }
};

// Double (hyperbolic) number a + e b with e^2 = +1.
template <class T>
struct DoubleNumber {
  T a{};
  T b{};

  DoubleNumber() = default;
  DoubleNumber(T x) : a(std::move(x)), b(0) {}
  DoubleNumber(T x, T y) : a(std::move(x)), b(std::move(y)) {}
  template <class I>
    requires std::is_integral_v<I>
  DoubleNumber(I x) : a(T(x)), b(0) {}

  friend DoubleNumber operator+(const DoubleNumber& x, const DoubleNumber& y) { return {x.a + y.a, x.b + y.b}; }
  friend DoubleNumber operator-(const DoubleNumber& x, const DoubleNumber& y) { return {x.a - y.a, x.b - y.b}; }
  friend DoubleNumber operator-(const DoubleNumber& x) { return {-x.a, -x.b}; }
  friend DoubleNumber operator*(const DoubleNumber& x, const DoubleNumber& y) {
    return {x.a * y.a + x.b * y.b, x.a * y.b + x.b * y.a};
  }
  // only defined off the light cone a = +-b
  friend DoubleNumber operator/(const DoubleNumber& x, const DoubleNumber& y) {
    T d = y.a * y.a - y.b * y.b;
    if (d == T(0)) throw std::domain_error("double number divisor is a zero divisor");
    return {(x.a * y.a - x.b * y.b) / d, (x.b * y.a - x.a * y.b) / d};
  }
  DoubleNumber& operator+=(const DoubleNumber& o) { return *this = *this + o; }
  DoubleNumber& operator-=(const DoubleNumber& o) { return *this = *this - o; }
  DoubleNumber& operator*=(const DoubleNumber& o) { return *this = *this * o; }
  friend bool operator==(const DoubleNumber& x, const DoubleNumber& y) { return x.a == y.a && x.b == y.b; }
};

using QComplex = Complex<Rational>;
using CDouble = std::complex<double>;

template <class T>
struct scalar_traits;

template <>
struct scalar_traits<Rational> {
  static constexpr bool exact = true;
  static Rational ratio(std::int64_t n, std::int64_t d) { return Rational(n, d); }
  static bool is_zero(const Rational& x) { return x.numerator() == 0; }
  static Rational conj(const Rational& x) { return x; }
  static double magnitude(const Rational& x) { return std::abs(boost::rational_cast<double>(x)); }
  static std::string str(const Rational& x) {
    std::ostringstream os;
    os << x.numerator();
    if (x.denominator() != 1) os << '/' << x.denominator();
    return os.str();
  }
};

template <>
struct scalar_traits<double> {
  static constexpr bool exact = false;
  static double ratio(std::int64_t n, std::int64_t d) { return double(n) / double(d); }
  static bool is_zero(double x) { return std::abs(x) < 1e-12; }
  static double conj(double x) { return x; }
  static double magnitude(double x) { return std::abs(x); }
  static std::string str(double x) {
    std::ostringstream os;
    os.precision(17);
    os << x;
    return os.str();
  }
};

template <>
struct scalar_traits<long double> {
  static constexpr bool exact = false;
  static long double ratio(std::int64_t n, std::int64_t d) { return (long double)n / (long double)d; }
  static bool is_zero(long double x) { return std::abs(x) < 1e-15L; }
  static long double conj(long double x) { return x; }
  static double magnitude(long double x) { return double(std::abs(x)); }
  static std::string str(long double x) {
    std::ostringstream os;
    os.precision(21);
    os << x;
    return os.str();
  }
};

template <>
struct scalar_traits<CDouble> {
  static constexpr bool exact = false;
  static CDouble ratio(std::int64_t n, std::int64_t d) { return double(n) / double(d); }
  static bool is_zero(const CDouble& x) { return std::abs(x) < 1e-12; }
  static CDouble conj(const CDouble& x) { return std::conj(x); }
  static double magnitude(const CDouble& x) { return std::abs(x); }
  static std::string str(const CDouble& x) {
    return "(" + scalar_traits<double>::str(x.real()) + "," + scalar_traits<double>::str(x.imag()) + ")";
  }
};

template <class T>
struct scalar_traits<Complex<T>> {
  static constexpr bool exact = scalar_traits<T>::exact;
  static Complex<T> ratio(std::int64_t n, std::int64_t d) { return Complex<T>(scalar_traits<T>::ratio(n, d)); }
  static bool is_zero(const Complex<T>& x) {
    return scalar_traits<T>::is_zero(x.re) && scalar_traits<T>::is_zero(x.im);
  }
  static Complex<T> conj(const Complex<T>& x) { return {x.re, -x.im}; }
  static double magnitude(const Complex<T>& x) {
    return scalar_traits<T>::magnitude(x.re) + scalar_traits<T>::magnitude(x.im);
  }
  static std::string str(const Complex<T>& x) {
    return "(" + scalar_traits<T>::str(x.re) + "," + scalar_traits<T>::str(x.im) + ")";
  }
};

template <class T>
struct scalar_traits<DoubleNumber<T>> {
  static constexpr bool exact = scalar_traits<T>::exact;
  static DoubleNumber<T> ratio(std::int64_t n, std::int64_t d) {
    return DoubleNumber<T>(scalar_traits<T>::ratio(n, d));
  }
  static bool is_zero(const DoubleNumber<T>& x) {
    return scalar_traits<T>::is_zero(x.a) && scalar_traits<T>::is_zero(x.b);
  }
  static DoubleNumber<T> conj(const DoubleNumber<T>& x) { return x; }
  static double magnitude(const DoubleNumber<T>& x) {
    return scalar_traits<T>::magnitude(x.a) + scalar_traits<T>::magnitude(x.b);
  }
  static std::string str(const DoubleNumber<T>& x) {
    return "[" + scalar_traits<T>::str(x.a) + "," + scalar_traits<T>::str(x.b) + "]";
  }
};

template <class T>
T ratio(std::int64_t n, std::int64_t d) {
  return scalar_traits<T>::ratio(n, d);
}

template <class T>
bool is_zero(const T& x) {
  return scalar_traits<T>::is_zero(x);
}

template <class T>
T conj(const T& x) {
  return scalar_traits<T>::conj(x);
}

template <class T>
std::string to_string(const T& x) {
  return scalar_traits<T>::str(x);
}

inline double to_double(const Rational& x) { return boost::rational_cast<double>(x); }

inline CDouble to_cdouble(const QComplex& z) { return {to_double(z.re), to_double(z.im)}; }

template <class T>
Complex<T> imag_unit() {
  return Complex<T>(T(0), T(1));
}

}  // namespace spinsurf
