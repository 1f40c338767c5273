#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <string>

namespace solvlck {

/// Exact field backend. All arithmetic is exact; equality is literal.
using Rational = boost::multiprecision::cpp_rational;

/// Approximate field backend: a double together with a process-wide relative
/// tolerance. Two values compare equal when |a-b| <= tol * max(1,|a|,|b|).
/// A computation runs wholly on one backend; the two never mix.
class ApproxReal {
 public:
  ApproxReal() = default;
  ApproxReal(double v) : v_(v) {}  // NOLINT: implicit by design
  ApproxReal(int v) : v_(v) {}     // NOLINT

  double value() const { return v_; }

  /// Process-wide relative tolerance, default 1e-9. Set once at startup.
  static double& tolerance() {
    static double tol = 1e-9;
    return tol;
  }

  ApproxReal operator-() const { return ApproxReal(-v_); }
  ApproxReal& operator+=(const ApproxReal& o) {
    v_ += o.v_;
    return *this;
  }
  ApproxReal& operator-=(const ApproxReal& o) {
    v_ -= o.v_;
    return *this;
  }
  ApproxReal& operator*=(const ApproxReal& o) {
    v_ *= o.v_;
    return *this;
  }
  ApproxReal& operator/=(const ApproxReal& o) {
    v_ /= o.v_;
    return *this;
  }

  friend ApproxReal operator+(ApproxReal a, const ApproxReal& b) { return a += b; }
  friend ApproxReal operator-(ApproxReal a, const ApproxReal& b) { return a -= b; }
  friend ApproxReal operator*(ApproxReal a, const ApproxReal& b) { return a *= b; }
  friend ApproxReal operator/(ApproxReal a, const ApproxReal& b) { return a /= b; }

  friend bool operator==(const ApproxReal& a, const ApproxReal& b) {
    const double scale = std::max({1.0, std::fabs(a.v_), std::fabs(b.v_)});
    return std::fabs(a.v_ - b.v_) <= tolerance() * scale;
  }
  friend bool operator!=(const ApproxReal& a, const ApproxReal& b) { return !(a == b); }

 private:
  double v_ = 0.0;
};

template <class K>
struct scalar_traits;

template <>
struct scalar_traits<Rational> {
  static constexpr bool is_exact = true;
  static bool is_zero(const Rational& x) { return x.is_zero(); }
  static double magnitude(const Rational& x) {
    return std::fabs(static_cast<double>(x));
  }
  static Rational from_int(long long n) { return Rational(n); }
  static std::string to_string(const Rational& x) {
    return numerator(x).str() + "/" + denominator(x).str();
  }
};

template <>
struct scalar_traits<ApproxReal> {
  static constexpr bool is_exact = false;
  static bool is_zero(const ApproxReal& x) { return x == ApproxReal(0.0); }
  static double magnitude(const ApproxReal& x) { return std::fabs(x.value()); }
  static ApproxReal from_int(long long n) {
    return ApproxReal(static_cast<double>(n));
  }
  static std::string to_string(const ApproxReal& x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", x.value());
    return buf;
  }
};

/// Complexification K + iK, used by the character (local-system) complexes.
template <class K>
struct ComplexScalar {
  K re{};
  K im{};

  ComplexScalar() = default;
  ComplexScalar(K r) : re(std::move(r)) {}  // NOLINT
  ComplexScalar(K r, K i) : re(std::move(r)), im(std::move(i)) {}

  ComplexScalar operator-() const { return {-re, -im}; }
  ComplexScalar conj() const { return {re, -im}; }

  friend ComplexScalar operator+(const ComplexScalar& a, const ComplexScalar& b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend ComplexScalar operator-(const ComplexScalar& a, const ComplexScalar& b) {
    return {a.re - b.re, a.im - b.im};
  }
  friend ComplexScalar operator*(const ComplexScalar& a, const ComplexScalar& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend ComplexScalar operator/(const ComplexScalar& a, const ComplexScalar& b) {
    const K n = b.re * b.re + b.im * b.im;
    return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
  }
  ComplexScalar& operator+=(const ComplexScalar& o) { return *this = *this + o; }
  ComplexScalar& operator-=(const ComplexScalar& o) { return *this = *this - o; }
  ComplexScalar& operator*=(const ComplexScalar& o) { return *this = *this * o; }
  ComplexScalar& operator/=(const ComplexScalar& o) { return *this = *this / o; }

  friend bool operator==(const ComplexScalar& a, const ComplexScalar& b) {
    return a.re == b.re && a.im == b.im;
  }
  friend bool operator!=(const ComplexScalar& a, const ComplexScalar& b) {
    return !(a == b);
  }
};

template <class K>
struct scalar_traits<ComplexScalar<K>> {
  static constexpr bool is_exact = scalar_traits<K>::is_exact;
  static bool is_zero(const ComplexScalar<K>& x) {
    return scalar_traits<K>::is_zero(x.re) && scalar_traits<K>::is_zero(x.im);
  }
  static double magnitude(const ComplexScalar<K>& x) {
    return scalar_traits<K>::magnitude(x.re) + scalar_traits<K>::magnitude(x.im);
  }
  static ComplexScalar<K> from_int(long long n) {
    return ComplexScalar<K>(scalar_traits<K>::from_int(n));
  }
  static std::string to_string(const ComplexScalar<K>& x) {
    return scalar_traits<K>::to_string(x.re) + "+i*" + scalar_traits<K>::to_string(x.im);
  }
};

}  // namespace solvlck
