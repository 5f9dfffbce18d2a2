#pragma once

// Forward-mode automatic differentiation.
//
// Dual<T> carries a value and up to four partial derivatives with respect to
// the active variables of the enclosing computation. Second order is obtained
// by nesting: Dual<Dual<double>> seeded on both levels gives the Hessian.

#include <array>
#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <type_traits>
#include <vector>

#include "lcs/errors.hpp"

namespace lcs::ad {

inline constexpr int kMaxVars = 4;

template <class T>
class Dual;

template <class T>
struct is_dual : std::false_type {};
template <class T>
struct is_dual<Dual<T>> : std::true_type {};
template <class T>
inline constexpr bool is_dual_v = is_dual<T>::value;

/// Nesting depth: 0 for double, 1 for Dual<double>, ...
template <class T>
struct depth : std::integral_constant<int, 0> {};
template <class T>
struct depth<Dual<T>> : std::integral_constant<int, 1 + depth<T>::value> {};

template <class T>
class Dual {
 public:
  using inner_type = T;

  constexpr Dual() = default;
  constexpr Dual(const T& value) : value_(value) {}  // NOLINT: implicit lift
  template <class U = T>
    requires(!std::is_same_v<U, double>)
  constexpr Dual(double value) : value_(value) {}  // NOLINT: implicit lift

  /// Independent variable `index` out of `count` active variables.
  static Dual variable(const T& value, int index, int count) {
    if (count < 1 || count > kMaxVars || index < 0 || index >= count) {
      throw ConfigError("ad: variable index " + std::to_string(index) +
                        " outside 0.." + std::to_string(count - 1) +
                        " (at most 4 active variables)");
    }
    Dual d(value);
    d.count_ = static_cast<std::uint8_t>(count);
    d.partials_[index] = T(1.0);
    return d;
  }

  /// Builds a dual from explicit partials; used by the chain rule below.
  static Dual from_parts(const T& value, const std::array<T, kMaxVars>& partials,
                         int count) {
    Dual d(value);
    d.partials_ = partials;
    d.count_ = static_cast<std::uint8_t>(count);
    return d;
  }

  const T& value() const { return value_; }
  const T& partial(int i) const { return partials_[i]; }
  const std::array<T, kMaxVars>& partials() const { return partials_; }
  /// Number of active variables; 0 for constants.
  int count() const { return count_; }

  Dual operator-() const {
    Dual r(-value_);
    r.count_ = count_;
    for (int i = 0; i < count_; ++i) r.partials_[i] = -partials_[i];
    return r;
  }

  Dual& operator+=(const Dual& o) { return *this = *this + o; }
  Dual& operator-=(const Dual& o) { return *this = *this - o; }
  Dual& operator*=(const Dual& o) { return *this = *this * o; }
  Dual& operator/=(const Dual& o) { return *this = *this / o; }

  friend Dual operator+(const Dual& a, const Dual& b) {
    Dual r(a.value_ + b.value_);
    r.count_ = merged_count(a, b);
    for (int i = 0; i < r.count_; ++i) r.partials_[i] = a.partials_[i] + b.partials_[i];
    return r;
  }
  friend Dual operator-(const Dual& a, const Dual& b) {
    Dual r(a.value_ - b.value_);
    r.count_ = merged_count(a, b);
    for (int i = 0; i < r.count_; ++i) r.partials_[i] = a.partials_[i] - b.partials_[i];
    return r;
  }
  friend Dual operator*(const Dual& a, const Dual& b) {
    Dual r(a.value_ * b.value_);
    r.count_ = merged_count(a, b);
    for (int i = 0; i < r.count_; ++i) {
      r.partials_[i] = a.partials_[i] * b.value_ + a.value_ * b.partials_[i];
    }
    return r;
  }
  friend Dual operator/(const Dual& a, const Dual& b) {
    const T inv = T(1.0) / b.value_;
    const T q = a.value_ * inv;
    Dual r(q);
    r.count_ = merged_count(a, b);
    for (int i = 0; i < r.count_; ++i) {
      r.partials_[i] = (a.partials_[i] - q * b.partials_[i]) * inv;
    }
    return r;
  }

  friend bool operator<(const Dual& a, const Dual& b) { return a.value_ < b.value_; }
  friend bool operator>(const Dual& a, const Dual& b) { return a.value_ > b.value_; }
  friend bool operator<=(const Dual& a, const Dual& b) { return a.value_ <= b.value_; }
  friend bool operator>=(const Dual& a, const Dual& b) { return a.value_ >= b.value_; }

 private:
  static std::uint8_t merged_count(const Dual& a, const Dual& b) {
    if (a.count_ != 0 && b.count_ != 0 && a.count_ != b.count_) {
      throw ConfigError("ad: combining scalars over different variable sets (" +
                        std::to_string(a.count_) + " vs " + std::to_string(b.count_) + ")");
    }
    return a.count_ > b.count_ ? a.count_ : b.count_;
  }

  T value_{};
  std::array<T, kMaxVars> partials_{};
  std::uint8_t count_ = 0;
};

using Scalar = Dual<double>;
using Scalar2 = Dual<Dual<double>>;

/// Innermost double value of a possibly nested dual.
inline double value_of(double x) { return x; }
template <class T>
double value_of(const Dual<T>& x) {
  return value_of(x.value());
}

// Chain rule helper: f(x) with f'(x) already evaluated at x.value().
template <class T>
Dual<T> apply_unary(const Dual<T>& x, const T& fx, const T& dfx) {
  std::array<T, kMaxVars> p{};
  for (int i = 0; i < x.count(); ++i) p[i] = dfx * x.partial(i);
  return Dual<T>::from_parts(fx, p, x.count());
}

[[noreturn]] void throw_domain(const char* fn, double value);

// Elementary functions. The double overloads check the same domains so that
// generic code fails identically at every nesting depth.

inline double exp(double x) { return std::exp(x); }
inline double sin(double x) { return std::sin(x); }
inline double cos(double x) { return std::cos(x); }
inline double sinh(double x) { return std::sinh(x); }
inline double cosh(double x) { return std::cosh(x); }
inline double asinh(double x) { return std::asinh(x); }
inline double abs(double x) { return std::fabs(x); }
inline double log(double x) {
  if (!(x > 0.0)) throw_domain("log", x);
  return std::log(x);
}
inline double sqrt(double x) {
  if (!(x >= 0.0)) throw_domain("sqrt", x);
  return std::sqrt(x);
}
inline double acos(double x) {
  if (!(x >= -1.0 && x <= 1.0)) throw_domain("acos", x);
  return std::acos(x);
}
inline double atan2(double y, double x) {
  if (y == 0.0 && x == 0.0) throw_domain("atan2", 0.0);
  return std::atan2(y, x);
}

template <class T>
Dual<T> exp(const Dual<T>& x) {
  const T e = exp(x.value());
  return apply_unary(x, e, e);
}
template <class T>
Dual<T> log(const Dual<T>& x) {
  if (!(value_of(x) > 0.0)) throw_domain("log", value_of(x));
  return apply_unary(x, log(x.value()), T(1.0) / x.value());
}
template <class T>
Dual<T> sqrt(const Dual<T>& x) {
  if (!(value_of(x) >= 0.0)) throw_domain("sqrt", value_of(x));
  const T s = sqrt(x.value());
  return apply_unary(x, s, T(0.5) / s);
}
template <class T>
Dual<T> sin(const Dual<T>& x) {
  return apply_unary(x, sin(x.value()), cos(x.value()));
}
template <class T>
Dual<T> cos(const Dual<T>& x) {
  return apply_unary(x, cos(x.value()), -sin(x.value()));
}
template <class T>
Dual<T> sinh(const Dual<T>& x) {
  return apply_unary(x, sinh(x.value()), cosh(x.value()));
}
template <class T>
Dual<T> cosh(const Dual<T>& x) {
  return apply_unary(x, cosh(x.value()), sinh(x.value()));
}
template <class T>
Dual<T> asinh(const Dual<T>& x) {
  const T& v = x.value();
  return apply_unary(x, asinh(v), T(1.0) / sqrt(T(1.0) + v * v));
}
template <class T>
Dual<T> acos(const Dual<T>& x) {
  const double v = value_of(x);
  if (!(v > -1.0 && v < 1.0)) throw_domain("acos", v);
  const T& w = x.value();
  return apply_unary(x, acos(w), T(-1.0) / sqrt(T(1.0) - w * w));
}
template <class T>
Dual<T> abs(const Dual<T>& x) {
  return value_of(x) < 0.0 ? -x : x;
}

/// Two-argument arctangent with values in (-pi, pi].
template <class T>
Dual<T> atan2(const Dual<T>& y, const Dual<T>& x) {
  if (value_of(y) == 0.0 && value_of(x) == 0.0) throw_domain("atan2", 0.0);
  const T r2 = x.value() * x.value() + y.value() * y.value();
  const int n = y.count() > x.count() ? y.count() : x.count();
  std::array<T, kMaxVars> p{};
  for (int i = 0; i < n; ++i) {
    p[i] = (x.value() * y.partial(i) - y.value() * x.partial(i)) / r2;
  }
  return Dual<T>::from_parts(atan2(y.value(), x.value()), p, n);
}

/// Lifts a plain double to any scalar type S.
template <class S>
S constant(double v) {
  return S(v);
}

/// Seeds n independent variables with the identity partials matrix.
std::vector<Scalar> make_vars(std::span<const double> values);

/// Seeds n variables on both nesting levels; used for Hessians.
std::vector<Scalar2> make_nested_vars(std::span<const double> values);

/// Full Hessian of a twice-seeded scalar. Throws ConfigError when the inner
/// and outer variable sets differ.
std::vector<std::vector<double>> hessian(const Scalar2& y);

/// Gradient of a once-seeded scalar.
std::vector<double> gradient(const Scalar& y);

}  // namespace lcs::ad
