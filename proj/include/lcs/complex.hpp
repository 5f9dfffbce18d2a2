#pragma once

// Complex scalars over any AD scalar type and 2x2 complex matrices.

#include <array>

#include "lcs/ad.hpp"

namespace lcs {

template <class T>
struct Complex {
  T re{};
  T im{};

  constexpr Complex() = default;
  constexpr Complex(T r) : re(r), im(0.0) {}  // NOLINT: real lift
  constexpr Complex(T r, T i) : re(r), im(i) {}

  static Complex i() { return Complex(T(0.0), T(1.0)); }

  Complex conj() const { return Complex(re, -im); }
  /// |z|^2
  T norm2() const { return re * re + im * im; }

  Complex operator-() const { return Complex(-re, -im); }
  friend Complex operator+(const Complex& a, const Complex& b) {
    return Complex(a.re + b.re, a.im + b.im);
  }
  friend Complex operator-(const Complex& a, const Complex& b) {
    return Complex(a.re - b.re, a.im - b.im);
  }
  friend Complex operator*(const Complex& a, const Complex& b) {
    return Complex(a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re);
  }
  friend Complex operator/(const Complex& a, const Complex& b) {
    const T d = b.norm2();
    return Complex((a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d);
  }
};

using CScalar = Complex<ad::Scalar>;
using Cplx = Complex<double>;

/// e^{i angle}
template <class T>
Complex<T> expi(const T& angle) {
  return Complex<T>(ad::cos(angle), ad::sin(angle));
}

template <class T>
T abs(const Complex<T>& z) {
  return ad::sqrt(z.norm2());
}

/// 2x2 complex matrix, row-major.
template <class T>
struct Matrix2 {
  std::array<std::array<Complex<T>, 2>, 2> m{};

  static Matrix2 identity() {
    Matrix2 r;
    r.m[0][0] = Complex<T>(T(1.0));
    r.m[1][1] = Complex<T>(T(1.0));
    return r;
  }
  static Matrix2 scalar(const Complex<T>& z) {
    Matrix2 r;
    r.m[0][0] = z;
    r.m[1][1] = z;
    return r;
  }

  const Complex<T>& operator()(int i, int j) const { return m[i][j]; }
  Complex<T>& operator()(int i, int j) { return m[i][j]; }

  Matrix2 adjoint() const {
    Matrix2 r;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) r.m[i][j] = m[j][i].conj();
    return r;
  }
  Complex<T> det() const { return m[0][0] * m[1][1] - m[0][1] * m[1][0]; }
  Complex<T> trace() const { return m[0][0] + m[1][1]; }
  Matrix2 inverse() const {
    const Complex<T> d = det();
    Matrix2 r;
    r.m[0][0] = m[1][1] / d;
    r.m[0][1] = -m[0][1] / d;
    r.m[1][0] = -m[1][0] / d;
    r.m[1][1] = m[0][0] / d;
    return r;
  }

  friend Matrix2 operator+(const Matrix2& a, const Matrix2& b) {
    Matrix2 r;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) r.m[i][j] = a.m[i][j] + b.m[i][j];
    return r;
  }
  friend Matrix2 operator-(const Matrix2& a, const Matrix2& b) {
    Matrix2 r;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) r.m[i][j] = a.m[i][j] - b.m[i][j];
    return r;
  }
  friend Matrix2 operator*(const Matrix2& a, const Matrix2& b) {
    Matrix2 r;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) r.m[i][j] = a.m[i][0] * b.m[0][j] + a.m[i][1] * b.m[1][j];
    return r;
  }
  friend Matrix2 operator*(const Complex<T>& z, const Matrix2& a) {
    Matrix2 r;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) r.m[i][j] = z * a.m[i][j];
    return r;
  }
};

using CMatrix2 = Matrix2<double>;

/// Largest entry modulus of a - b.
double max_abs_diff(const CMatrix2& a, const CMatrix2& b);

}  // namespace lcs
