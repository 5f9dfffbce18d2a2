#pragma once

// The linear substitution identifying the KerrNull chart with the Euler chart,
// the pullback identities it carries, and torus endomorphisms of (ℝ/2π)³.

#include <array>
#include <span>
#include <string>
#include <vector>

#include "lcs/exterior.hpp"
#include "lcs/kerr.hpp"

namespace lcs::bridge {

using Matrix3 = std::array<std::array<double, 3>, 3>;

/// [[1, 0, a/2], [0, 2, 0], [0, 0, -a/2]] acting on the column (u, θ, φ).
struct ReparamMatrix {
  explicit ReparamMatrix(double a);

  double a;
  Matrix3 m;

  double det() const { return -a; }
  /// True when every entry is an integer, i.e. a ∈ 2ℤ.
  bool integral() const;
  std::array<double, 3> apply(const std::array<double, 3>& v) const;
};

/// (t, u, θ, φ) ↦ (t, u + aφ/2, 2θ, -aφ/2) from KerrNull to Euler, with its
/// exact inverse. a = 0 is degenerate and raises ConfigError.
ChartMap substitution_map(double a);

struct IdentityResidual {
  double max_abs = 0.0;
  double max_rel = 0.0;
  std::size_t samples = 0;
};

/// λ on the KerrNull chart against the pullback of 𝛂 along the substitution.
IdentityResidual verify_lambda_identity(double a, std::span<const Point<double>> null_points);
/// ω_Kerr pulled to KerrNull against the pullback of ω_U2.
IdentityResidual verify_omega_identity(double a, std::span<const Point<double>> null_points);
/// Pullback commutes with d on 𝛂.
IdentityResidual verify_naturality(double a, std::span<const Point<double>> null_points);

struct CharPolyReport {
  double a = 0.0;
  std::array<double, 4> computed{};  // 2·det(T I - [a]), T³ down to T⁰
  std::array<double, 4> printed{};   // 2T³ + (a - 6)T² + (4 - 3a)T + a
  std::array<bool, 4> matches{};
};
CharPolyReport char_poly_a(double a);

/// Integer matrix acting on (ℝ/2π)³.
class CoverMap {
 public:
  using IntMatrix = std::array<std::array<long long, 3>, 3>;

  explicit CoverMap(const IntMatrix& m);
  /// Throws DomainError unless every entry is an integer and det ≠ 0.
  static CoverMap from_real(const Matrix3& m);
  static CoverMap doubling();  // [2]

  const IntMatrix& matrix() const { return m_; }
  long long det() const { return det_; }
  std::array<double, 3> apply(const std::array<double, 3>& x) const;

 private:
  IntMatrix m_;
  long long det_;
};

/// Angle representative in [0, 2π).
double wrap_2pi(double x);
/// Distance of two torus points, coordinatewise modulo 2π.
double torus_distance(const std::array<double, 3>& x, const std::array<double, 3>& y);

/// All x ∈ [0, 2π)³ with M x ≡ target, via the integer adjugate.
std::vector<std::array<double, 3>> torus_cover_preimages(const CoverMap& m,
                                                         const std::array<double, 3>& target);

}  // namespace lcs::bridge
