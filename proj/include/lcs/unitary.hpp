#pragma once

// SU(2) as unit quaternions, the Euler chart, Maurer–Cartan forms, the abelian
// cover ℝ × SU(2) of U(2), and the Cayley transform of Minkowski events.
//
// Angles are radians and exponentials are plain: e^{αi} = cos α + i sin α.
// The Euler chart carries four coordinates (t, α, β, γ); t is the ℝ factor of
// the cover and is inert for forms pulled back from SU(2).

#include <array>
#include <span>

#include "lcs/complex.hpp"
#include "lcs/exterior.hpp"
#include "lcs/kerr.hpp"

namespace lcs::unitary {

template <class T>
struct Quaternion {
  T w{};
  T x{};
  T y{};
  T z{};

  static Quaternion one() { return {T(1.0), T(0.0), T(0.0), T(0.0)}; }

  const T& operator[](int i) const { return i == 0 ? w : i == 1 ? x : i == 2 ? y : z; }

  Quaternion conj() const { return {w, -x, -y, -z}; }
  T norm2() const { return w * w + x * x + y * y + z * z; }
  Quaternion inverse() const {
    const T n = norm2();
    return {w / n, -x / n, -y / n, -z / n};
  }

  friend Quaternion operator+(const Quaternion& a, const Quaternion& b) {
    return {a.w + b.w, a.x + b.x, a.y + b.y, a.z + b.z};
  }
  friend Quaternion operator-(const Quaternion& a, const Quaternion& b) {
    return {a.w - b.w, a.x - b.x, a.y - b.y, a.z - b.z};
  }
  friend Quaternion operator*(const Quaternion& a, const Quaternion& b) {
    return {a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
            a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
            a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
            a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w};
  }
};

using Quat = Quaternion<double>;

/// exp(angle · e) for e = i, j, k (axis 1, 2, 3).
template <class T>
Quaternion<T> exp_axis(const T& angle, int axis) {
  Quaternion<T> q{ad::cos(angle), T(0.0), T(0.0), T(0.0)};
  const T s = ad::sin(angle);
  if (axis == 1) q.x = s;
  if (axis == 2) q.y = s;
  if (axis == 3) q.z = s;
  return q;
}

/// e^{γk} · e^{βj} · e^{αi}
template <class T>
Quaternion<T> euler_to_su2(const T& alpha, const T& beta, const T& gamma) {
  return exp_axis(gamma, 3) * exp_axis(beta, 2) * exp_axis(alpha, 1);
}

struct EulerAngles {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
};

/// Euler angles reproducing a unit quaternion. The chart degenerates where
/// cos 2β = 0; closer than `margin` a DomainError is raised.
EulerAngles su2_to_euler(const Quat& q, double margin = 1e-6);

/// q = w + xi + yj + zk ↦ [[w + ix, y + iz], [-y + iz, w - ix]].
template <class T>
Matrix2<T> to_matrix(const Quaternion<T>& q) {
  Matrix2<T> m;
  m(0, 0) = Complex<T>(q.w, q.x);
  m(0, 1) = Complex<T>(q.y, q.z);
  m(1, 0) = Complex<T>(-q.y, q.z);
  m(1, 1) = Complex<T>(q.w, -q.x);
  return m;
}

/// Point of the abelian cover ℝ × SU(2) of U(2).
struct UnitaryPoint {
  double t_lift = 0.0;
  Quat su2 = Quat::one();

  /// e^{i t/2} · su2, with determinant e^{it}.
  CMatrix2 to_u2() const;
  Cplx det() const { return to_u2().det(); }
};

/// The printed closed-form frame 𝛂, 𝛃, 𝛄 on the Euler chart.
struct MaurerCartanFrame {
  KFormField alpha;
  KFormField beta;
  KFormField gamma;
};
MaurerCartanFrame mc_frame_closed_form();

/// g⁻¹dg expanded in (1, i, j, k); each component is a 1-form on the Euler
/// chart computed by AD through euler_to_su2.
struct GroupFrame {
  std::array<KFormField, 4> components;  // real, i, j, k
};
GroupFrame mc_frame_from_group();

/// dϑ + ϑ∧ϑ as four 2-forms (real, i, j, k).
std::array<KFormField, 4> flatness_forms(const GroupFrame& frame);

/// Affine reparametrization (t, α, β, γ) ↦ (t, 2α, 2β + π/2, 2γ) under which
/// the closed-form frame matches the group frame.
ChartMap frame_reconciliation_map();

/// Coefficients c with ϑ_row = Σ c[row][col] R*(printed_col), rows (i, j, k),
/// columns (𝛂, 𝛃, 𝛄).
using FrameCoefficients = std::array<std::array<double, 3>, 3>;
/// ϑ_i = ½R*𝛂, ϑ_j = ½R*𝛄, ϑ_k = ½R*𝛃.
inline constexpr FrameCoefficients kPinnedFrameCoefficients{
    {{0.5, 0.0, 0.0}, {0.0, 0.0, 0.5}, {0.0, 0.5, 0.0}}};

/// Least-squares fit of the frame coefficients over sample Euler points.
FrameCoefficients fit_frame_coefficients(std::span<const Point<double>> points);

/// Frame-reconciliation residual at one point with the pinned coefficients.
double frame_reconciliation_residual(const Point<double>& p);

struct StructureSign {
  double sign = 0.0;       // least-squares ratio, expected ±1
  double residual = 0.0;   // max |dX - sign · Y∧Z| over the samples
};
/// Measures s in d𝛂 = s 𝛃∧𝛄 (which = 0), d𝛃 = s 𝛄∧𝛂 (1), d𝛄 = s 𝛂∧𝛃 (2).
StructureSign measure_structure_sign(int which, std::span<const Point<double>> points);

/// ω = d𝛂 + 𝛂 ∧ η on the Euler chart, η = t⁻¹dt.
KFormField omega_u2();

// Minkowski events as Hermitian matrices and the Cayley transform.

template <class S>
Matrix2<S> hermitian_from_event(const Point<S>& e) {
  Matrix2<S> m;
  m(0, 0) = Complex<S>(e[0] + e[3]);
  m(0, 1) = Complex<S>(e[1], e[2]);
  m(1, 0) = Complex<S>(e[1], -e[2]);
  m(1, 1) = Complex<S>(e[0] - e[3]);
  return m;
}
CMatrix2 hermitian_from_event(const kerr::CartesianEvent& e);

/// t ± |x|, ascending.
std::array<double, 2> event_eigenvalues(const kerr::CartesianEvent& e);

/// (X - i)(X + i)⁻¹ for Hermitian X.
template <class S>
Matrix2<S> cayley_generic(const Matrix2<S>& x) {
  const Complex<S> i = Complex<S>::i();
  return (x - Matrix2<S>::scalar(i)) * (x + Matrix2<S>::scalar(i)).inverse();
}
CMatrix2 cayley(const CMatrix2& x);
/// i(I - U)⁻¹(I + U); SingularityError when U has an eigenvalue within 1e-10 of 1.
CMatrix2 cayley_inv(const CMatrix2& u);

/// Composite (t, r, θ, φ) ↦ C(X(ks(t, r, θ, φ))).
CMatrix2 cks(const kerr::KSPoint& p, const kerr::KerrParams& params);

/// Eigenvalues of a 2x2 complex matrix.
std::array<Cplx, 2> eigenvalues(const CMatrix2& m);

}  // namespace lcs::unitary
