#pragma once

// Kerr space-time in Kerr–Schild form (m = 1).
//
// Charts: KerrSchild (t, r, θ, φ) with φ unwrapped on ℝ, KerrNull (t, u, θ, φ)
// with u = t + r, and Cartesian (t, x, y, z) where
//   x + iy = (r - ia) sin θ e^{iφ},   z = r cos θ.
// The inverse chart goes through the oblateness 𝔬 = (|x|² - a²)/(2az):
//   q = J₋⁻¹(s𝔬),  r² = a|z| q,  s = sign z.

#include <array>
#include <optional>
#include <span>

#include "lcs/ad.hpp"
#include "lcs/exterior.hpp"

namespace lcs::kerr {

/// Rotation parameter a (a length); the mass is fixed to 1. a = 0 is accepted
/// as the Schwarzschild limit wherever a formula stays finite.
struct KerrParams {
  explicit KerrParams(double a);
  double a;
  static constexpr double m = 1.0;
};

struct KSPoint {
  double t = 0.0;
  double r = 1.0;
  double theta = 1.0;
  double phi = 0.0;

  double u() const { return t + r; }
  Point<double> coords() const { return {t, r, theta, phi}; }
  static KSPoint from(const Point<double>& p) { return {p[0], p[1], p[2], p[3]}; }
};

struct CartesianEvent {
  double t = 0.0;
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  Point<double> coords() const { return {t, x, y, z}; }
  static CartesianEvent from(const Point<double>& p) { return {p[0], p[1], p[2], p[3]}; }
};

struct DerivedScalars {
  double s = 1.0;                     // sign of z
  std::optional<double> oblateness;   // undefined on z = 0
  std::optional<double> kappa;        // arcsinh(s 𝔬)
  double nu = 0.0;                    // twist -a cos θ / Σ
  double u = 0.0;                     // t + r
  double big_theta = 0.0;             // a t sin²θ
  double f = 0.0;                     // 2r³/(r⁴ + a²z²)
  double sigma = 0.0;                 // r² + a² cos²θ
};

// Margins of the singular loci.
inline constexpr double kSigmaMin = 1e-8;
inline constexpr double kSigmaIllConditioned = 1e-6;
inline constexpr double kPlaneTolerance = 1e-12;

// J±(x) = (x ± 1/x)/2.
double j_plus(double x);
double j_minus(double x);

/// J₋⁻¹(x) = x + √(x² + 1) > 0, evaluated without cancellation for x < 0.
template <class S>
S j_minus_inv(const S& x) {
  const S root = ad::sqrt(x * x + 1.0);
  if (ad::value_of(x) >= 0.0) return x + root;
  return 1.0 / (root - x);
}

template <class S>
Point<S> ks_to_cartesian(const Point<S>& p, double a) {
  const S& r = p[1];
  const S st = ad::sin(p[2]);
  const S cp = ad::cos(p[3]);
  const S sp = ad::sin(p[3]);
  return {p[0], (r * cp + a * sp) * st, (r * sp - a * cp) * st, r * ad::cos(p[2])};
}

/// Radial coordinate from a Cartesian position through the oblateness,
/// z ≠ 0 and a > 0.
template <class S>
S radius_from_cartesian(const S& x, const S& y, const S& z, double a) {
  const S rho2 = x * x + y * y + z * z;
  if (a == 0.0) return ad::sqrt(rho2);
  const double s = ad::value_of(z) > 0.0 ? 1.0 : -1.0;
  const S oblate = (rho2 - a * a) / (2.0 * a * z);
  const S q = j_minus_inv(s * oblate);
  return ad::sqrt(a * s * z * q);
}

/// Positive root of r⁴ - (|x|² - a²) r² - a² z² = 0 in cancellation-free form.
double quartic_radius(double rho2, double z, double a);

CartesianEvent ks_to_cartesian(const KSPoint& p, const KerrParams& params);
/// Inverse chart with r > 0 and φ ∈ (-π, π]. Throws SingularityError on the
/// ring and BranchError inside the disk z = 0, x² + y² < a².
KSPoint cartesian_to_ks(const CartesianEvent& e, const KerrParams& params);
/// Coordinate residual of the round trip with φ compared modulo 2π.
double roundtrip_residual(const KSPoint& p, const KerrParams& params);

/// 𝔬(x) = (|x|² - a²)/(2az).
double oblateness(const CartesianEvent& e, const KerrParams& params);
DerivedScalars derived_scalars(const KSPoint& p, const KerrParams& params);

/// The three printed expressions for the twist, evaluated independently.
struct TwistVariants {
  double closed_form;  // -a cos θ / (r² + a² cos² θ)
  double sech_form;    // 2r sech ϰ
  double oblate_form;  // (1 + 𝔬²)^{-1/2}
};
TwistVariants twist_variants(const KSPoint& p, const KerrParams& params);

/// KerrSchild -> Cartesian, with the closed-form inverse.
ChartMap ks_map(const KerrParams& params);
/// KerrNull (t, u, θ, φ) -> KerrSchild (t, u - t, θ, φ).
ChartMap null_to_ks_map();

/// λ = du + a sin²θ dφ on the KerrSchild chart (du = dt + dr).
KFormField lambda_form(const KerrParams& params);
/// du + a sin²θ dφ written on the Cartesian chart:
///   dt + ((rx - ay) dx + (ry + ax) dy)/(r² + a²) + (z/r) dz.
/// The spatial part is 𝛌 with a replaced by -a, matching x + iy = (r - ia)...
KFormField lambda_cartesian_form(const KerrParams& params);
/// η(𝛌) = -dt + l_x dx + l_y dy + l_z dz from the printed null field.
KFormField lambda_lowered_form(const KerrParams& params);
/// λ pulled back to the KerrNull chart.
KFormField lambda_null_form(const KerrParams& params);

/// Null field (1, (rx+ay)/(r²+a²), (ry-ax)/(r²+a²), z/r) at a Cartesian event.
/// handedness = -1 flips the sign of the a-terms only (r is unchanged).
template <class S>
std::array<S, 4> lambda_vec(const Point<S>& e, double a, double handedness = 1.0) {
  const S r = radius_from_cartesian(e[1], e[2], e[3], a);
  const S r2a2 = r * r + a * a;
  const double b = handedness * a;
  return {S(1.0), (r * e[1] + b * e[2]) / r2a2, (r * e[2] - b * e[1]) / r2a2, e[3] / r};
}
std::array<double, 4> lambda_vec(const CartesianEvent& e, const KerrParams& params);

/// g = η + (2r³/(r⁴ + a²z²)) λ⊗λ on the Cartesian chart.
MetricField kerr_metric_cartesian(const KerrParams& params);
/// Pullback of the Cartesian metric to the KerrSchild chart.
MetricField kerr_metric_ks(const KerrParams& params);

/// ω = t d(t⁻¹λ) = dλ + λ∧η on the KerrSchild chart; dω = η∧ω.
KFormField omega_kerr(const KerrParams& params);
/// t⁻¹ d(tλ) = dλ - λ∧η, whose Lee form is -η.
KFormField omega_kerr_printed(const KerrParams& params);
/// ω = dλ + λ ∧ η, built independently of omega_kerr.
KFormField omega_kerr_split(const KerrParams& params);

/// du∧dθ∧dφ coefficient of λ∧dλ restricted to a slice t = const.
double contact_coefficient(const KerrParams& params, const KSPoint& p);

struct ContactReport {
  double min_abs_coefficient = 0.0;
  double max_residual = 0.0;  // vs a sin 2θ
  std::size_t samples = 0;
};
/// Samples are (r, θ, φ) positions; their t is replaced by slice_t.
ContactReport contact_check(const KerrParams& params, double slice_t,
                            std::span<const KSPoint> samples);

/// Flat divergence Σᵢ ∂λⁱ/∂xⁱ of the Cartesian null field.
double flat_divergence(const KerrParams& params, const CartesianEvent& e);

struct RicciResult {
  double max_abs = 0.0;
  bool ill_conditioned = false;  // Σ below kSigmaIllConditioned
  Matrix4<double> ricci{};
};
RicciResult ricci_residual(const KerrParams& params, const CartesianEvent& e);

}  // namespace lcs::kerr
