#include "lcs/kerr.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace lcs::kerr {

namespace {

constexpr double kPi = std::numbers::pi;

double wrap_angle(double x) {
  double w = std::remainder(x, 2.0 * kPi);
  if (w <= -kPi) w += 2.0 * kPi;
  return w;
}

template <class S>
void check_sigma(const S& r, const S& z, double a) {
  // Σ = r² + a² cos²θ = r² + a² z²/r²
  const double rv = ad::value_of(r);
  const double zv = ad::value_of(z);
  const double sigma = rv * rv + (rv != 0.0 ? a * a * zv * zv / (rv * rv) : a * a);
  if (sigma < kSigmaMin) {
    throw SingularityError("point is within the ring singularity margin (Sigma = " +
                           std::to_string(sigma) + ")");
  }
}

}  // namespace

KerrParams::KerrParams(double a_value) : a(a_value) {
  if (!(a_value >= 0.0) || !std::isfinite(a_value)) {
    throw ConfigError("Kerr rotation parameter must be finite and non-negative, got " +
                      std::to_string(a_value));
  }
}

double j_plus(double x) {
  if (x == 0.0) throw DomainError("J+ is undefined at 0");
  return 0.5 * (x + 1.0 / x);
}

double j_minus(double x) {
  if (x == 0.0) throw DomainError("J- is undefined at 0");
  return 0.5 * (x - 1.0 / x);
}

double quartic_radius(double rho2, double z, double a) {
  const double p = rho2 - a * a;
  const double disc = std::sqrt(p * p + 4.0 * a * a * z * z);
  const double r2 = p >= 0.0 ? 0.5 * (p + disc) : (disc > 0.0 ? 2.0 * a * a * z * z / (disc - p) : 0.0);
  return std::sqrt(r2);
}

CartesianEvent ks_to_cartesian(const KSPoint& p, const KerrParams& params) {
  return CartesianEvent::from(lcs::kerr::ks_to_cartesian(p.coords(), params.a));
}

KSPoint cartesian_to_ks(const CartesianEvent& e, const KerrParams& params) {
  const double a = params.a;
  const double rho_xy = std::hypot(e.x, e.y);
  const double rho2 = e.x * e.x + e.y * e.y + e.z * e.z;
  double r = 0.0;
  if (std::fabs(e.z) < kPlaneTolerance) {
    if (std::fabs(rho_xy - a) < kPlaneTolerance * std::max(1.0, a)) {
      throw SingularityError("event lies on the ring singularity x^2 + y^2 = a^2, z = 0");
    }
    if (rho_xy < a) {
      throw BranchError(
          "event lies inside the disk z = 0, x^2 + y^2 < a^2 where r = 0 and theta is "
          "two-valued");
    }
    // The oblateness is undefined here; the quartic in r² still has its root.
    r = quartic_radius(rho2, 0.0, a);
  } else {
    r = radius_from_cartesian(e.x, e.y, e.z, a);
  }
  if (r == 0.0) throw SingularityError("radial coordinate vanishes at this event");
  // sin θ = ρ_xy / √(r² + a²), cos θ = z / r, both scaled by r √(r² + a²) > 0.
  const double theta = std::atan2(rho_xy * r, e.z * std::sqrt(r * r + a * a));
  // e^{iφ} ∝ (x + iy)(r + ia)
  const double phi = ad::atan2(e.x * a + e.y * r, e.x * r - e.y * a);
  return {e.t, r, theta, phi};
}

double roundtrip_residual(const KSPoint& p, const KerrParams& params) {
  const KSPoint back = cartesian_to_ks(ks_to_cartesian(p, params), params);
  return std::max({std::fabs(back.t - p.t), std::fabs(back.r - p.r),
                   std::fabs(back.theta - p.theta), std::fabs(wrap_angle(back.phi - p.phi))});
}

double oblateness(const CartesianEvent& e, const KerrParams& params) {
  if (e.z == 0.0) throw DomainError("oblateness is undefined on the plane z = 0");
  if (params.a == 0.0) throw DomainError("oblateness needs a > 0");
  const double rho2 = e.x * e.x + e.y * e.y + e.z * e.z;
  return (rho2 - params.a * params.a) / (2.0 * params.a * e.z);
}

DerivedScalars derived_scalars(const KSPoint& p, const KerrParams& params) {
  const double a = params.a;
  const double c = std::cos(p.theta);
  const double st = std::sin(p.theta);
  const CartesianEvent e = ks_to_cartesian(p, params);
  DerivedScalars d;
  d.sigma = p.r * p.r + a * a * c * c;
  if (d.sigma <= 0.0) throw SingularityError("Sigma = r^2 + a^2 cos^2(theta) vanishes");
  d.s = e.z >= 0.0 ? 1.0 : -1.0;
  if (e.z != 0.0 && a > 0.0) {
    d.oblateness = oblateness(e, params);
    d.kappa = std::asinh(d.s * *d.oblateness);
  }
  d.nu = -a * c / d.sigma;
  d.u = p.u();
  d.big_theta = a * p.t * st * st;
  d.f = 2.0 * p.r * p.r * p.r / (p.r * p.r * p.r * p.r + a * a * e.z * e.z);
  return d;
}

TwistVariants twist_variants(const KSPoint& p, const KerrParams& params) {
  const DerivedScalars d = derived_scalars(p, params);
  if (!d.oblateness) throw DomainError("twist variants need z != 0 and a > 0");
  const double o = *d.oblateness;
  return {d.nu, 2.0 * p.r / std::cosh(*d.kappa), 1.0 / std::sqrt(1.0 + o * o)};
}

ChartMap ks_map(const KerrParams& params) {
  const double a = params.a;
  return ChartMap::make(
      Chart::KerrSchild, Chart::Cartesian,
      [a](const auto& p) { return lcs::kerr::ks_to_cartesian(p, a); },
      [params](const Point<double>& y) {
        return cartesian_to_ks(CartesianEvent::from(y), params).coords();
      });
}

ChartMap null_to_ks_map() {
  return ChartMap::make(
      Chart::KerrNull, Chart::KerrSchild,
      [](const auto& p) {
        using S = scalar_of<decltype(p)>;
        return Point<S>{p[0], p[1] - p[0], p[2], p[3]};
      },
      [](const Point<double>& y) { return Point<double>{y[0], y[1] + y[0], y[2], y[3]}; });
}

KFormField lambda_form(const KerrParams& params) {
  const double a = params.a;
  return KFormField::from_coefficients(Chart::KerrSchild, 1, [a](const auto& p) {
    using S = scalar_of<decltype(p)>;
    const S st = ad::sin(p[2]);
    return std::array<S, 4>{S(1.0), S(1.0), S(0.0), a * st * st};
  });
}

KFormField lambda_cartesian_form(const KerrParams& params) {
  const double a = params.a;
  return KFormField::from_coefficients(Chart::Cartesian, 1, [a](const auto& e) {
    using S = scalar_of<decltype(e)>;
    const std::array<S, 4> l = lcs::kerr::lambda_vec(e, a, -1.0);
    return std::array<S, 4>{S(1.0), l[1], l[2], l[3]};
  });
}

KFormField lambda_lowered_form(const KerrParams& params) {
  const double a = params.a;
  return KFormField::from_coefficients(Chart::Cartesian, 1, [a](const auto& e) {
    using S = scalar_of<decltype(e)>;
    const std::array<S, 4> l = lcs::kerr::lambda_vec(e, a);
    return std::array<S, 4>{S(-1.0), l[1], l[2], l[3]};
  });
}

KFormField lambda_null_form(const KerrParams& params) {
  return pullback(null_to_ks_map(), lambda_form(params));
}

std::array<double, 4> lambda_vec(const CartesianEvent& e, const KerrParams& params) {
  const KSPoint p = cartesian_to_ks(e, params);
  check_sigma(p.r, e.z, params.a);
  return lambda_vec(e.coords(), params.a);
}

MetricField kerr_metric_cartesian(const KerrParams& params) {
  const double a = params.a;
  return MetricField::from_components(Chart::Cartesian, [a](const auto& e) {
    using S = scalar_of<decltype(e)>;
    const S r = radius_from_cartesian(e[1], e[2], e[3], a);
    check_sigma(r, e[3], a);
    const std::array<S, 4> l = lcs::kerr::lambda_vec(e, a);
    const S r2 = r * r;
    const S f = 2.0 * r2 * r / (r2 * r2 + a * a * e[3] * e[3]);
    // λ_i = η_ij λ^j
    const std::array<S, 4> low{S(-1.0), l[1], l[2], l[3]};
    Matrix4<S> g{};
    for (int i = 0; i < 4; ++i)
      for (int j = i; j < 4; ++j) g[i][j] = f * low[i] * low[j];
    g[0][0] = g[0][0] - 1.0;
    g[1][1] = g[1][1] + 1.0;
    g[2][2] = g[2][2] + 1.0;
    g[3][3] = g[3][3] + 1.0;
    return g;
  });
}

MetricField kerr_metric_ks(const KerrParams& params) {
  return pullback(ks_map(params), kerr_metric_cartesian(params));
}

namespace {

KFormField time_function(bool inverse) {
  return KFormField::from_coefficients(Chart::KerrSchild, 0, [inverse](const auto& p) {
    using S = scalar_of<decltype(p)>;
    if (std::fabs(ad::value_of(p[0])) < kLeeMargin) {
      throw SingularityError("omega is singular at t = " + std::to_string(ad::value_of(p[0])));
    }
    return inverse ? S(1.0) / p[0] : p[0];
  });
}

}  // namespace

KFormField omega_kerr(const KerrParams& params) {
  return wedge(time_function(false), ext_d(wedge(time_function(true), lambda_form(params))));
}

KFormField omega_kerr_printed(const KerrParams& params) {
  return wedge(time_function(true), ext_d(wedge(time_function(false), lambda_form(params))));
}

KFormField omega_kerr_split(const KerrParams& params) {
  const KFormField lambda = lambda_form(params);
  return ext_d(lambda) + wedge(lambda, lee_form(Chart::KerrSchild));
}

double contact_coefficient(const KerrParams& params, const KSPoint& p) {
  const KFormField lambda = lambda_form(params);
  const FormValue<double> v = wedge(lambda, ext_d(lambda))(p.coords());
  // On t = const, du restricts to dr.
  return v.at({1, 2, 3});
}

ContactReport contact_check(const KerrParams& params, double slice_t,
                            std::span<const KSPoint> samples) {
  const KFormField lambda = lambda_form(params);
  const KFormField contact = wedge(lambda, ext_d(lambda));
  ContactReport rep;
  rep.min_abs_coefficient = samples.empty() ? 0.0 : std::numeric_limits<double>::infinity();
  for (const KSPoint& s : samples) {
    KSPoint p = s;
    p.t = slice_t;
    const double c = contact(p.coords()).at({1, 2, 3});
    rep.min_abs_coefficient = std::min(rep.min_abs_coefficient, std::fabs(c));
    rep.max_residual =
        std::max(rep.max_residual, std::fabs(c - params.a * std::sin(2.0 * p.theta)));
    ++rep.samples;
  }
  return rep;
}

double flat_divergence(const KerrParams& params, const CartesianEvent& e) {
  if (e.z == 0.0) throw DomainError("flat divergence needs z != 0");
  (void)cartesian_to_ks(e, params);  // surfaces ring and branch errors
  const Point<D1> x = seed(e.coords());
  check_sigma(radius_from_cartesian(e.x, e.y, e.z, params.a), e.z, params.a);
  const std::array<D1, 4> l = lambda_vec(x, params.a);
  double div = 0.0;
  for (int i = 1; i < 4; ++i) div += l[i].partial(i);
  return div;
}

RicciResult ricci_residual(const KerrParams& params, const CartesianEvent& e) {
  const KSPoint p = cartesian_to_ks(e, params);
  const double c = std::cos(p.theta);
  const double sigma = p.r * p.r + params.a * params.a * c * c;
  RicciResult res;
  res.ill_conditioned = sigma < kSigmaIllConditioned;
  res.ricci = ricci_tensor(kerr_metric_cartesian(params), e.coords());
  for (const auto& row : res.ricci)
    for (double v : row) res.max_abs = std::max(res.max_abs, std::fabs(v));
  return res;
}

}  // namespace lcs::kerr
