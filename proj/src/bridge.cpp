#include "lcs/bridge.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "lcs/unitary.hpp"

namespace lcs::bridge {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

IdentityResidual compare(const KFormField& lhs, const KFormField& rhs,
                         std::span<const Point<double>> points) {
  IdentityResidual out;
  for (const auto& p : points) {
    const FormValue<double> l = lhs(p);
    const FormValue<double> r = rhs(p);
    const double diff = max_abs(l - r);
    out.max_abs = std::max(out.max_abs, diff);
    out.max_rel = std::max(out.max_rel, diff / std::max(max_abs(r), 1.0));
    ++out.samples;
  }
  return out;
}

}  // namespace

ReparamMatrix::ReparamMatrix(double a_value)
    : a(a_value), m{{{1.0, 0.0, a_value / 2.0}, {0.0, 2.0, 0.0}, {0.0, 0.0, -a_value / 2.0}}} {}

bool ReparamMatrix::integral() const {
  for (const auto& row : m)
    for (double v : row)
      if (v != std::round(v)) return false;
  return true;
}

std::array<double, 3> ReparamMatrix::apply(const std::array<double, 3>& v) const {
  std::array<double, 3> out{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) out[i] += m[i][j] * v[j];
  return out;
}

ChartMap substitution_map(double a) {
  if (a == 0.0 || !std::isfinite(a)) {
    throw ConfigError("substitution is degenerate for a = 0 (det [a] = -a)");
  }
  return ChartMap::make(
      Chart::KerrNull, Chart::Euler,
      [a](const auto& p) {
        using S = scalar_of<decltype(p)>;
        return Point<S>{p[0], p[1] + 0.5 * a * p[3], 2.0 * p[2], -0.5 * a * p[3]};
      },
      [a](const Point<double>& y) {
        const double phi = -2.0 * y[3] / a;
        return Point<double>{y[0], y[1] + y[3], 0.5 * y[2], phi};
      });
}

IdentityResidual verify_lambda_identity(double a, std::span<const Point<double>> null_points) {
  const KFormField lhs = kerr::lambda_null_form(kerr::KerrParams(a));
  const KFormField rhs = pullback(substitution_map(a), unitary::mc_frame_closed_form().alpha);
  return compare(lhs, rhs, null_points);
}

IdentityResidual verify_omega_identity(double a, std::span<const Point<double>> null_points) {
  const KFormField lhs = pullback(kerr::null_to_ks_map(), kerr::omega_kerr(kerr::KerrParams(a)));
  const KFormField rhs = pullback(substitution_map(a), unitary::omega_u2());
  return compare(lhs, rhs, null_points);
}

IdentityResidual verify_naturality(double a, std::span<const Point<double>> null_points) {
  const ChartMap sub = substitution_map(a);
  const KFormField alpha = unitary::mc_frame_closed_form().alpha;
  return compare(pullback(sub, ext_d(alpha)), ext_d(pullback(sub, alpha)), null_points);
}

CharPolyReport char_poly_a(double a) {
  // Upper triangular: eigenvalues 1, 2, -a/2.
  const double l1 = 1.0, l2 = 2.0, l3 = -0.5 * a;
  CharPolyReport rep;
  rep.a = a;
  rep.computed = {2.0, -2.0 * (l1 + l2 + l3), 2.0 * (l1 * l2 + l1 * l3 + l2 * l3),
                  -2.0 * l1 * l2 * l3};
  rep.printed = {2.0, a - 6.0, 4.0 - 3.0 * a, a};
  for (int i = 0; i < 4; ++i) {
    rep.matches[i] = std::fabs(rep.computed[i] - rep.printed[i]) <= 1e-12 * std::max(1.0, std::fabs(rep.computed[i]));
  }
  return rep;
}

CoverMap::CoverMap(const IntMatrix& m) : m_(m) {
  det_ = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
         m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
  if (det_ == 0) throw DomainError("torus map has determinant 0 and is not a covering");
}

CoverMap CoverMap::from_real(const Matrix3& m) {
  IntMatrix im{};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      const double v = m[i][j];
      if (!std::isfinite(v) || v != std::round(v)) {
        throw DomainError("matrix entry (" + std::to_string(i) + "," + std::to_string(j) +
                          ") = " + std::to_string(v) + " is not an integer; not a torus map");
      }
      im[i][j] = static_cast<long long>(v);
    }
  }
  return CoverMap(im);
}

CoverMap CoverMap::doubling() { return CoverMap({{{1, 0, 1}, {0, 2, 0}, {0, 0, -1}}}); }

std::array<double, 3> CoverMap::apply(const std::array<double, 3>& x) const {
  std::array<double, 3> out{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) out[i] += static_cast<double>(m_[i][j]) * x[j];
  return out;
}

double wrap_2pi(double x) {
  double w = std::fmod(x, kTwoPi);
  if (w < 0.0) w += kTwoPi;
  if (w >= kTwoPi) w -= kTwoPi;
  return w;
}

double torus_distance(const std::array<double, 3>& x, const std::array<double, 3>& y) {
  double d = 0.0;
  for (int i = 0; i < 3; ++i) {
    d = std::max(d, std::fabs(std::remainder(x[i] - y[i], kTwoPi)));
  }
  return d;
}

std::vector<std::array<double, 3>> torus_cover_preimages(const CoverMap& cover,
                                                         const std::array<double, 3>& target) {
  const auto& m = cover.matrix();
  const long long d = cover.det();
  // adj(M) with M adj(M) = d I
  CoverMap::IntMatrix adj{};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      const int r0 = (j + 1) % 3, r1 = (j + 2) % 3;
      const int c0 = (i + 1) % 3, c1 = (i + 2) % 3;
      adj[i][j] = m[r0][c0] * m[r1][c1] - m[r0][c1] * m[r1][c0];
    }
  }
  // x = adj (target + 2πn) / d; n ranges over representatives of ℤ³ / Mℤ³,
  // all of which occur among n ∈ [0, |d|)³ because dℤ³ ⊂ Mℤ³.
  const long long n_max = d < 0 ? -d : d;
  std::vector<std::array<double, 3>> out;
  for (long long n0 = 0; n0 < n_max; ++n0) {
    for (long long n1 = 0; n1 < n_max; ++n1) {
      for (long long n2 = 0; n2 < n_max; ++n2) {
        const std::array<double, 3> rhs{target[0] + kTwoPi * n0, target[1] + kTwoPi * n1,
                                        target[2] + kTwoPi * n2};
        std::array<double, 3> x{};
        for (int i = 0; i < 3; ++i) {
          double s = 0.0;
          for (int j = 0; j < 3; ++j) s += static_cast<double>(adj[i][j]) * rhs[j];
          x[i] = wrap_2pi(s / static_cast<double>(d));
        }
        const bool seen = std::any_of(out.begin(), out.end(), [&](const auto& y) {
          return torus_distance(x, y) < 1e-9;
        });
        if (!seen) out.push_back(x);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace lcs::bridge
