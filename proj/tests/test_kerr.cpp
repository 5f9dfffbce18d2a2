#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "lcs/errors.hpp"
#include "lcs/kerr.hpp"

using namespace lcs;
using namespace lcs::kerr;
constexpr double kPi = std::numbers::pi;

namespace {

double minkowski_norm(const std::array<double, 4>& v) {
  return -v[0] * v[0] + v[1] * v[1] + v[2] * v[2] + v[3] * v[3];
}

// Positive root of r⁴ - (|x|² - a²) r² - a² z² = 0 by bisection on r².
double quartic_oracle(double x2, double z, double a) {
  auto f = [&](double s) { return s * s - (x2 - a * a) * s - a * a * z * z; };
  double lo = 0.0, hi = x2 + a * a + 1.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) > 0.0 ? hi : lo) = mid;
  }
  return std::sqrt(0.5 * (lo + hi));
}

}  // namespace

TEST_CASE("J functions") {
  CHECK(j_minus(1.0) == 0.0);
  CHECK(j_minus_inv(0.0) == 1.0);
  CHECK(std::fabs(j_minus(j_minus_inv(0.37)) - 0.37) <= 1e-12);
  CHECK(j_plus(2.0) == doctest::Approx(1.25));
  CHECK_THROWS_AS(j_minus(0.0), DomainError);
}

TEST_CASE("Kerr-Schild chart forward map") {
  const KerrParams p2(2.0);
  // x + iy = (r - ia) sin θ e^{iφ}
  const std::complex<double> w = std::complex<double>(1.0, -2.0) * std::sin(kPi / 2) * std::polar(1.0, 0.0);
  const CartesianEvent e = ks_to_cartesian({0.0, 1.0, kPi / 2, 0.0}, p2);
  CHECK(e.x == doctest::Approx(w.real()));
  CHECK(e.y == doctest::Approx(w.imag()));
  CHECK(std::fabs(e.z) < 1e-15);
  CHECK(e.x == doctest::Approx(1.0));
  CHECK(e.y == doctest::Approx(-2.0));

  const CartesianEvent pole = ks_to_cartesian({0.0, 1.7, 0.0, 0.4}, p2);
  CHECK(pole.x == 0.0);
  CHECK(pole.y == 0.0);
  CHECK(pole.z == doctest::Approx(1.7));

  // r = 0 sweeps the disk of radius a.
  for (double th : {0.3, 1.0, 2.0}) {
    const CartesianEvent d = ks_to_cartesian({0.0, 0.0, th, 0.8}, p2);
    const std::complex<double> oracle = std::complex<double>(0.0, -2.0) * std::sin(th) * std::polar(1.0, 0.8);
    CHECK(d.x == doctest::Approx(oracle.real()));
    CHECK(d.y == doctest::Approx(oracle.imag()));
    CHECK(d.z == 0.0);
    CHECK(d.x * d.x + d.y * d.y <= 4.0 + 1e-12);
  }
}

TEST_CASE("Kerr-Schild chart inverse") {
  const KerrParams p2(2.0);
  CHECK(roundtrip_residual({0.0, 1.0, kPi / 3, 0.4}, p2) <= 1e-9);
  CHECK(roundtrip_residual({0.0, 1.0, 2 * kPi / 3, -2.5}, p2) <= 1e-9);

  // Equatorial plane, outside the disk: the quartic gives the radius.
  const KSPoint eq = cartesian_to_ks({0.0, 1.0, -2.0, 0.0}, p2);
  CHECK(eq.r == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(eq.r == doctest::Approx(quartic_oracle(5.0, 0.0, 2.0)).epsilon(1e-12));
  CHECK(eq.theta == doctest::Approx(kPi / 2));

  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int i = 0; i < 50; ++i) {
    const double x = u(rng), y = u(rng), z = u(rng);
    const double rho2 = x * x + y * y + z * z;
    CHECK(std::fabs(quartic_radius(rho2, z, 2.0) - quartic_oracle(rho2, z, 2.0)) < 1e-10);
    CHECK(std::fabs(radius_from_cartesian(x, y, z, 2.0) - quartic_oracle(rho2, z, 2.0)) < 1e-10);
  }

  CHECK_THROWS_AS(cartesian_to_ks({0.0, 2.0, 0.0, 0.0}, p2), SingularityError);
  CHECK_THROWS_AS(cartesian_to_ks({0.0, 0.5, 0.5, 0.0}, p2), BranchError);
  CHECK_THROWS_AS(KerrParams(-1.0), ConfigError);
}

TEST_CASE("oblateness and its logarithm") {
  const KerrParams p2(2.0);
  // r = a cos θ at θ = π/3 gives 𝔬 = J₋(1) = 0.
  const DerivedScalars d = derived_scalars({0.0, 1.0, kPi / 3, 0.0}, p2);
  REQUIRE(d.oblateness);
  CHECK(std::fabs(*d.oblateness) < 1e-15);
  CHECK(std::fabs(*d.kappa) < 1e-15);
  CHECK(d.nu == doctest::Approx(-0.5).epsilon(1e-15));
  CHECK(d.sigma == doctest::Approx(2.0));

  const CartesianEvent e = ks_to_cartesian({0.3, 1.4, 0.7, 0.2}, p2);
  const double c = 3.7;
  const double o1 = oblateness(e, p2);
  const double o2 = oblateness({c * e.t, c * e.x, c * e.y, c * e.z}, KerrParams(c * 2.0));
  CHECK(std::fabs(o1 - o2) <= 1e-12 * std::max(1.0, std::fabs(o1)));

  const DerivedScalars eq = derived_scalars({0.0, 1.0, kPi / 2, 0.0}, p2);
  CHECK(!eq.oblateness.has_value() == (ks_to_cartesian({0.0, 1.0, kPi / 2, 0.0}, p2).z == 0.0));
}

TEST_CASE("null congruence") {
  const KerrParams p2(2.0);
  const auto l = lambda_form(p2)({0.0, 1.0, kPi / 2, 0.0});
  CHECK(l[0] == 1.0);
  CHECK(l[1] == 1.0);
  CHECK(std::fabs(l[2]) == 0.0);
  CHECK(l[3] == doctest::Approx(2.0));

  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> ur(0.2, 8.0), uth(0.05, 3.09), uph(-5.0, 5.0);
  for (double a : {0.5, 1.0, 2.0, 5.0}) {
    for (int i = 0; i < 40; ++i) {
      const CartesianEvent e = ks_to_cartesian({0.0, ur(rng), uth(rng), uph(rng)}, KerrParams(a));
      CHECK(std::fabs(minkowski_norm(lambda_vec(e, KerrParams(a)))) < 1e-12);
    }
  }

  // a = 0: the spatial part is the radial unit vector.
  const CartesianEvent e{0.0, 1.0, 2.0, 2.0};
  const auto l0 = lambda_vec(e, KerrParams(0.0));
  CHECK(l0[1] == doctest::Approx(1.0 / 3.0));
  CHECK(l0[2] == doctest::Approx(2.0 / 3.0));
  CHECK(l0[3] == doctest::Approx(2.0 / 3.0));
}

TEST_CASE("Kerr-Schild metric") {
  // a = 0: η + (2/r) l⊗l with l the η-lowered radial null vector (-1, x/r).
  const CartesianEvent e{0.5, 1.0, 2.0, 2.0};
  const auto g = kerr_metric_cartesian(KerrParams(0.0))(e.coords());
  const std::array<double, 4> l{-1.0, 1.0 / 3.0, 2.0 / 3.0, 2.0 / 3.0};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      const double eta = i == j ? (i == 0 ? -1.0 : 1.0) : 0.0;
      CHECK(g[i][j] == doctest::Approx(eta + 2.0 / 3.0 * l[i] * l[j]));
    }
}

TEST_CASE("ω on Kerr") {
  const KerrParams p2(2.0);
  const Point<double> p{1.0, 1.0, kPi / 3, 0.0};
  const auto w = omega_kerr(p2);
  // ω∧ω = 2 dλ∧λ∧η = 2a sin 2θ dθ∧dφ∧dr∧dt / t = -2a sin 2θ / t dt∧dr∧dθ∧dφ
  const double oracle = -2.0 * 2.0 * std::sin(2 * kPi / 3) / p[0];
  CHECK(wedge(w, w)(p).at({0, 1, 2, 3}) == doctest::Approx(oracle).epsilon(1e-13));

  const Point<double> q{2.5, 0.7, 1.1, -0.3};
  CHECK(max_abs(w(q) - omega_kerr_split(p2)(q)) < 1e-13);
  const auto eta = lee_form(Chart::KerrSchild);
  CHECK(max_abs(ext_d(w)(q) - wedge(w, eta)(q)) < 1e-13);
  CHECK_THROWS_AS(w({0.0, 1.0, 1.0, 0.0}), SingularityError);
}

TEST_CASE("contact coefficient") {
  CHECK(contact_coefficient(KerrParams(2.0), {0.0, 1.0, kPi / 4, 0.0}) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(std::fabs(contact_coefficient(KerrParams(2.0), {0.0, 1.0, kPi / 2, 0.0})) < 1e-12);
  CHECK(contact_coefficient(KerrParams(0.5), {0.0, 3.0, kPi / 6, 1.0}) ==
        doctest::Approx(0.5 * std::sin(kPi / 3)).epsilon(1e-14));
}

TEST_CASE("flat divergence") {
  const KerrParams p2(2.0);
  CHECK(flat_divergence(p2, ks_to_cartesian({0.0, 1.0, kPi / 3, 0.0}, p2)) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(flat_divergence(KerrParams(0.0), {0.0, 1.0, 2.0, 2.0}) == doctest::Approx(2.0 / 3.0).epsilon(1e-13));
  CHECK_THROWS_AS(flat_divergence(p2, {0.0, 3.0, 1.0, 0.0}), DomainError);
}

TEST_CASE("Ricci flatness") {
  const double r = 3.0;
  const RicciResult s = ricci_residual(KerrParams(0.0), {0.0, r / std::sqrt(3.0), r / std::sqrt(3.0), r / std::sqrt(3.0)});
  CHECK(s.max_abs <= 1e-7);
  const RicciResult k = ricci_residual(KerrParams(2.0), {0.0, 3.0, 1.0, 2.0});
  CHECK(k.max_abs <= 1e-6);
  CHECK(!k.ill_conditioned);
}
