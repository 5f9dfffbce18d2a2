#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "lcs/errors.hpp"
#include "lcs/exterior.hpp"
#include "lcs/kerr.hpp"

using namespace lcs;
constexpr double kPi = std::numbers::pi;

namespace {

template <class Fn>
KFormField scalar_field(Chart chart, Fn fn) {
  return KFormField::from_coefficients(chart, 0, fn);
}

KFormField dxi(Chart c, int i) { return coordinate_differential(c, i); }

// Plain cofactor expansion, independent of linalg::det.
double det4(const Matrix4<double>& m) {
  double d = 0.0;
  for (int c = 0; c < 4; ++c) {
    double minor[3][3];
    for (int i = 1; i < 4; ++i)
      for (int j = 0, k = 0; j < 4; ++j)
        if (j != c) minor[i - 1][k++] = m[i][j];
    const double m3 = minor[0][0] * (minor[1][1] * minor[2][2] - minor[1][2] * minor[2][1]) -
                      minor[0][1] * (minor[1][0] * minor[2][2] - minor[1][2] * minor[2][0]) +
                      minor[0][2] * (minor[1][0] * minor[2][1] - minor[1][1] * minor[2][0]);
    d += (c % 2 ? -1.0 : 1.0) * m[0][c] * m3;
  }
  return d;
}

}  // namespace

TEST_CASE("wedge antisymmetry") {
  const Point<double> p{0.3, 1.2, -0.4, 2.0};
  const Chart c = Chart::Cartesian;
  CHECK(max_abs(wedge(dxi(c, 1), dxi(c, 1))(p)) == 0.0);
  const auto xy = wedge(dxi(c, 1), dxi(c, 2))(p);
  const auto yx = wedge(dxi(c, 2), dxi(c, 1))(p);
  CHECK(max_abs(xy + yx) == 0.0);
  CHECK(xy.at({1, 2}) == 1.0);
}

TEST_CASE("wedge of a 1-form with a 2-form by term enumeration") {
  const double a = 2.0;
  const Chart c = Chart::KerrNull;  // (t, u, θ, φ)
  const auto sin2 = scalar_field(c, [a](const auto& p) { return a * ad::sin(p[2]) * ad::sin(p[2]); });
  const auto s2t = scalar_field(c, [a](const auto& p) { return a * ad::sin(2.0 * p[2]); });
  const KFormField one = dxi(c, 1) + wedge(sin2, dxi(c, 3));
  const KFormField two = wedge(s2t, wedge(dxi(c, 2), dxi(c, 3)));
  const auto v = wedge(one, two)(Point<double>{1.0, 1.0, kPi / 3, 0.0});
  // du ∧ (a sin2θ dθ∧dφ) survives; the dφ term meets dφ.
  CHECK(v.at({1, 2, 3}) == doctest::Approx(1.7320508075688772).epsilon(1e-14));
  CHECK(v.at({0, 1, 2}) == 0.0);
  CHECK(v.at({0, 2, 3}) == 0.0);
}

TEST_CASE("exterior derivative") {
  const Point<double> p{0.5, 2.0, kPi / 4, 0.3};
  CHECK(max_abs(ext_d(constant_function(Chart::KerrSchild, 7.0))(p)) == 0.0);

  const kerr::KerrParams params(2.0);
  const KFormField dl = ext_d(kerr::lambda_form(params));
  CHECK(dl(p).at({2, 3}) == doctest::Approx(2.0).epsilon(1e-14));

  const KFormField ddl = ext_d(dl);
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.1, 3.0);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) worst = std::max(worst, max_abs(ddl({u(rng), u(rng), u(rng) / 1.1, u(rng)})));
  CHECK(worst <= 1e-12);
}

TEST_CASE("Leibniz rule for a 1-form and a 2-form") {
  const Chart c = Chart::Cartesian;
  const auto f = scalar_field(c, [](const auto& p) { return ad::sin(p[1] * p[2]) + p[0] * p[3]; });
  const auto g = scalar_field(c, [](const auto& p) { return ad::exp(p[3] - p[1]); });
  const KFormField a = wedge(f, dxi(c, 2)) + wedge(g, dxi(c, 0));
  const KFormField b = wedge(g, wedge(dxi(c, 1), dxi(c, 3)));
  const KFormField lhs = ext_d(wedge(a, b));
  const KFormField rhs = wedge(ext_d(a), b) - wedge(a, ext_d(b));
  const Point<double> p{0.2, -0.7, 1.1, 0.4};
  CHECK(max_abs(lhs(p) - rhs(p)) < 1e-13);
}

TEST_CASE("pullback") {
  const Chart c = Chart::KerrSchild;
  const auto f = scalar_field(c, [](const auto& p) { return p[1] * ad::cos(p[2]) + p[3]; });
  const KFormField form = wedge(f, dxi(c, 3)) + dxi(c, 1);
  const Point<double> p{0.1, 1.5, 0.9, -2.0};
  CHECK(max_abs(pullback(ChartMap::identity(c), form)(p) - form(p)) == 0.0);

  const kerr::KerrParams params(1.0);
  const ChartMap ks = kerr::ks_map(params);
  const auto h = scalar_field(Chart::Cartesian, [](const auto& e) { return e[1] * e[1] + e[2] - e[3]; });
  const Point<double> e = ks(p);
  CHECK(pullback(ks, h)(p)[0] == doctest::Approx(e[1] * e[1] + e[2] - e[3]));

  // d commutes with pullback along the Kerr-Schild chart.
  const KFormField l = kerr::lambda_cartesian_form(params);
  CHECK(max_abs(pullback(ks, ext_d(l))(p) - ext_d(pullback(ks, l))(p)) < 1e-12);

  CHECK_THROWS_AS(pullback(ks, form), FormError);
}

TEST_CASE("Hodge star on Minkowski space") {
  const MetricField eta = minkowski_metric(Chart::Cartesian);
  const Point<double> p{0.0, 0.3, 0.2, 0.1};
  CHECK(volume_form(eta)(p).at({0, 1, 2, 3}) == 1.0);
  CHECK(volume_form(eta, Orientation::Negative)(p).at({0, 1, 2, 3}) == -1.0);

  // Double application: +1 on 1- and 3-forms, -1 on 0-, 2- and 4-forms for
  // signature (-,+,+,+).
  const Chart c = Chart::Cartesian;
  for (int i = 0; i < 4; ++i) {
    const KFormField w = dxi(c, i);
    CHECK(max_abs(hodge_star(eta, hodge_star(eta, w))(p) - w(p)) < 1e-15);
  }
  const KFormField tx = wedge(dxi(c, 0), dxi(c, 1));
  CHECK(max_abs(hodge_star(eta, hodge_star(eta, tx))(p) + tx(p)) < 1e-15);
  const KFormField xyz = wedge(dxi(c, 1), wedge(dxi(c, 2), dxi(c, 3)));
  CHECK(max_abs(hodge_star(eta, hodge_star(eta, xyz))(p) - xyz(p)) < 1e-15);
  CHECK(hodge_star(eta, hodge_star(eta, constant_function(c, 1.0)))(p)[0] == -1.0);
}

TEST_CASE("Kerr volume form") {
  const double a = 1.0, r = 2.0, th = kPi / 3;
  const MetricField g = kerr::kerr_metric_ks(kerr::KerrParams(a));
  const Point<double> p{0.0, r, th, 0.0};
  const double oracle = std::sqrt(-det4(g(p)));
  CHECK(oracle == doctest::Approx((r * r + a * a * std::cos(th) * std::cos(th)) * std::sin(th)));
  CHECK(oracle == doctest::Approx(3.6806079660838).epsilon(1e-12));
  CHECK(volume_form(g)(p).at({0, 1, 2, 3}) == doctest::Approx(oracle).epsilon(1e-13));

  const MetricField g0 = kerr::kerr_metric_ks(kerr::KerrParams(0.0));
  CHECK(volume_form(g0)(p).at({0, 1, 2, 3}) == doctest::Approx(r * r * std::sin(th)).epsilon(1e-13));
  const MetricField gs = kerr::kerr_metric_ks(kerr::KerrParams(1e-8));
  CHECK(volume_form(gs)(p).at({0, 1, 2, 3}) == doctest::Approx(r * r * std::sin(th)).epsilon(1e-12));
}

TEST_CASE("Ricci tensor of flat space is zero") {
  const auto ric = ricci_tensor(minkowski_metric(Chart::Cartesian), {0.0, 1.0, 2.0, 3.0});
  for (const auto& row : ric)
    for (double x : row) CHECK(x == 0.0);
}

TEST_CASE("errors") {
  const Chart c = Chart::Cartesian;
  CHECK_THROWS_AS(wedge(dxi(c, 0), dxi(Chart::KerrSchild, 1)), FormError);
  CHECK_THROWS_AS(dxi(c, 0) + wedge(dxi(c, 0), dxi(c, 1)), FormError);
  CHECK_THROWS_AS(coordinate_differential(c, 4), FormError);
  const KFormField top = wedge(dxi(c, 0), wedge(dxi(c, 1), wedge(dxi(c, 2), dxi(c, 3))));
  CHECK_THROWS_AS(wedge(top, dxi(c, 0)), FormError);
  CHECK_THROWS_AS(lee_form(c)({0.0, 1.0, 1.0, 1.0}), SingularityError);

  // A pullback under three exterior derivatives needs a fourth AD level.
  const auto f = scalar_field(c, [](const auto& p) { return p[1] * p[2] * p[3]; });
  const ChartMap id = ChartMap::identity(c);
  CHECK_NOTHROW(ext_d(ext_d(ext_d(f)))({0.0, 1.0, 1.0, 1.0}));
  const KFormField deep = ext_d(ext_d(ext_d(pullback(id, f))));
  CHECK_THROWS_AS(deep({0.0, 1.0, 1.0, 1.0}), ConfigError);
}
