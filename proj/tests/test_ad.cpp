#include <doctest.h>

#include <cmath>
#include <vector>

#include "lcs/ad.hpp"
#include "lcs/errors.hpp"

using namespace lcs;
using ad::Scalar;
using ad::Scalar2;

TEST_CASE("seeding gives identity partials") {
  const std::vector<double> one{3.0};
  const auto v = ad::make_vars(one);
  REQUIRE(v.size() == 1);
  CHECK(v[0].value() == 3.0);
  CHECK(v[0].partial(0) == 1.0);

  const std::vector<double> two{1.0, 2.0};
  const auto w = ad::make_vars(two);
  CHECK(w[0].partial(0) == 1.0);
  CHECK(w[0].partial(1) == 0.0);
  CHECK(w[1].partial(0) == 0.0);
  CHECK(w[1].partial(1) == 1.0);
  CHECK((w[0] * w[1]).partial(0) == 2.0);
}

TEST_CASE("elementary derivatives") {
  const Scalar z = Scalar::variable(0.0, 0, 1);
  CHECK(ad::asinh(z).value() == 0.0);
  CHECK(ad::asinh(z).partial(0) == 1.0);
  CHECK(ad::sin(z).partial(0) == 1.0);

  const Scalar x = Scalar::variable(0.75, 0, 1);
  const double d = ad::asinh(x).partial(0);
  CHECK(d == doctest::Approx(0.8).epsilon(1e-15));
  // central difference
  const double h = 1e-6;
  const double fd = (std::asinh(0.75 + h) - std::asinh(0.75 - h)) / (2 * h);
  CHECK(std::fabs(d - fd) < 1e-8);
}

TEST_CASE("quotient, sqrt, log, atan2 against closed forms") {
  const Scalar x = Scalar::variable(1.3, 0, 1);
  CHECK(ad::sqrt(x).partial(0) == doctest::Approx(0.5 / std::sqrt(1.3)));
  CHECK(ad::log(x).partial(0) == doctest::Approx(1.0 / 1.3));
  CHECK((1.0 / x).partial(0) == doctest::Approx(-1.0 / (1.3 * 1.3)));
  const auto v = ad::make_vars(std::vector<double>{0.4, -0.9});
  const Scalar a = ad::atan2(v[0], v[1]);
  const double r2 = 0.4 * 0.4 + 0.9 * 0.9;
  CHECK(a.partial(0) == doctest::Approx(-0.9 / r2));
  CHECK(a.partial(1) == doctest::Approx(-0.4 / r2));
}

TEST_CASE("Hessians") {
  {
    const auto v = ad::make_nested_vars(std::vector<double>{3.0});
    const auto h = ad::hessian(v[0] * v[0]);
    CHECK(h[0][0] == 2.0);
  }
  {
    const auto v = ad::make_nested_vars(std::vector<double>{1.0, 1.0});
    const auto h = ad::hessian(v[0] * v[1]);
    CHECK(h[0][0] == 0.0);
    CHECK(h[0][1] == 1.0);
    CHECK(h[1][0] == 1.0);
    CHECK(h[1][1] == 0.0);
  }
  {
    const double x0 = 0.3, y0 = 0.7;
    const auto v = ad::make_nested_vars(std::vector<double>{x0, y0});
    const auto h = ad::hessian(ad::sin(v[0]) * ad::cos(v[1]));
    auto f = [](double x, double y) { return std::sin(x) * std::cos(y); };
    const double e = 1e-4;
    const double fxx = (f(x0 + e, y0) - 2 * f(x0, y0) + f(x0 - e, y0)) / (e * e);
    const double fyy = (f(x0, y0 + e) - 2 * f(x0, y0) + f(x0, y0 - e)) / (e * e);
    const double fxy = (f(x0 + e, y0 + e) - f(x0 + e, y0 - e) - f(x0 - e, y0 + e) +
                        f(x0 - e, y0 - e)) / (4 * e * e);
    CHECK(std::fabs(h[0][0] - fxx) < 1e-6);
    CHECK(std::fabs(h[1][1] - fyy) < 1e-6);
    CHECK(std::fabs(h[0][1] - fxy) < 1e-6);
    CHECK(h[0][1] == h[1][0]);
  }
}

TEST_CASE("domain and configuration errors") {
  CHECK_THROWS_AS(ad::log(Scalar::variable(-1.0, 0, 1)), DomainError);
  CHECK_THROWS_AS(ad::sqrt(Scalar::variable(-1e-3, 0, 1)), DomainError);
  CHECK_THROWS_AS(Scalar::variable(1.0, 4, 4), ConfigError);
  CHECK_THROWS_AS(Scalar::variable(1.0, 0, 5), ConfigError);
}
