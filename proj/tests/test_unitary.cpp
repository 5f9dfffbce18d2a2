#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "lcs/errors.hpp"
#include "lcs/unitary.hpp"

using namespace lcs;
using namespace lcs::unitary;
constexpr double kPi = std::numbers::pi;

namespace {

std::vector<Point<double>> euler_points(int n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> t(0.1, 10.0), ang(-kPi, kPi), beta(0.01, kPi - 0.01);
  std::vector<Point<double>> pts(n);
  for (auto& p : pts) p = {t(rng), ang(rng), beta(rng), ang(rng)};
  return pts;
}

bool near(const Cplx& z, double re, double im, double tol = 1e-14) {
  return std::fabs(z.re - re) < tol && std::fabs(z.im - im) < tol;
}

}  // namespace

TEST_CASE("Euler parametrization of SU(2)") {
  const Quat id = euler_to_su2(0.0, 0.0, 0.0);
  CHECK(id.w == 1.0);
  CHECK(id.x == 0.0);
  const Quat qa = euler_to_su2(0.9, 0.0, 0.0);
  CHECK(qa.w == doctest::Approx(std::cos(0.9)));
  CHECK(qa.x == doctest::Approx(std::sin(0.9)));
  CHECK(std::fabs(euler_to_su2(0.3, 1.1, -0.7).norm2() - 1.0) < 1e-14);

  // The matrix representation is a homomorphism.
  const Quat p = euler_to_su2(0.3, 1.1, -0.7), q = euler_to_su2(-1.2, 0.4, 2.2);
  CHECK(max_abs_diff(to_matrix(p * q), to_matrix(p) * to_matrix(q)) < 1e-15);
  CHECK(near(to_matrix(p).det(), 1.0, 0.0));
}

TEST_CASE("Euler angle recovery") {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> n;
  int recovered = 0;
  for (int i = 0; i < 200; ++i) {
    Quat q{n(rng), n(rng), n(rng), n(rng)};
    const double s = std::sqrt(q.norm2());
    q = {q.w / s, q.x / s, q.y / s, q.z / s};
    try {
      const EulerAngles e = su2_to_euler(q);
      const Quat b = euler_to_su2(e.alpha, e.beta, e.gamma);
      CHECK(std::fabs(b.w - q.w) + std::fabs(b.x - q.x) + std::fabs(b.y - q.y) + std::fabs(b.z - q.z) < 1e-9);
      ++recovered;
    } catch (const DomainError&) {
    }
  }
  CHECK(recovered > 190);
  CHECK_THROWS_AS(su2_to_euler(euler_to_su2(0.2, kPi / 4, 0.1)), DomainError);
}

TEST_CASE("closed-form frame") {
  const auto f = mc_frame_closed_form();
  const auto a = f.alpha({1.0, 0.4, kPi / 2, 0.7});
  CHECK(a[1] == 1.0);
  CHECK(std::fabs(a[3]) < 1e-16);
  const auto b = f.alpha({1.0, 0.2, kPi / 3, 0.5});
  CHECK(b[1] == 1.0);
  CHECK(b[3] == doctest::Approx(0.5).epsilon(1e-15));
  const auto g = f.gamma({1.0, 0.0, 0.8, 0.5});
  CHECK(g[2] == 1.0);
  CHECK(g[3] == 0.0);
}

TEST_CASE("Maurer-Cartan flatness and structure equations") {
  const auto pts = euler_points(50, 17);
  const auto flat = flatness_forms(mc_frame_from_group());
  double worst = 0.0;
  for (const auto& p : pts)
    for (const auto& w : flat) worst = std::max(worst, max_abs(w(p)));
  CHECK(worst <= 1e-10);

  for (int which = 0; which < 3; ++which) {
    const StructureSign s = measure_structure_sign(which, pts);
    CHECK(s.sign == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(s.residual <= 1e-10);
  }

  const FrameCoefficients c = fit_frame_coefficients(pts);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(std::fabs(c[i][j] - kPinnedFrameCoefficients[i][j]) < 1e-10);
  for (const auto& p : pts) CHECK(frame_reconciliation_residual(p) < 1e-10);
}

TEST_CASE("ω on U(2)") {
  const KFormField w = omega_u2();
  const KFormField eta = lee_form(Chart::Euler);
  const auto f = mc_frame_closed_form();
  const KFormField top = 2.0 * wedge(f.alpha, wedge(f.beta, wedge(f.gamma, eta)));
  for (const auto& p : euler_points(30, 23)) {
    CHECK(max_abs(ext_d(w)(p) - wedge(w, eta)(p)) < 1e-12);
    const double ww = wedge(w, w)(p).at({0, 1, 2, 3});
    CHECK(std::fabs(ww - top(p).at({0, 1, 2, 3})) < 1e-12);
    CHECK(std::fabs(ww) > 0.0);
  }
}

TEST_CASE("abelian cover determinant") {
  const UnitaryPoint u{0.8, euler_to_su2(0.1, 0.2, 0.3)};
  CHECK(near(u.det(), std::cos(0.8), std::sin(0.8)));
}

TEST_CASE("event matrices") {
  const kerr::CartesianEvent e{1.0, 1.0, 2.0, 2.0};
  const CMatrix2 x = hermitian_from_event(e);
  CHECK(near(x.det(), -8.0, 0.0));
  const auto ev = event_eigenvalues(e);
  CHECK(std::max(ev[0], ev[1]) == doctest::Approx(4.0).epsilon(1e-14));
  CHECK(std::min(ev[0], ev[1]) == doctest::Approx(-2.0).epsilon(1e-14));

  const CMatrix2 z = hermitian_from_event(kerr::CartesianEvent{0.0, 0.0, 0.0, 0.0});
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) CHECK(near(z(i, j), 0.0, 0.0));
  const CMatrix2 t = hermitian_from_event(kerr::CartesianEvent{2.5, 0.0, 0.0, 0.0});
  CHECK(max_abs_diff(t, Matrix2<double>::scalar(Cplx(2.5))) == 0.0);
}

TEST_CASE("Cayley transform") {
  const CMatrix2 zero = Matrix2<double>::scalar(Cplx(0.0));
  CHECK(max_abs_diff(cayley(zero), Matrix2<double>::scalar(Cplx(-1.0))) < 1e-15);
  CHECK(max_abs_diff(cayley(CMatrix2::identity()), Matrix2<double>::scalar(Cplx(0.0, -1.0))) < 1e-15);

  const CMatrix2 x = hermitian_from_event(kerr::CartesianEvent{0.7, -1.3, 0.4, 2.1});
  const CMatrix2 u = cayley(x);
  CHECK(max_abs_diff(u * u.adjoint(), CMatrix2::identity()) < 1e-12);
  CHECK(max_abs_diff(cayley_inv(u), x) < 1e-10);
  CHECK_THROWS_AS(cayley_inv(CMatrix2::identity()), SingularityError);

  const CMatrix2 k = cks({0.3, 1.5, 1.0, 0.2}, kerr::KerrParams(2.0));
  CHECK(max_abs_diff(k * k.adjoint(), CMatrix2::identity()) < 1e-12);
}
