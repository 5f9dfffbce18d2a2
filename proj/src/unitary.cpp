#include "lcs/unitary.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

namespace lcs::unitary {

namespace {

constexpr double kPi = std::numbers::pi;

// e_a e_b = sign · e_index for the basis (1, i, j, k).
struct BasisProduct {
  int index;
  double sign;
};

constexpr BasisProduct kQuaternionTable[4][4] = {
    {{0, 1}, {1, 1}, {2, 1}, {3, 1}},
    {{1, 1}, {0, -1}, {3, 1}, {2, -1}},
    {{2, 1}, {3, -1}, {0, -1}, {1, 1}},
    {{3, 1}, {2, 1}, {1, -1}, {0, -1}},
};

KFormField group_component(int c, bool inverse) {
  return KFormField::from_coefficients(Chart::Euler, 0, [c, inverse](const auto& p) {
    auto g = euler_to_su2(p[1], p[2], p[3]);
    if (inverse) g = g.inverse();
    return g[c];
  });
}

}  // namespace

EulerAngles su2_to_euler(const Quat& q, double margin) {
  const double n = std::sqrt(q.norm2());
  const double w = q.w / n, x = q.x / n, y = q.y / n, z = q.z / n;
  // q ↔ rotation Rz(2γ) Ry(2β) Rx(2α)
  const double sin_pitch = 2.0 * (w * y - z * x);
  if (1.0 - std::fabs(sin_pitch) < margin) {
    throw DomainError("Euler chart degenerates at cos(2 beta) = 0");
  }
  EulerAngles e;
  e.alpha = 0.5 * std::atan2(2.0 * (w * x + y * z), 1.0 - 2.0 * (x * x + y * y));
  e.beta = 0.5 * std::asin(std::clamp(sin_pitch, -1.0, 1.0));
  e.gamma = 0.5 * std::atan2(2.0 * (w * z + x * y), 1.0 - 2.0 * (y * y + z * z));
  const Quat back = euler_to_su2(e.alpha, e.beta, e.gamma);
  const double dot = back.w * w + back.x * x + back.y * y + back.z * z;
  if (dot < 0.0) e.alpha += kPi;  // e^{(α+π)i} = -e^{αi}
  return e;
}

CMatrix2 UnitaryPoint::to_u2() const {
  return expi(0.5 * t_lift) * to_matrix(su2);
}

MaurerCartanFrame mc_frame_closed_form() {
  // 𝛂 = dα + cos β dγ
  KFormField alpha = KFormField::from_coefficients(Chart::Euler, 1, [](const auto& p) {
    using S = scalar_of<decltype(p)>;
    return std::array<S, 4>{S(0.0), S(1.0), S(0.0), ad::cos(p[2])};
  });
  // 𝛃 = -sin α dβ + cos α sin β dγ
  KFormField beta = KFormField::from_coefficients(Chart::Euler, 1, [](const auto& p) {
    using S = scalar_of<decltype(p)>;
    return std::array<S, 4>{S(0.0), S(0.0), -ad::sin(p[1]), ad::cos(p[1]) * ad::sin(p[2])};
  });
  // 𝛄 = cos α dβ + sin α sin β dγ
  KFormField gamma = KFormField::from_coefficients(Chart::Euler, 1, [](const auto& p) {
    using S = scalar_of<decltype(p)>;
    return std::array<S, 4>{S(0.0), S(0.0), ad::cos(p[1]), ad::sin(p[1]) * ad::sin(p[2])};
  });
  return {alpha, beta, gamma};
}

GroupFrame mc_frame_from_group() {
  std::array<KFormField, 4> g_inv{group_component(0, true), group_component(1, true),
                                  group_component(2, true), group_component(3, true)};
  std::array<KFormField, 4> dg{ext_d(group_component(0, false)), ext_d(group_component(1, false)),
                               ext_d(group_component(2, false)),
                               ext_d(group_component(3, false))};
  std::array<KFormField, 4> out{zero_form(Chart::Euler, 1), zero_form(Chart::Euler, 1),
                                zero_form(Chart::Euler, 1), zero_form(Chart::Euler, 1)};
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      const BasisProduct e = kQuaternionTable[a][b];
      out[e.index] = out[e.index] + e.sign * wedge(g_inv[a], dg[b]);
    }
  }
  return {out};
}

std::array<KFormField, 4> flatness_forms(const GroupFrame& frame) {
  const auto& th = frame.components;
  std::array<KFormField, 4> out{ext_d(th[0]), ext_d(th[1]), ext_d(th[2]), ext_d(th[3])};
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      const BasisProduct e = kQuaternionTable[a][b];
      out[e.index] = out[e.index] + e.sign * wedge(th[a], th[b]);
    }
  }
  return out;
}

ChartMap frame_reconciliation_map() {
  return ChartMap::make(
      Chart::Euler, Chart::Euler,
      [](const auto& p) {
        using S = scalar_of<decltype(p)>;
        return Point<S>{p[0], 2.0 * p[1], 2.0 * p[2] + kPi / 2.0, 2.0 * p[3]};
      },
      [](const Point<double>& y) {
        return Point<double>{y[0], 0.5 * y[1], 0.5 * (y[2] - kPi / 2.0), 0.5 * y[3]};
      });
}

namespace {

struct ReconciliationForms {
  std::array<KFormField, 3> group;    // ϑ_i, ϑ_j, ϑ_k
  std::array<KFormField, 3> printed;  // R*𝛂, R*𝛃, R*𝛄
};

ReconciliationForms reconciliation_forms() {
  const GroupFrame g = mc_frame_from_group();
  const MaurerCartanFrame f = mc_frame_closed_form();
  const ChartMap r = frame_reconciliation_map();
  return {{g.components[1], g.components[2], g.components[3]},
          {pullback(r, f.alpha), pullback(r, f.beta), pullback(r, f.gamma)}};
}

}  // namespace

FrameCoefficients fit_frame_coefficients(std::span<const Point<double>> points) {
  const ReconciliationForms forms = reconciliation_forms();
  const int rows = static_cast<int>(points.size()) * 4;
  Eigen::MatrixXd design(rows, 3);
  Eigen::MatrixXd target(rows, 3);
  for (std::size_t n = 0; n < points.size(); ++n) {
    for (int k = 0; k < 3; ++k) {
      const FormValue<double> pv = forms.printed[k](points[n]);
      const FormValue<double> gv = forms.group[k](points[n]);
      for (int c = 0; c < 4; ++c) {
        design(static_cast<int>(n) * 4 + c, k) = pv[c];
        target(static_cast<int>(n) * 4 + c, k) = gv[c];
      }
    }
  }
  const Eigen::MatrixXd coeffs = design.colPivHouseholderQr().solve(target);  // 3x3, column = row of c
  FrameCoefficients out{};
  for (int row = 0; row < 3; ++row)
    for (int col = 0; col < 3; ++col) out[row][col] = coeffs(col, row);
  return out;
}

double frame_reconciliation_residual(const Point<double>& p) {
  const ReconciliationForms forms = reconciliation_forms();
  std::array<FormValue<double>, 3> printed;
  for (int k = 0; k < 3; ++k) printed[k] = forms.printed[k](p);
  double res = 0.0;
  for (int row = 0; row < 3; ++row) {
    FormValue<double> expected{1, {}};
    for (int col = 0; col < 3; ++col) {
      expected = expected + kPinnedFrameCoefficients[row][col] * printed[col];
    }
    res = std::max(res, max_abs(forms.group[row](p) - expected));
  }
  return res;
}

StructureSign measure_structure_sign(int which, std::span<const Point<double>> points) {
  if (which < 0 || which > 2) throw ConfigError("structure equation index must be 0, 1 or 2");
  const MaurerCartanFrame f = mc_frame_closed_form();
  const std::array<KFormField, 3> forms{f.alpha, f.beta, f.gamma};
  const KFormField lhs = ext_d(forms[which]);
  const KFormField rhs = wedge(forms[(which + 1) % 3], forms[(which + 2) % 3]);
  std::vector<FormValue<double>> l;
  std::vector<FormValue<double>> r;
  double num = 0.0;
  double den = 0.0;
  for (const auto& p : points) {
    l.push_back(lhs(p));
    r.push_back(rhs(p));
    for (int c = 0; c < 6; ++c) {
      num += l.back()[c] * r.back()[c];
      den += r.back()[c] * r.back()[c];
    }
  }
  StructureSign out;
  out.sign = den > 0.0 ? num / den : 0.0;
  const double pinned = out.sign >= 0.0 ? 1.0 : -1.0;
  for (std::size_t n = 0; n < l.size(); ++n) {
    out.residual = std::max(out.residual, max_abs(l[n] - pinned * r[n]));
  }
  return out;
}

KFormField omega_u2() {
  const KFormField alpha = mc_frame_closed_form().alpha;
  return ext_d(alpha) + wedge(alpha, lee_form(Chart::Euler));
}

CMatrix2 hermitian_from_event(const kerr::CartesianEvent& e) {
  return hermitian_from_event(e.coords());
}

std::array<double, 2> event_eigenvalues(const kerr::CartesianEvent& e) {
  const double norm = std::sqrt(e.x * e.x + e.y * e.y + e.z * e.z);
  return {e.t - norm, e.t + norm};
}

CMatrix2 cayley(const CMatrix2& x) {
  const double scale = std::max(1.0, std::sqrt((x(0, 0).norm2() + x(1, 1).norm2() +
                                                x(0, 1).norm2() + x(1, 0).norm2())));
  if (max_abs_diff(x, x.adjoint()) > 1e-12 * scale) {
    throw DomainError("cayley: argument is not Hermitian");
  }
  return cayley_generic(x);
}

std::array<Cplx, 2> eigenvalues(const CMatrix2& m) {
  const std::complex<double> tr(m.trace().re, m.trace().im);
  const std::complex<double> det(m.det().re, m.det().im);
  const std::complex<double> disc = std::sqrt(tr * tr / 4.0 - det);
  const std::complex<double> l1 = tr / 2.0 - disc;
  const std::complex<double> l2 = tr / 2.0 + disc;
  return {Cplx(l1.real(), l1.imag()), Cplx(l2.real(), l2.imag())};
}

CMatrix2 cayley_inv(const CMatrix2& u) {
  for (const Cplx& l : eigenvalues(u)) {
    if (std::sqrt((l - Cplx(1.0)).norm2()) < 1e-10) {
      throw SingularityError(
          "cayley_inv: unitary has eigenvalue 1 (the image of infinity); no finite preimage");
    }
  }
  const CMatrix2 id = CMatrix2::identity();
  return Cplx::i() * ((id - u).inverse() * (id + u));
}

CMatrix2 cks(const kerr::KSPoint& p, const kerr::KerrParams& params) {
  return cayley(hermitian_from_event(kerr::ks_to_cartesian(p, params)));
}

}  // namespace lcs::unitary
