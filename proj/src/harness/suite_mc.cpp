#include <numbers>

#include "common.hpp"
#include "lcs/unitary.hpp"

namespace lcs::harness::detail {

namespace {

constexpr double kPi = std::numbers::pi;
using unitary::Quat;

std::vector<Point<double>> euler_samples(const SuiteConfig& cfg, const std::string& name, int n) {
  Stream s(cfg.seed, name);
  std::vector<Point<double>> pts(n);
  for (auto& p : pts) p = sample_euler(s, cfg);
  return pts;
}

Quat random_quat(Stream& s) {
  return {s.uniform(-1, 1), s.uniform(-1, 1), s.uniform(-1, 1), s.uniform(-1, 1)};
}

CheckReport quaternion_isomorphism(const SuiteConfig& cfg) {
  const std::string name = "mc.quaternion_matrix_product";
  Stream s(cfg.seed, name);
  std::vector<std::pair<Quat, Quat>> pairs(1000);
  for (auto& p : pairs) p = {random_quat(s), random_quat(s)};
  const Accum acc = sweep(pairs.size(), cfg.threads, [&](std::size_t i, Accum& a) {
    const auto& [p, q] = pairs[i];
    const CMatrix2 lhs = unitary::to_matrix(p * q);
    const CMatrix2 rhs = unitary::to_matrix(p) * unitary::to_matrix(q);
    a.add(max_abs_diff(lhs, rhs), 1.0);
  });
  return make_check(name, "M(pq) = M(p) M(q)", acc, 1e-12);
}

CheckReport unit_norm(const SuiteConfig& cfg) {
  const auto pts = euler_samples(cfg, "mc.unit_norm", cfg.samples);
  const Accum acc = sweep(pts.size(), cfg.threads, [&](std::size_t i, Accum& a) {
    const auto& p = pts[i];
    a.add(unitary::euler_to_su2(p[1], p[2], p[3]).norm2() - 1.0, 1.0);
  });
  return make_check("mc.unit_norm", "|e^{γk} e^{βj} e^{αi}| = 1", acc, 1e-12);
}

CheckReport euler_recovery(const SuiteConfig& cfg) {
  const std::string name = "mc.euler_recovery";
  Stream s(cfg.seed, name);
  // The chart of e^{γk} e^{βj} e^{αi} degenerates at cos 2β = 0.
  const double margin = cfg.delta_theta;
  std::vector<Quat> qs(cfg.samples);
  for (auto& q : qs) {
    const double alpha = s.uniform(-kPi, kPi);
    const double beta = s.uniform(-kPi / 4 + margin, kPi / 4 - margin) + (s.next() & 1 ? kPi / 2 : 0.0);
    const double gamma = s.uniform(-kPi, kPi);
    q = unitary::euler_to_su2(alpha, beta, gamma);
  }
  const Accum acc = sweep(qs.size(), cfg.threads, [&](std::size_t i, Accum& a) {
    const unitary::EulerAngles e = unitary::su2_to_euler(qs[i]);
    const Quat back = unitary::euler_to_su2(e.alpha, e.beta, e.gamma);
    a.add(std::sqrt((back - qs[i]).norm2()), 1.0);
  });
  return make_check(name, "q = e^{γk} e^{βj} e^{αi} for recovered angles", acc, 1e-9,
                    "degenerate locus cos 2β = 0 excluded by margin");
}

CheckReport flatness(const SuiteConfig& cfg) {
  const auto pts = euler_samples(cfg, "mc.flatness", cfg.samples);
  const auto forms = unitary::flatness_forms(unitary::mc_frame_from_group());
  const Accum acc = sweep(pts.size(), cfg.threads, [&](std::size_t i, Accum& a) {
    for (const auto& f : forms) a.add(max_abs(f(pts[i])), 1.0);
  });
  return make_check("mc.flatness", "dϑ + ϑ∧ϑ = 0, ϑ = g⁻¹dg", acc, 1e-10);
}

std::vector<CheckReport> structure_equations(const SuiteConfig& cfg) {
  const auto pts = euler_samples(cfg, "mc.structure", cfg.samples);
  static const char* names[3] = {"mc.structure_alpha", "mc.structure_beta", "mc.structure_gamma"};
  static const char* anchors[3] = {"d𝛂 = s 𝛃∧𝛄", "d𝛃 = s 𝛄∧𝛂", "d𝛄 = s 𝛂∧𝛃"};
  std::vector<CheckReport> out;
  for (int w = 0; w < 3; ++w) {
    const unitary::StructureSign sign = unitary::measure_structure_sign(w, pts);
    Accum acc;
    acc.samples = pts.size();
    acc.max_abs = sign.residual;
    acc.max_rel = sign.residual;
    out.push_back(make_check(names[w], anchors[w], acc, 1e-10,
                             "measured sign s = " + fmt(sign.sign)));
  }
  return out;
}

CheckReport frame_reconciliation(const SuiteConfig& cfg) {
  const auto pts = euler_samples(cfg, "mc.frame_reconciliation", cfg.samples);
  const Accum acc = sweep(pts.size(), cfg.threads, [&](std::size_t i, Accum& a) {
    a.add(unitary::frame_reconciliation_residual(pts[i]), 1.0);
  });
  const auto fit_pts = std::span<const Point<double>>(pts).first(std::min<std::size_t>(pts.size(), 50));
  const unitary::FrameCoefficients fit = unitary::fit_frame_coefficients(fit_pts);
  std::string notes = "least-squares coefficients (rows i,j,k; columns 𝛂,𝛃,𝛄):";
  for (const auto& row : fit) notes += " [" + fmt(row[0]) + ", " + fmt(row[1]) + ", " + fmt(row[2]) + "]";
  return make_check("mc.frame_reconciliation",
                    "ϑ_i = ½R*𝛂, ϑ_j = ½R*𝛄, ϑ_k = ½R*𝛃, R = (t, 2α, 2β + π/2, 2γ)", acc, 1e-10,
                    notes);
}

CheckReport u2_determinant(const SuiteConfig& cfg) {
  const auto pts = euler_samples(cfg, "mc.u2_determinant", cfg.samples);
  const Accum acc = sweep(pts.size(), cfg.threads, [&](std::size_t i, Accum& a) {
    const auto& p = pts[i];
    const unitary::UnitaryPoint u{p[0], unitary::euler_to_su2(p[1], p[2], p[3])};
    a.add(std::sqrt((u.det() - expi(p[0])).norm2()), 1.0);
  });
  return make_check("mc.u2_determinant", "det(e^{it/2} g) = e^{it}", acc, 1e-12);
}

CheckReport sign_ledger(const SuiteConfig& cfg) {
  const auto pts = euler_samples(cfg, "ledger.mc_sign_convention", cfg.ledger_points);
  const auto f = unitary::mc_frame_closed_form();
  const KFormField d_alpha = ext_d(f.alpha);
  const KFormField rhs = wedge(f.beta, f.gamma);
  const std::uint8_t bg = mask_of({2, 3});
  std::vector<Comparison> rows;
  for (const auto& p : pts) {
    rows.push_back({at_point(p), "dβ∧dγ coefficient: printed 𝛃∧𝛄 vs d𝛂", rhs(p).at(bg),
                    d_alpha(p).at(bg)});
  }
  return make_ledger("ledger.mc_sign_convention", "d𝛂 = 𝛃∧𝛄 (sign)", rows,
                     "printed sign +1 confirmed; a -1 does not occur for the printed frame");
}

CheckReport normalization_ledger(const SuiteConfig& cfg) {
  const auto pts = euler_samples(cfg, "ledger.mc_normalization", cfg.ledger_points);
  const KFormField alpha = unitary::mc_frame_closed_form().alpha;
  const KFormField theta_i = unitary::mc_frame_from_group().components[1];
  std::vector<Comparison> rows;
  for (const auto& p : pts) {
    rows.push_back({at_point(p), "dγ coefficient: printed 𝛂 vs i-part of g⁻¹dg", alpha(p)[3],
                    theta_i(p)[3]});
  }
  return make_ledger("ledger.mc_normalization", "𝛂 = dα + cos β dγ as the i-part of g⁻¹dg",
                     rows,
                     "printed frame matches g⁻¹dg only after (α,β,γ) -> (2α, 2β + π/2, 2γ) and a "
                     "factor 1/2; see mc.frame_reconciliation");
}

CheckReport lee_closed_u2(const SuiteConfig& cfg) {
  const auto pts = euler_samples(cfg, "mc.lee_closed", cfg.samples);
  const KFormField d_eta = ext_d(lee_form(Chart::Euler));
  const Accum acc = sweep(pts.size(), cfg.threads, [&](std::size_t i, Accum& a) {
    a.add(max_abs(d_eta(pts[i])), 1.0);
  });
  return make_check("mc.lee_closed", "d(t⁻¹dt) = 0", acc, 1e-12);
}

}  // namespace

std::vector<CheckReport> suite_mc(const SuiteConfig& cfg) {
  std::vector<CheckReport> out;
  out.push_back(quaternion_isomorphism(cfg));
  out.push_back(unit_norm(cfg));
  out.push_back(euler_recovery(cfg));
  out.push_back(flatness(cfg));
  for (auto& r : structure_equations(cfg)) out.push_back(std::move(r));
  out.push_back(frame_reconciliation(cfg));
  out.push_back(u2_determinant(cfg));
  out.push_back(lee_closed_u2(cfg));
  out.push_back(sign_ledger(cfg));
  out.push_back(normalization_ledger(cfg));
  return out;
}

}  // namespace lcs::harness::detail
