#include <Eigen/Eigenvalues>

#include "common.hpp"

namespace lcs::harness::detail {

namespace {

using kerr::CartesianEvent;
using kerr::KSPoint;

const std::uint8_t kTop = 0b1111;

std::vector<KSPoint> ks_samples(const SuiteConfig& cfg, const std::string& name, int n) {
  Stream s(cfg.seed, name);
  std::vector<KSPoint> pts(n);
  for (auto& p : pts) p = sample_ks(s, cfg);
  return pts;
}

double sigma_of(const KSPoint& p, double a) {
  const double c = std::cos(p.theta);
  return p.r * p.r + a * a * c * c;
}

double quadratic(const Matrix4<double>& g, const std::array<double, 4>& v) {
  double q = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) q += g[i][j] * v[i] * v[j];
  return q;
}

std::vector<CheckReport> per_a_checks(const SuiteConfig& cfg, double a) {
  std::vector<CheckReport> out;
  const kerr::KerrParams params(a);
  const MetricField g = kerr::kerr_metric_cartesian(params);
  const MetricField eta = minkowski_metric(Chart::Cartesian);
  {
    const std::string name = "metric.null" + a_tag(a);
    const auto pts = ks_samples(cfg, name, cfg.samples);
    const Accum acc = sweep(pts.size(), cfg.threads, [&](std::size_t i, Accum& r) {
      const CartesianEvent e = kerr::ks_to_cartesian(pts[i], params);
      const auto l = kerr::lambda_vec(e, params);
      r.add(quadratic(eta(e.coords()), l), 1.0);
      r.add(quadratic(g(e.coords()), l), 1.0);
    });
    out.push_back(make_check(name, "η(𝛌, 𝛌) = g(𝛌, 𝛌) = 0", acc, 1e-12));
  }
  {
    const std::string name = "metric.signature" + a_tag(a);
    const auto pts = ks_samples(cfg, name, cfg.samples);
    std::size_t bad = 0;
    for (const auto& p : pts) {
      const Matrix4<double> m = g(kerr::ks_to_cartesian(p, params).coords());
      Eigen::Matrix4d em;
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) em(i, j) = m[i][j];
      const Eigen::Vector4d ev = Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d>(em).eigenvalues();
      const bool lorentz = ev[0] < 0.0 && ev[1] > 0.0 && ev[2] > 0.0 && ev[3] > 0.0;
      if (!lorentz || !(linalg::det(m) < 0.0)) ++bad;
    }
    out.push_back(make_count_check(name, "signature (-,+,+,+), det g < 0", pts.size(), bad));
  }
  {
    const std::string name = "metric.lambda_covector" + a_tag(a);
    const auto pts = ks_samples(cfg, name, cfg.samples);
    const KFormField lhs = pullback(kerr::ks_map(params), kerr::lambda_cartesian_form(params));
    const KFormField rhs = kerr::lambda_form(params);
    const Accum acc = sweep(pts.size(), cfg.threads, [&](std::size_t i, Accum& r) {
      const FormValue<double> ref = rhs(pts[i].coords());
      r.add(form_diff(lhs(pts[i].coords()), ref), max_abs(ref));
    });
    out.push_back(make_check(name, "ks*(dt + l̃·dx) = du + a sin²θ dφ", acc, 1e-10,
                             "l̃ is 𝛌 with the a-terms reversed"));
  }
  {
    const std::string name = "metric.volume" + a_tag(a);
    const auto pts = ks_samples(cfg, name, cfg.samples);
    const KFormField vol = volume_form(kerr::kerr_metric_ks(params));
    const Accum acc = sweep(pts.size(), cfg.threads, [&](std::size_t i, Accum& r) {
      const double ref = sigma_of(pts[i], a) * std::sin(pts[i].theta);
      r.add(vol(pts[i].coords()).at(kTop) - ref, ref);
    });
    out.push_back(make_check(name, "⋆1 = (r² + a² cos²θ) sin θ dt∧dr∧dθ∧dφ", acc,
                             cfg.tol_first_order));
  }
  {
    const std::string name = "metric.divergence" + a_tag(a);
    const auto pts = ks_samples(cfg, name, cfg.samples);
    const Accum acc = sweep(pts.size(), cfg.threads, [&](std::size_t i, Accum& r) {
      const double ref = 2.0 * pts[i].r / sigma_of(pts[i], a);
      r.add(kerr::flat_divergence(params, kerr::ks_to_cartesian(pts[i], params)) - ref, ref);
    });
    out.push_back(make_check(name, "∇·𝛌 = 2r/(r² + a² cos²θ)", acc, 1e-8));
  }
  return out;
}

CheckReport ricci_check(const SuiteConfig& cfg, double a) {
  const kerr::KerrParams params(a);
  const std::string name = "metric.ricci" + a_tag(a);
  const auto pts = ks_samples(cfg, name, cfg.ricci_samples);
  std::size_t ill = 0;
  const Accum acc = sweep(pts.size(), cfg.threads, [&](std::size_t i, Accum& r) {
    const kerr::RicciResult res = kerr::ricci_residual(params, kerr::ks_to_cartesian(pts[i], params));
    r.add(res.max_abs, 1.0);
  });
  for (const auto& p : pts) ill += sigma_of(p, a) < kerr::kSigmaIllConditioned;
  std::string notes = "nested AD through the Cartesian metric";
  if (ill) notes += "; " + std::to_string(ill) + " samples ill-conditioned";
  return make_check(name, "Ric(g) = 0", acc, cfg.tol_second_order, notes);
}

std::vector<CheckReport> ledgers(const SuiteConfig& cfg) {
  std::vector<CheckReport> out;
  const double a = 2.0;
  const kerr::KerrParams params(a);
  const auto pts = ks_samples(cfg, "ledger.metric", cfg.ledger_points);
  const std::string tag = " a=2";
  const KFormField vol = volume_form(kerr::kerr_metric_ks(params));
  const KFormField lambda = kerr::lambda_form(params);
  const KFormField contact = wedge(lambda, ext_d(lambda));
  {
    std::vector<Comparison> rows;
    for (const auto& p : pts) {
      const kerr::DerivedScalars d = kerr::derived_scalars(p, params);
      const double st = std::sin(p.theta), ct = std::cos(p.theta);
      const double oracle = vol(p.coords()).at(kTop);
      // -X dr∧dθ∧dφ∧dt = +X dt∧dr∧dθ∧dφ
      rows.push_back({at_point(p.coords()) + tag, "Σ² sin²θ vs √|det g|",
                      d.sigma * d.sigma * st * st, oracle});
      rows.push_back({at_point(p.coords()) + tag, "ν⁻² a² cos²θ sin²θ vs √|det g|",
                      a * a * ct * ct * st * st / (d.nu * d.nu), oracle});
    }
    out.push_back(make_ledger("ledger.dvol_exponent",
                              "dvol = -(r² + a² cos²θ)² sin²θ dr∧dθ∧dφ∧dt", rows,
                              "determinant oracle gives (r² + a² cos²θ) sin θ: exponents 1 and 1, "
                              "not 2 and 2"));
  }
  {
    const MetricField g = kerr::kerr_metric_ks(params);
    const KFormField star_lambda = hodge_star(g, lambda);
    const std::uint8_t m = mask_of({1, 2, 3});
    std::vector<Comparison> rows;
    for (const auto& p : pts) {
      const double nu = kerr::derived_scalars(p, params).nu;
      rows.push_back({at_point(p.coords()) + tag, "dr∧dθ∧dφ coefficient: 2ν⋆λ vs λ∧dλ",
                      2.0 * nu * star_lambda(p.coords()).at(m), contact(p.coords()).at(m)});
    }
    out.push_back(make_ledger("ledger.contact_hodge", "λ∧dλ = 2ν ⋆λ", rows,
                              "⋆ on the Kerr metric with dt∧dr∧dθ∧dφ positive"));
  }
  {
    const KFormField c_dt = wedge(contact, coordinate_differential(Chart::KerrSchild, 0));
    std::vector<Comparison> rows;
    for (const auto& p : pts) {
      const kerr::DerivedScalars d = kerr::derived_scalars(p, params);
      const double st = std::sin(p.theta);
      const double printed_vol = d.sigma * d.sigma * st * st;
      rows.push_back({at_point(p.coords()) + tag, "dt∧dr∧dθ∧dφ coefficient of λ∧dλ∧dt",
                      -4.0 / a / std::sin(2.0 * p.theta) * d.nu * d.nu * printed_vol,
                      c_dt(p.coords()).at(kTop)});
    }
    out.push_back(make_ledger("ledger.contact_volume", "λ∧dλ∧dt = -4a⁻¹ csc 2θ ν² dvol", rows,
                              "agrees with the direct wedge -a sin 2θ dt∧dr∧dθ∧dφ when dvol is the printed "
                              "Σ² sin²θ, since ν²Σ² = a² cos²θ"));
  }
  {
    const KFormField printed = pullback(kerr::ks_map(params), kerr::lambda_lowered_form(params));
    std::vector<Comparison> rows;
    for (const auto& p : pts) {
      const FormValue<double> v = printed(p.coords());
      const FormValue<double> ref = lambda(p.coords());
      rows.push_back({at_point(p.coords()) + tag, "dr coefficient: ks*η(𝛌) vs λ", v[1], ref[1]});
      rows.push_back({at_point(p.coords()) + tag, "dφ coefficient: ks*η(𝛌) vs λ", v[3], ref[3]});
    }
    out.push_back(make_ledger("ledger.lambda_handedness",
                              "𝛌 = (1, (rx+ay)/(r²+a²), (ry-ax)/(r²+a²), z/r) with x + iy = (r - ia) sin θ e^{iφ}",
                              rows,
                              "the printed field is not proportional to du + a sin²θ dφ under this "
                              "chart; reversing the a-terms makes it exact (metric.lambda_covector)"));
  }
  {
    std::vector<Comparison> rows;
    for (const auto& p : pts) {
      const kerr::DerivedScalars d = kerr::derived_scalars(p, params);
      const double printed = -2.0 * d.s / std::sqrt(1.0 + *d.oblateness * *d.oblateness) *
                             std::exp(*d.kappa);
      rows.push_back({at_point(p.coords()) + tag, "∇·𝛌",
                      printed, kerr::flat_divergence(params, kerr::ks_to_cartesian(p, params))});
    }
    out.push_back(make_ledger("ledger.divergence_alternative", "∇·𝛌 = -2s(1 + 𝔬²)^(-1/2) e^ϰ",
                              rows, "the closed form 2r/(r² + a² cos²θ) agrees with the AD oracle"));
  }
  return out;
}

}  // namespace

std::vector<CheckReport> suite_metric(const SuiteConfig& cfg) {
  std::vector<CheckReport> out;
  for (double a : cfg.a_values)
    for (auto& r : per_a_checks(cfg, a)) out.push_back(std::move(r));
  for (double a : cfg.ricci_a_values) out.push_back(ricci_check(cfg, a));
  for (auto& r : ledgers(cfg)) out.push_back(std::move(r));
  return out;
}

}  // namespace lcs::harness::detail
