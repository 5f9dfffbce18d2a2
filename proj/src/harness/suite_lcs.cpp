#include <limits>
#include <numbers>

#include "common.hpp"
#include "lcs/unitary.hpp"

namespace lcs::harness::detail {

namespace {

constexpr double kPi = std::numbers::pi;
const std::uint8_t kTop = 0b1111;

std::vector<Point<double>> ks_samples(const SuiteConfig& cfg, const std::string& name, int n) {
  Stream s(cfg.seed, name);
  std::vector<Point<double>> pts(n);
  for (auto& p : pts) p = sample_ks(s, cfg).coords();
  return pts;
}

std::vector<Point<double>> euler_samples(const SuiteConfig& cfg, const std::string& name, int n) {
  Stream s(cfg.seed, name);
  std::vector<Point<double>> pts(n);
  for (auto& p : pts) p = sample_euler(s, cfg);
  return pts;
}

// ---- U(2) ----

std::vector<CheckReport> u2_checks(const SuiteConfig& cfg) {
  std::vector<CheckReport> out;
  const KFormField omega = unitary::omega_u2();
  const KFormField eta = lee_form(Chart::Euler);
  const KFormField closed = ext_d(omega) - wedge(omega, eta);
  const KFormField square = wedge(omega, omega);
  const auto f = unitary::mc_frame_closed_form();
  const KFormField frame_top = 2.0 * wedge(wedge(wedge(f.alpha, f.beta), f.gamma), eta);

  {
    const auto pts = euler_samples(cfg, "lcs.u2_closed", cfg.samples);
    const Accum acc = sweep(pts.size(), cfg.threads, [&](std::size_t i, Accum& a) {
      a.add(max_abs(closed(pts[i])), max_abs(ext_d(omega)(pts[i])));
    });
    out.push_back(make_check("lcs.u2_closed", "dω = ω∧η, ω = d𝛂 + 𝛂∧η", acc,
                             cfg.tol_first_order));
  }
  {
    const auto pts = euler_samples(cfg, "lcs.u2_square", cfg.samples);
    const Accum acc = sweep(pts.size(), cfg.threads, [&](std::size_t i, Accum& a) {
      const double ref = frame_top(pts[i]).at(kTop);
      a.add(square(pts[i]).at(kTop) - ref, ref);
    });
    out.push_back(make_check("lcs.u2_square", "ω∧ω = 2 𝛂∧𝛃∧𝛄∧η", acc, cfg.tol_first_order));
  }
  {
    const auto pts = euler_samples(cfg, "lcs.u2_nondegenerate", cfg.samples);
    std::size_t bad = 0;
    double min_coef = std::numeric_limits<double>::infinity();
    for (const auto& p : pts) {
      const double c = std::fabs(square(p).at(kTop));
      min_coef = std::min(min_coef, c);
      if (!(c > 1e-10)) ++bad;
    }
    out.push_back(make_count_check("lcs.u2_nondegenerate", "ω∧ω ≠ 0", pts.size(), bad,
                                   "min |ω∧ω| = " + fmt(min_coef)));
  }
  return out;
}

// ---- Kerr ----

std::vector<CheckReport> kerr_checks(const SuiteConfig& cfg) {
  std::vector<CheckReport> out;
  const KFormField eta = lee_form(Chart::KerrSchild);
  for (double a : cfg.a_values) {
    const kerr::KerrParams params(a);
    const KFormField omega = kerr::omega_kerr(params);
    const KFormField closed = ext_d(omega) - wedge(omega, eta);
    const KFormField split = kerr::omega_kerr_split(params);
    const KFormField square = wedge(omega, omega);
    {
      const std::string name = "lcs.kerr_closed" + a_tag(a);
      const auto pts = ks_samples(cfg, name, cfg.samples);
      const Accum acc = sweep(pts.size(), cfg.threads, [&](std::size_t i, Accum& acc_) {
        acc_.add(max_abs(closed(pts[i])), max_abs(omega(pts[i])));
      });
      out.push_back(make_check(name, "dω = ω∧η, ω = t d(t⁻¹λ)", acc, cfg.tol_first_order));
    }
    {
      const std::string name = "lcs.kerr_split" + a_tag(a);
      const auto pts = ks_samples(cfg, name, cfg.samples);
      const Accum acc = sweep(pts.size(), cfg.threads, [&](std::size_t i, Accum& acc_) {
        const FormValue<double> ref = split(pts[i]);
        acc_.add(form_diff(omega(pts[i]), ref), max_abs(ref));
      });
      out.push_back(make_check(name, "t d(t⁻¹λ) = dλ + λ∧η", acc, 1e-10));
    }
    {
      const std::string name = "lcs.kerr_nondegenerate" + a_tag(a);
      const auto pts = ks_samples(cfg, name, cfg.samples);
      std::size_t bad = 0, used = 0;
      double min_coef = std::numeric_limits<double>::infinity();
      for (const auto& p : pts) {
        if (std::fabs(p[0] * std::sin(2.0 * p[2])) <= 1e-3) continue;
        ++used;
        const double c = std::fabs(square(p).at(kTop));
        min_coef = std::min(min_coef, c);
        if (!(c > 1e-12)) ++bad;
      }
      out.push_back(make_count_check(name, "ω∧ω ≠ 0 where |t sin 2θ| > 1e-3", used, bad,
                                     "min |ω∧ω| = " + fmt(min_coef)));
    }
    {
      const std::string name = "lcs.kerr_equator" + a_tag(a);
      auto pts = ks_samples(cfg, name, cfg.samples);
      for (auto& p : pts) p[2] = kPi / 2;
      const Accum acc = sweep(pts.size(), cfg.threads, [&](std::size_t i, Accum& acc_) {
        acc_.add(square(pts[i]).at(kTop), 1.0);
      });
      out.push_back(make_check(name, "ω∧ω = 0 on θ = π/2", acc, 1e-12));
    }
    {
      // On t = const the du∧dθ∧dφ coefficient of λ∧dλ is its dr∧dθ∧dφ one.
      const std::string name = "lcs.contact" + a_tag(a);
      const auto pts = ks_samples(cfg, name, cfg.samples);
      std::vector<kerr::KSPoint> ks;
      for (const auto& p : pts) ks.push_back(kerr::KSPoint::from(p));
      const kerr::ContactReport rep = kerr::contact_check(params, ks.front().t, ks);
      Accum acc;
      acc.samples = rep.samples;
      acc.max_abs = rep.max_residual;
      acc.max_rel = rep.max_residual / std::max(1.0, a);
      out.push_back(make_check(name, "λ∧dλ = a sin 2θ du∧dθ∧dφ", acc, 1e-10,
                               "min |coefficient| on the slice = " + fmt(rep.min_abs_coefficient)));
    }
    {
      const std::string name = "lcs.contact_equator" + a_tag(a);
      const auto pts = ks_samples(cfg, name, cfg.samples);
      const Accum acc = sweep(pts.size(), cfg.threads, [&](std::size_t i, Accum& acc_) {
        kerr::KSPoint p = kerr::KSPoint::from(pts[i]);
        p.theta = kPi / 2;
        acc_.add(kerr::contact_coefficient(params, p), 1.0);
      });
      out.push_back(make_check(name, "λ∧dλ = 0 on θ = π/2", acc, 1e-12));
    }
  }
  {
    const auto pts = ks_samples(cfg, "lcs.lee_closed", cfg.samples);
    const KFormField d_eta = ext_d(eta);
    const Accum acc = sweep(pts.size(), cfg.threads, [&](std::size_t i, Accum& a) {
      a.add(max_abs(d_eta(pts[i])), 1.0);
    });
    out.push_back(make_check("lcs.lee_closed", "d(t⁻¹dt) = 0", acc, 1e-12));
  }
  return out;
}

// ---- exterior calculus properties on the Kerr forms ----

std::vector<CheckReport> form_properties(const SuiteConfig& cfg) {
  std::vector<CheckReport> out;
  const double a = cfg.a_values.front();
  const kerr::KerrParams params(a);
  const KFormField lambda = kerr::lambda_form(params);
  const KFormField dl = ext_d(lambda);
  const KFormField omega = kerr::omega_kerr(params);
  const KFormField r_fn = KFormField::from_coefficients(
      Chart::KerrSchild, 0, [](const auto& p) { return p[1] * ad::cos(p[2]); });
  const KFormField w1 = wedge(r_fn, lambda) + coordinate_differential(Chart::KerrSchild, 2);

  {
    const auto pts = ks_samples(cfg, "forms.antisymmetry", cfg.samples);
    const KFormField lhs = wedge(lambda, w1);
    const KFormField rhs = -1.0 * wedge(w1, lambda);
    const KFormField lhs2 = wedge(w1, omega);
    const KFormField rhs2 = wedge(omega, w1);
    const Accum acc = sweep(pts.size(), cfg.threads, [&](std::size_t i, Accum& acc_) {
      acc_.add(form_diff(lhs(pts[i]), rhs(pts[i])), max_abs(lhs(pts[i])));
      acc_.add(form_diff(lhs2(pts[i]), rhs2(pts[i])), max_abs(lhs2(pts[i])));
    });
    out.push_back(make_check("forms.antisymmetry", "a∧b = (-1)^{pq} b∧a", acc, 1e-12));
  }
  {
    const auto pts = ks_samples(cfg, "forms.leibniz", cfg.samples);
    const KFormField lhs = ext_d(wedge(w1, omega));
    const KFormField rhs = wedge(ext_d(w1), omega) - wedge(w1, ext_d(omega));
    const Accum acc = sweep(pts.size(), cfg.threads, [&](std::size_t i, Accum& acc_) {
      const FormValue<double> ref = rhs(pts[i]);
      acc_.add(form_diff(lhs(pts[i]), ref), max_abs(ref));
    });
    out.push_back(make_check("forms.leibniz", "d(a∧b) = da∧b + (-1)^p a∧db", acc,
                             cfg.tol_first_order));
  }
  {
    const auto pts = ks_samples(cfg, "forms.d_squared", cfg.samples);
    const KFormField ddl = ext_d(dl);
    const KFormField ddo = ext_d(ext_d(omega));
    const KFormField ddw = ext_d(ext_d(w1));
    const Accum acc = sweep(pts.size(), cfg.threads, [&](std::size_t i, Accum& acc_) {
      acc_.add(max_abs(ddl(pts[i])), 1.0);
      acc_.add(max_abs(ddo(pts[i])), 1.0);
      acc_.add(max_abs(ddw(pts[i])), 1.0);
    });
    out.push_back(make_check("forms.d_squared", "d(dω) = 0", acc, 1e-10));
  }
  {
    // Naturality along KerrNull -> KerrSchild.
    const ChartMap f = kerr::null_to_ks_map();
    Stream s(cfg.seed, "forms.naturality");
    std::vector<Point<double>> pts(cfg.samples);
    for (auto& p : pts) p = sample_null(s, cfg);
    const KFormField d_lhs = pullback(f, ext_d(w1));
    const KFormField d_rhs = ext_d(pullback(f, w1));
    const KFormField w_lhs = pullback(f, wedge(w1, omega));
    const KFormField w_rhs = wedge(pullback(f, w1), pullback(f, omega));
    const Accum acc = sweep(pts.size(), cfg.threads, [&](std::size_t i, Accum& acc_) {
      const FormValue<double> r1 = d_rhs(pts[i]);
      const FormValue<double> r2 = w_rhs(pts[i]);
      acc_.add(form_diff(d_lhs(pts[i]), r1), max_abs(r1));
      acc_.add(form_diff(w_lhs(pts[i]), r2), max_abs(r2));
    });
    out.push_back(make_check("forms.naturality", "F*(da) = d(F*a), F*(a∧b) = F*a∧F*b", acc,
                             cfg.tol_first_order));
  }
  {
    const auto pts = ks_samples(cfg, "forms.hodge_involution", cfg.samples);
    const MetricField g = kerr::kerr_metric_ks(params);
    const std::array<KFormField, 3> forms{lambda, omega, wedge(lambda, dl)};
    const Accum acc = sweep(pts.size(), cfg.threads, [&](std::size_t i, Accum& acc_) {
      for (const auto& w : forms) {
        const int k = w.degree();
        const double sign = ((k * (4 - k)) % 2 == 0 ? 1.0 : -1.0) * -1.0;
        const FormValue<double> ref = sign * w(pts[i]);
        acc_.add(form_diff(hodge_star(g, hodge_star(g, w))(pts[i]), ref), max_abs(ref));
      }
    });
    out.push_back(make_check("forms.hodge_involution", "⋆⋆ = (-1)^{k(4-k)+1} on the Kerr metric",
                             acc, cfg.tol_first_order));
  }
  return out;
}

// ---- printed formulas ----

std::vector<CheckReport> ledgers(const SuiteConfig& cfg) {
  std::vector<CheckReport> out;
  const double a = 2.0;
  const kerr::KerrParams params(a);
  const auto pts = ks_samples(cfg, "ledger.lcs", cfg.ledger_points);
  const KFormField lambda = kerr::lambda_form(params);
  const KFormField t_fn = KFormField::from_coefficients(
      Chart::KerrSchild, 0, [](const auto& p) { return p[0]; });
  const KFormField dtl = ext_d(wedge(t_fn, lambda));
  const KFormField dtl2 = wedge(dtl, dtl);
  const KFormField omega = kerr::omega_kerr(params);
  const KFormField printed_omega = kerr::omega_kerr_printed(params);
  const KFormField eta = lee_form(Chart::KerrSchild);
  const KFormField sq = wedge(omega, omega);

  {
    std::vector<Comparison> rows;
    for (const auto& p : pts) {
      // printed -2a sin2θ dr∧dθ∧dφ∧dt = +2a sin2θ dt∧dr∧dθ∧dφ
      rows.push_back({at_point(p) + " a=2", "dt∧dr∧dθ∧dφ coefficient of d(tλ)∧d(tλ)",
                      2.0 * a * std::sin(2.0 * p[2]), dtl2(p).at(kTop)});
    }
    out.push_back(make_ledger("ledger.dtl_wedge_constant",
                              "d(tλ)∧d(tλ) = -2a sin 2θ dr∧dθ∧dφ∧dt", rows,
                              "direct wedge gives 2at sin 2θ dt∧dr∧dθ∧dφ: the printed value "
                              "lacks the factor t"));
  }
  {
    std::vector<Comparison> rows;
    for (const auto& p : pts) {
      const kerr::DerivedScalars d = kerr::derived_scalars(kerr::KSPoint::from(p), params);
      const double st = std::sin(p[2]);
      const double printed_dvol = d.sigma * d.sigma * st * st;  // -(...) dr∧dθ∧dφ∧dt
      const double nu_t = d.nu / p[0];
      rows.push_back({at_point(p) + " a=2", "dt∧dr∧dθ∧dφ coefficient of ω∧ω",
                      8.0 / a * std::sin(2.0 * p[2]) * nu_t * nu_t * printed_dvol, sq(p).at(kTop)});
    }
    out.push_back(make_ledger("ledger.omega_wedge_printed",
                              "ω∧ω = 8a⁻¹ sin 2θ (t⁻¹ν)² dvol", rows,
                              "oracle: direct wedge, -2a sin 2θ / t"));
  }
  {
    std::vector<Comparison> rows;
    const std::uint8_t m = mask_of({0, 3});
    for (const auto& p : pts) {
      rows.push_back({at_point(p) + " a=2", "dt∧dφ coefficient: t⁻¹d(tλ) vs dλ + λ∧η",
                      printed_omega(p).at(m), omega(p).at(m)});
    }
    const KFormField printed_law = ext_d(printed_omega) + wedge(eta, printed_omega);
    double law = 0.0;
    for (const auto& p : pts) law = std::max(law, max_abs(printed_law(p)));
    out.push_back(make_ledger(
        "ledger.omega_definition", "t⁻¹d(tλ) = dλ + λ∧η", rows,
        "t⁻¹d(tλ) = dλ - λ∧η; it satisfies d w = -η∧w (residual " + fmt(law) +
            "), so its Lee form is -t⁻¹dt. The lcs form used is t d(t⁻¹λ) = dλ + λ∧η."));
  }
  return out;
}

}  // namespace

std::vector<CheckReport> suite_lcs(const SuiteConfig& cfg) {
  std::vector<CheckReport> out = u2_checks(cfg);
  for (auto& r : kerr_checks(cfg)) out.push_back(std::move(r));
  for (auto& r : form_properties(cfg)) out.push_back(std::move(r));
  for (auto& r : ledgers(cfg)) out.push_back(std::move(r));
  return out;
}

}  // namespace lcs::harness::detail
