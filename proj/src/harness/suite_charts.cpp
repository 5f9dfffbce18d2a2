#include <numbers>

#include "common.hpp"
#include "lcs/unitary.hpp"

namespace lcs::harness {

CheckReport roundtrip_sweep(const SuiteConfig& cfg, double a) {
  const kerr::KerrParams params(a);
  const std::string name = "charts.roundtrip" + detail::a_tag(a);
  Stream s(cfg.seed, name);
  std::vector<kerr::KSPoint> pts(cfg.roundtrip_samples);
  for (auto& p : pts) p = sample_ks(s, cfg);
  std::size_t south = 0;
  for (const auto& p : pts) south += p.theta > std::numbers::pi / 2;
  const detail::Accum acc =
      detail::sweep(pts.size(), cfg.threads, [&](std::size_t i, detail::Accum& r) {
        r.add(kerr::roundtrip_residual(pts[i], params), pts[i].r);
      });
  return detail::make_check(name, "cartesian_to_ks ∘ ks_to_cartesian = id", acc,
                            cfg.tol_first_order,
                            std::to_string(pts.size() - south) + " samples with z > 0, " +
                                std::to_string(south) + " with z < 0");
}

namespace detail {

namespace {

using kerr::CartesianEvent;
using kerr::KSPoint;

std::vector<KSPoint> ks_samples(const SuiteConfig& cfg, const std::string& name, int n) {
  Stream s(cfg.seed, name);
  std::vector<KSPoint> pts(n);
  for (auto& p : pts) p = sample_ks(s, cfg);
  return pts;
}

std::vector<CartesianEvent> event_samples(const SuiteConfig& cfg, const std::string& name, int n) {
  Stream s(cfg.seed, name);
  std::vector<CartesianEvent> out(n);
  for (auto& e : out) {
    e = {s.uniform(-10, 10), s.uniform(-10, 10), s.uniform(-10, 10), s.uniform(-10, 10)};
  }
  return out;
}

std::string at_ks(const KSPoint& p, double a) { return at_point(p.coords()) + " a=" + fmt(a); }

std::vector<CheckReport> inverse_chart(const SuiteConfig& cfg) {
  std::vector<CheckReport> out;
  for (double a : cfg.a_values) out.push_back(roundtrip_sweep(cfg, a));

  for (double a : cfg.a_values) {
    const kerr::KerrParams params(a);
    const std::string name = "charts.quartic_radius" + a_tag(a);
    const auto pts = ks_samples(cfg, name, cfg.samples);
    const Accum acc = sweep(pts.size(), cfg.threads, [&](std::size_t i, Accum& r) {
      const CartesianEvent e = kerr::ks_to_cartesian(pts[i], params);
      const double rho2 = e.x * e.x + e.y * e.y + e.z * e.z;
      const double quartic = kerr::quartic_radius(rho2, e.z, a);
      r.add(kerr::radius_from_cartesian(e.x, e.y, e.z, a) - quartic, quartic);
    });
    out.push_back(make_check(name, "r² = a|z| J₋⁻¹(s𝔬) equals the quartic root", acc, 1e-10));
  }
  {
    const std::string name = "charts.scale_invariance";
    Stream s(cfg.seed, name);
    const double c = 3.7;
    std::vector<std::pair<KSPoint, double>> pts(cfg.samples);
    for (auto& [p, a] : pts) {
      p = sample_ks(s, cfg);
      a = cfg.a_values[s.next() % cfg.a_values.size()];
    }
    const Accum acc = sweep(pts.size(), cfg.threads, [&](std::size_t i, Accum& r) {
      const auto& [p, a] = pts[i];
      const CartesianEvent e = kerr::ks_to_cartesian(p, kerr::KerrParams(a));
      const CartesianEvent ce{c * e.t, c * e.x, c * e.y, c * e.z};
      const double o = kerr::oblateness(e, kerr::KerrParams(a));
      const double oc = kerr::oblateness(ce, kerr::KerrParams(c * a));
      const double s_ = e.z > 0 ? 1.0 : -1.0;
      r.add((oc - o) / std::max(std::fabs(o), 1.0), 1.0);
      r.add(std::asinh(s_ * oc) - std::asinh(s_ * o), 1.0);
    });
    out.push_back(make_check(name, "𝔬, ϰ invariant under (t, x, a) -> c(t, x, a)", acc, 1e-12,
                             "𝔬 residual relative to max(|𝔬|, 1); c = 3.7"));
  }
  {
    const std::string name = "charts.kappa_log";
    const auto pts = ks_samples(cfg, name, cfg.samples);
    const double a = 2.0;
    const kerr::KerrParams params(a);
    const Accum acc = sweep(pts.size(), cfg.threads, [&](std::size_t i, Accum& r) {
      const kerr::DerivedScalars d = kerr::derived_scalars(pts[i], params);
      const CartesianEvent e = kerr::ks_to_cartesian(pts[i], params);
      const double log_form = std::log(pts[i].r * pts[i].r / (a * std::fabs(e.z)));
      r.add(*d.kappa - log_form, log_form);
    });
    out.push_back(make_check(name, "ϰ = arcsinh(s𝔬) = log(r²/(a|z|))", acc, 1e-10, "a = 2"));
  }
  {
    const std::string name = "charts.j_inverse";
    Stream s(cfg.seed, name);
    std::vector<double> xs(cfg.samples);
    for (auto& x : xs) x = s.uniform(-50, 50);
    const Accum acc = sweep(xs.size(), cfg.threads, [&](std::size_t i, Accum& r) {
      const double q = kerr::j_minus_inv(xs[i]);
      r.add((kerr::j_minus(q) - xs[i]) / std::max(1.0, std::fabs(xs[i])), 1.0);
      if (!(q > 0.0)) r.add(1.0, 1.0);
    });
    out.push_back(make_check(name, "J₋(J₋⁻¹(x)) = x, J₋⁻¹(x) > 0", acc, 1e-12,
                             "residual relative to max(|x|, 1)"));
  }
  return out;
}

std::vector<CheckReport> cayley_checks(const SuiteConfig& cfg) {
  std::vector<CheckReport> out;
  {
    const auto ev = event_samples(cfg, "charts.cayley_unitary", cfg.samples);
    const Accum acc = sweep(ev.size(), cfg.threads, [&](std::size_t i, Accum& r) {
      const CMatrix2 u = unitary::cayley(unitary::hermitian_from_event(ev[i]));
      r.add(max_abs_diff(u * u.adjoint(), CMatrix2::identity()), 1.0);
    });
    out.push_back(make_check("charts.cayley_unitary", "C(X) C(X)† = I", acc, 1e-12));
  }
  {
    const auto ev = event_samples(cfg, "charts.cayley_inverse", cfg.samples);
    const Accum acc = sweep(ev.size(), cfg.threads, [&](std::size_t i, Accum& r) {
      const CMatrix2 x = unitary::hermitian_from_event(ev[i]);
      r.add(max_abs_diff(unitary::cayley_inv(unitary::cayley(x)), x), 1.0);
    });
    out.push_back(make_check("charts.cayley_inverse", "C⁻¹(C(X)) = X", acc, 1e-10));
  }
  {
    const auto ev = event_samples(cfg, "charts.event_eigenvalues", cfg.samples);
    const Accum acc = sweep(ev.size(), cfg.threads, [&](std::size_t i, Accum& r) {
      const auto l = unitary::eigenvalues(unitary::hermitian_from_event(ev[i]));
      const auto ref = unitary::event_eigenvalues(ev[i]);
      const double lo = std::min(l[0].re, l[1].re), hi = std::max(l[0].re, l[1].re);
      r.add(lo - ref[0], ref[0]);
      r.add(hi - ref[1], ref[1]);
      r.add(std::max(std::fabs(l[0].im), std::fabs(l[1].im)), 1.0);
    });
    out.push_back(make_check("charts.event_eigenvalues", "eig X = t ± |x|", acc, 1e-10));
  }
  {
    const auto ev = event_samples(cfg, "charts.event_interval", cfg.samples);
    const Accum acc = sweep(ev.size(), cfg.threads, [&](std::size_t i, Accum& r) {
      const auto& e = ev[i];
      const CMatrix2 x = unitary::hermitian_from_event(e);
      const double interval = e.t * e.t - e.x * e.x - e.y * e.y - e.z * e.z;
      r.add(x.det().re - interval, interval);
      r.add(x.det().im, 1.0);
      r.add(x.trace().re - 2.0 * e.t, e.t);
      r.add(max_abs_diff(x, x.adjoint()), 1.0);
    });
    out.push_back(make_check("charts.event_interval", "det X = t² - |x|², tr X = 2t, X = X†", acc,
                             1e-12));
  }
  {
    const double a = 2.0;
    const auto pts = ks_samples(cfg, "charts.cks_unitary", cfg.samples);
    const Accum acc = sweep(pts.size(), cfg.threads, [&](std::size_t i, Accum& r) {
      const CMatrix2 u = unitary::cks(pts[i], kerr::KerrParams(a));
      r.add(max_abs_diff(u * u.adjoint(), CMatrix2::identity()), 1.0);
    });
    out.push_back(make_check("charts.cks_unitary", "C(X(ks(t, r, θ, φ))) is unitary", acc, 1e-12,
                             "a = 2"));
  }
  return out;
}

std::vector<CheckReport> ledgers(const SuiteConfig& cfg) {
  std::vector<CheckReport> out;
  const double a = 2.0;
  const kerr::KerrParams params(a);
  {
    const auto pts = ks_samples(cfg, "ledger.x_norm_identity", cfg.ledger_points);
    std::vector<Comparison> rows;
    for (const auto& p : pts) {
      const CartesianEvent e = kerr::ks_to_cartesian(p, params);
      const double printed = a * a * (1.0 - e.z * e.z / (p.r * p.r));
      rows.push_back({at_ks(p, a), "x² + y² + z²", printed, e.x * e.x + e.y * e.y + e.z * e.z});
    }
    out.push_back(make_ledger("ledger.x_norm_identity", "|x|² = a²(1 - r⁻²z²)", rows,
                              "the forward chart gives |x|² = r² + a²(1 - r⁻²z²)"));
  }
  {
    const auto pts = ks_samples(cfg, "ledger.nu_chain", cfg.ledger_points);
    std::vector<Comparison> rows;
    for (const auto& p : pts) {
      const kerr::TwistVariants v = kerr::twist_variants(p, params);
      rows.push_back({at_ks(p, a), "2r sech ϰ vs ν", v.sech_form, v.closed_form});
      rows.push_back({at_ks(p, a), "(1 + 𝔬²)^(-1/2) vs ν", v.oblate_form, v.closed_form});
    }
    out.push_back(make_ledger("ledger.nu_chain",
                              "ν = -a cos θ/(r² + a² cos²θ) = 2r sech ϰ = (1 + 𝔬²)^(-1/2)", rows,
                              "(1 + 𝔬²)^(-1/2) = sech ϰ identically; neither link equals ν, "
                              "which equals -s sech ϰ / (2r)"));
  }
  return out;
}

}  // namespace

std::vector<CheckReport> suite_charts(const SuiteConfig& cfg) {
  std::vector<CheckReport> out = inverse_chart(cfg);
  for (auto& r : cayley_checks(cfg)) out.push_back(std::move(r));
  for (auto& r : ledgers(cfg)) out.push_back(std::move(r));
  return out;
}

}  // namespace detail

}  // namespace lcs::harness
