#include <numbers>

#include "common.hpp"

namespace lcs::harness {

CheckReport cover_check(const SuiteConfig& cfg, const bridge::CoverMap& map,
                        const std::string& label) {
  const std::string name = "cover." + label;
  Stream s(cfg.seed, name);
  const double two_pi = 2.0 * std::numbers::pi;
  std::vector<std::array<double, 3>> targets(cfg.cover_targets);
  for (auto& t : targets) t = {s.uniform(0, two_pi), s.uniform(0, two_pi), s.uniform(0, two_pi)};
  const std::size_t expected = static_cast<std::size_t>(map.det() < 0 ? -map.det() : map.det());
  std::size_t wrong_count = 0;
  detail::Accum acc;
  for (const auto& t : targets) {
    const auto pre = bridge::torus_cover_preimages(map, t);
    if (pre.size() != expected) ++wrong_count;
    for (const auto& x : pre) acc.add(bridge::torus_distance(map.apply(x), t), 1.0);
    ++acc.samples;
  }
  // A wrong preimage count is a failure regardless of the forward residual.
  if (wrong_count) acc.max_abs = std::max(acc.max_abs, static_cast<double>(wrong_count));
  return detail::make_check(name, "#{x : Mx ≡ y mod 2π} = |det M|", acc, 1e-12,
                            "expected " + std::to_string(expected) + " preimages; " +
                                std::to_string(wrong_count) + " targets with a different count");
}

namespace detail {

namespace {

std::vector<Point<double>> null_samples(const SuiteConfig& cfg, const std::string& name, int n) {
  Stream s(cfg.seed, name);
  std::vector<Point<double>> pts(n);
  for (auto& p : pts) p = sample_null(s, cfg);
  return pts;
}

CheckReport from_identity(const std::string& name, const std::string& anchor,
                          const bridge::IdentityResidual& r, double tol) {
  Accum acc;
  acc.max_abs = r.max_abs;
  acc.max_rel = r.max_rel;
  acc.samples = r.samples;
  return make_check(name, anchor, acc, tol);
}

}  // namespace

std::vector<CheckReport> suite_bridge(const SuiteConfig& cfg) {
  std::vector<CheckReport> out;
  for (double a : cfg.a_values) {
    {
      const std::string name = "bridge.lambda_identity" + a_tag(a);
      const auto pts = null_samples(cfg, name, cfg.samples);
      out.push_back(from_identity(name, "λ = L_a*(𝛂), L_a(t,u,θ,φ) = (t, u + aφ/2, 2θ, -aφ/2)",
                                  bridge::verify_lambda_identity(a, pts), 1e-10));
    }
    {
      const std::string name = "bridge.omega_identity" + a_tag(a);
      const auto pts = null_samples(cfg, name, cfg.samples);
      out.push_back(from_identity(name, "ω_Kerr = L_a*(ω_U2)", bridge::verify_omega_identity(a, pts),
                                  cfg.tol_first_order));
    }
    {
      const std::string name = "bridge.naturality" + a_tag(a);
      const auto pts = null_samples(cfg, name, cfg.samples);
      out.push_back(from_identity(name, "L_a*(d𝛂) = d(L_a*𝛂)", bridge::verify_naturality(a, pts),
                                  1e-10));
    }
    {
      const std::string name = "bridge.substitution_inverse" + a_tag(a);
      const auto pts = null_samples(cfg, name, cfg.samples);
      const ChartMap sub = bridge::substitution_map(a);
      const Accum acc = sweep(pts.size(), cfg.threads, [&](std::size_t i, Accum& r) {
        r.add(sub.roundtrip_residual(pts[i]), 1.0);
      });
      out.push_back(make_check(name, "L_a⁻¹ ∘ L_a = id", acc, 1e-12));
    }
  }
  {
    std::size_t bad = 0;
    std::string notes;
    for (double a : cfg.a_values) {
      const bridge::ReparamMatrix m(a);
      const auto& x = m.m;
      const double det = x[0][0] * (x[1][1] * x[2][2] - x[1][2] * x[2][1]) -
                         x[0][1] * (x[1][0] * x[2][2] - x[1][2] * x[2][0]) +
                         x[0][2] * (x[1][0] * x[2][1] - x[1][1] * x[2][0]);
      const bool even = std::fmod(a, 2.0) == 0.0;
      if (det != -a || m.integral() != even) ++bad;
      notes += (notes.empty() ? "" : "; ") + ("a=" + fmt(a) + ": det " + fmt(det) +
                                              (m.integral() ? ", integral" : ", not integral"));
    }
    out.push_back(make_count_check("bridge.reparam_matrix", "det [a] = -a; [a] integral iff a ∈ 2ℤ",
                                   cfg.a_values.size(), bad, notes));
  }
  {
    std::vector<Comparison> rows;
    for (double a : {2.0, 3.0, 0.5}) {
      const bridge::CharPolyReport rep = bridge::char_poly_a(a);
      static const char* terms[4] = {"T³", "T²", "T", "1"};
      for (int k = 0; k < 4; ++k) {
        rows.push_back({"a=" + fmt(a), std::string("coefficient of ") + terms[k], rep.printed[k],
                        rep.computed[k]});
      }
    }
    out.push_back(make_ledger("ledger.min_poly_constant",
                              "2T³ + (a - 6)T² + (4 - 3a)T + a", rows,
                              "2 det(T I - [a]) = 2(T - 1)(T - 2)(T + a/2) has constant term 2a; "
                              "the other coefficients agree"));
  }
  return out;
}

std::vector<CheckReport> suite_cover(const SuiteConfig& cfg) {
  std::vector<CheckReport> out;
  out.push_back(cover_check(cfg, bridge::CoverMap::doubling(), "doubling"));
  out.push_back(cover_check(cfg, bridge::CoverMap({{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}}), "identity"));
  out.push_back(cover_check(cfg, bridge::CoverMap({{{2, 0, 0}, {0, 2, 0}, {0, 0, 2}}}), "diag2"));
  {
    // The two sheets of [2] differ by the deck shift (0, π, 0).
    const std::string name = "cover.deck_shift";
    Stream s(cfg.seed, name);
    const double two_pi = 2.0 * std::numbers::pi;
    const bridge::CoverMap m = bridge::CoverMap::doubling();
    Accum acc;
    for (int i = 0; i < cfg.cover_targets; ++i) {
      const std::array<double, 3> t{s.uniform(0, two_pi), s.uniform(0, two_pi), s.uniform(0, two_pi)};
      const auto pre = bridge::torus_cover_preimages(m, t);
      if (pre.size() != 2) {
        acc.add(1.0, 1.0);
      } else {
        const std::array<double, 3> shifted{pre[0][0], pre[0][1] + std::numbers::pi, pre[0][2]};
        acc.add(bridge::torus_distance(shifted, pre[1]), 1.0);
      }
      ++acc.samples;
    }
    out.push_back(make_check(name, "x₂ - x₁ ≡ (0, π, 0)", acc, 1e-12));
  }
  return out;
}

}  // namespace detail

}  // namespace lcs::harness
