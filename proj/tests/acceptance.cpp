// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.
// Tolerances, sample counts and time limits are fixed here, independent of
// the harness defaults.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "lcs/harness.hpp"

using namespace lcs;
using namespace lcs::harness;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string tag(double a) {
  std::ostringstream os;
  os << "[a=" << a << "]";
  return os.str();
}

class Criterion {
 public:
  explicit Criterion(const std::map<std::string, CheckReport>& by_name) : by_name_(by_name) {}

  // The named check exists, used at least `samples` samples and has residual <= tol.
  void require(const std::string& name, double tol, std::size_t samples = 0) {
    const auto it = by_name_.find(name);
    if (it == by_name_.end()) {
      fail(name + " missing");
      return;
    }
    const CheckReport& c = it->second;
    if (c.samples < samples) fail(name + " used " + std::to_string(c.samples) + " samples");
    if (!(c.max_abs_residual <= tol)) {
      std::ostringstream os;
      os << name << " residual " << c.max_abs_residual << " > " << tol;
      fail(os.str());
    }
    if (tol > 0.0) worst_ = std::max(worst_, c.max_abs_residual / tol);
  }
  void expect(bool ok, const std::string& what) {
    if (!ok) fail(what);
  }
  void fail(const std::string& why) { failures_.push_back(why); }
  void note(const std::string& s) { notes_ += (notes_.empty() ? "" : "; ") + s; }

  bool report(int id, const char* title) const {
    std::printf("AC%-2d %-4s %s", id, failures_.empty() ? "PASS" : "FAIL", title);
    if (worst_ > 0.0) std::printf(" (worst residual/tol %.3g)", worst_);
    if (!notes_.empty()) std::printf(" [%s]", notes_.c_str());
    std::printf("\n");
    for (const auto& f : failures_) std::printf("       %s\n", f.c_str());
    return failures_.empty();
  }

 private:
  const std::map<std::string, CheckReport>& by_name_;
  std::vector<std::string> failures_;
  std::string notes_;
  double worst_ = 0.0;
};

}  // namespace

int main() {
  SuiteConfig cfg;  // seed 20240611, 500 samples, a ∈ {0.5, 1, 2, 5}
  const std::vector<double> all_a{0.5, 1.0, 2.0, 5.0};
  cfg.a_values = all_a;

  std::map<std::string, CheckReport> by_name;
  auto collect = [&](const std::vector<CheckReport>& v) {
    for (const auto& c : v) by_name.emplace(c.name, c);
  };

  const auto t_mc = Clock::now();
  collect(run_suite(cfg, "mc"));
  const double mc_seconds = seconds_since(t_mc);
  for (const char* s : {"lcs", "charts", "bridge", "cover"}) collect(run_suite(cfg, s));

  // The metric suite includes the Ricci sweep; time it on its own first.
  const auto t_ricci = Clock::now();
  std::size_t ricci_points = 0;
  double ricci_max = 0.0;
  for (double a : {0.5, 1.0, 2.0}) {
    Stream s(cfg.seed, "acceptance.ricci" + tag(a));
    for (int i = 0; i < 100; ++i) {
      const kerr::KerrParams params(a);
      const auto e = kerr::ks_to_cartesian(sample_ks(s, cfg), params);
      ricci_max = std::max(ricci_max, kerr::ricci_residual(params, e).max_abs);
      ++ricci_points;
    }
  }
  const double ricci_seconds = seconds_since(t_ricci);
  collect(run_suite(cfg, "metric"));

  bool ok = true;

  {
    Criterion c(by_name);
    c.require("mc.flatness", 1e-10, 500);
    for (const char* n : {"mc.structure_alpha", "mc.structure_beta", "mc.structure_gamma"}) {
      c.require(n, 1e-10, 500);
      const auto& notes = by_name.count(n) ? by_name.at(n).notes : std::string();
      c.expect(notes.find("s = 1") != std::string::npos || notes.find("s = -1") != std::string::npos,
               std::string(n) + " has no single measured sign");
    }
    c.expect(mc_seconds < 5.0, "mc suite took " + std::to_string(mc_seconds) + " s");
    c.note("mc suite " + std::to_string(mc_seconds).substr(0, 5) + " s");
    ok &= c.report(1, "Maurer-Cartan flatness and structure equations");
  }
  {
    Criterion c(by_name);
    c.require("lcs.u2_closed", 1e-9, 500);
    c.require("lcs.u2_square", 1e-9, 500);
    c.require("lcs.u2_nondegenerate", 0.0, 500);
    for (double a : all_a) {
      c.require("lcs.kerr_closed" + tag(a), 1e-9, 500);
      c.require("lcs.kerr_nondegenerate" + tag(a), 0.0, 500);
    }
    ok &= c.report(2, "lcs laws dω = ω∧η on U(2) and Kerr, nondegeneracy, ω∧ω = 2𝛂∧𝛃∧𝛄∧η");
  }
  {
    Criterion c(by_name);
    for (double a : all_a) {
      c.require("bridge.lambda_identity" + tag(a), 1e-9, 500);
      c.require("bridge.omega_identity" + tag(a), 1e-9, 500);
    }
    ok &= c.report(3, "λ and ω_Kerr are pullbacks of 𝛂 and ω_U2 under the [a] substitution");
  }
  {
    Criterion c(by_name);
    for (double a : all_a) {
      c.require("lcs.contact" + tag(a), 1e-10, 500);
      c.require("lcs.contact_equator" + tag(a), 1e-12, 500);
    }
    ok &= c.report(4, "contact coefficient a sin 2θ, vanishing on the equator");
  }
  {
    Criterion c(by_name);
    for (double a : all_a) {
      c.require("charts.roundtrip" + tag(a), 1e-9, 10000);
      c.require("charts.quartic_radius" + tag(a), 1e-10, 500);
    }
    c.require("charts.scale_invariance", 1e-12);
    // Both half-spaces must be exercised by the round trip.
    Stream s(cfg.seed, "acceptance.roundtrip");
    const kerr::KerrParams params(2.0);
    int up = 0, down = 0;
    double worst = 0.0;
    for (int i = 0; i < 10000; ++i) {
      const auto p = sample_ks(s, cfg);
      (kerr::ks_to_cartesian(p, params).z > 0.0 ? up : down)++;
      worst = std::max(worst, kerr::roundtrip_residual(p, params));
    }
    c.expect(up > 0 && down > 0, "round trip did not sample both signs of z");
    c.expect(worst <= 1e-9, "independent round trip residual " + std::to_string(worst));
    c.note(std::to_string(up) + " z>0, " + std::to_string(down) + " z<0");
    ok &= c.report(5, "chart inverse round trip, quartic radius, scale invariance");
  }
  {
    Criterion c(by_name);
    for (double a : all_a) {
      c.require("metric.null" + tag(a), 1e-12, 500);
      c.require("metric.divergence" + tag(a), 1e-8, 500);
    }
    for (double a : {0.5, 1.0, 2.0}) c.require("metric.ricci" + tag(a), 1e-6, 100);
    c.expect(ricci_points == 300 && ricci_max <= 1e-6, "timed Ricci sweep residual " + std::to_string(ricci_max));
    c.expect(ricci_seconds < 60.0, "Ricci sweep took " + std::to_string(ricci_seconds) + " s");
    c.note("Ricci sweep " + std::to_string(ricci_seconds).substr(0, 5) + " s");
    ok &= c.report(6, "Kerr nullity, flat divergence, Ricci flatness");
  }
  {
    Criterion c(by_name);
    c.require("charts.cayley_unitary", 1e-12, 500);
    c.require("charts.cayley_inverse", 1e-10, 500);
    c.require("charts.event_eigenvalues", 1e-10, 500);
    ok &= c.report(7, "Cayley unitarity and inverse, event eigenvalues t ± |x|");
  }
  {
    Criterion c(by_name);
    for (const char* n : {"cover.doubling", "cover.identity", "cover.diag2"}) {
      c.require(n, 1e-12, 100);
      const auto it = by_name.find(n);
      c.expect(it != by_name.end() && it->second.notes.find(" 0 targets with a different count") != std::string::npos,
               std::string(n) + " preimage count mismatch");
    }
    ok &= c.report(8, "torus covers of degree 2, 1 and 8");
  }
  {
    Criterion c(by_name);
    for (const char* n : {"ledger.dvol_exponent", "ledger.nu_chain", "ledger.x_norm_identity",
                          "ledger.dtl_wedge_constant", "ledger.mc_sign_convention",
                          "ledger.min_poly_constant"}) {
      const auto it = by_name.find(n);
      if (it == by_name.end()) {
        c.fail(std::string(n) + " missing");
        continue;
      }
      std::set<std::string> points;
      bool finite = true;
      for (const auto& row : it->second.comparisons) {
        points.insert(row.at);
        finite &= std::isfinite(row.printed) && std::isfinite(row.oracle);
      }
      c.expect(it->second.status == Status::ReportOnly, std::string(n) + " is not REPORT-ONLY");
      c.expect(points.size() >= 3, std::string(n) + " has fewer than 3 sample points");
      c.expect(finite, std::string(n) + " has a non-finite value");
    }
    ok &= c.report(9, "discrepancy ledger rows present with printed and oracle values");
  }
  {
    Criterion c(by_name);
    SuiteConfig small = cfg;
    small.samples = 100;
    small.roundtrip_samples = 1000;
    small.ricci_samples = 10;
    const std::string first = to_json(small, "all", run_suite(small, "all"));
    const std::string second = to_json(small, "all", run_suite(small, "all"));
    small.threads = 4;
    const std::string threaded = to_json(small, "all", run_suite(small, "all"));
    c.expect(first == second, "two serial runs differ");
    c.expect(first == threaded, "threaded run differs from serial run");
    c.note(std::to_string(first.size()) + " bytes");
    ok &= c.report(10, "byte-identical JSON reports");
  }

  std::printf("%s\n", ok ? "ALL CRITERIA PASS" : "SOME CRITERIA FAIL");
  return ok ? 0 : 1;
}
