#pragma once

// Sampling, suite orchestration and report serialization for the verifier.

#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lcs/bridge.hpp"
#include "lcs/exterior.hpp"
#include "lcs/kerr.hpp"

namespace lcs::harness {

struct SuiteConfig {
  std::uint64_t seed = 20240611;
  int samples = 500;
  double tol_first_order = 1e-9;
  double tol_second_order = 1e-6;
  std::vector<double> a_values{0.5, 1.0, 2.0, 5.0};

  double delta_theta = 1e-3;
  double delta_t = 1e-3;
  double sigma_min = 1e-8;
  double t_min = 0.1, t_max = 10.0;
  double r_min = 0.1, r_max = 10.0;
  double phi_min = -10.0, phi_max = 10.0;

  int roundtrip_samples = 10000;
  int ricci_samples = 100;
  std::vector<double> ricci_a_values{0.5, 1.0, 2.0};
  int cover_targets = 100;
  int ledger_points = 3;

  // Not part of the report: results are identical for any thread count.
  int threads = 1;

  /// Throws ConfigError on non-positive tolerances, empty ranges or counts < 1.
  void validate() const;
};

enum class Status { Pass, Fail, ReportOnly };
std::string_view status_name(Status s);

/// A printed expression evaluated next to its oracle at one point.
struct Comparison {
  std::string at;
  std::string label;
  double printed = 0.0;
  double oracle = 0.0;
};

struct CheckReport {
  std::string name;
  std::string anchor;  // the identity being checked, as a formula
  std::size_t samples = 0;
  double max_abs_residual = 0.0;
  // |residual| / max(|reference|, 1), maximized over samples
  double max_rel_residual = 0.0;
  double tolerance = 0.0;
  Status status = Status::Pass;
  std::string notes;
  std::vector<Comparison> comparisons;
};

/// Deterministic per-check random stream derived from (seed, check name).
class Stream {
 public:
  Stream(std::uint64_t seed, std::string_view name);
  /// Uniform on [lo, hi).
  double uniform(double lo, double hi);
  std::uint64_t next() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

// Samplers. All stay inside the configured margins by construction.
kerr::KSPoint sample_ks(Stream& s, const SuiteConfig& cfg);
Point<double> sample_euler(Stream& s, const SuiteConfig& cfg);
/// (t, u, θ, φ) with u = t + r from a KerrSchild sample.
Point<double> sample_null(Stream& s, const SuiteConfig& cfg);

const std::vector<std::string>& suite_names();
/// Throws ConfigError for an unknown suite name.
std::vector<CheckReport> run_suite(const SuiteConfig& cfg, const std::string& suite);

CheckReport roundtrip_sweep(const SuiteConfig& cfg, double a);
/// Preimage counts of `expected` for cfg.cover_targets random targets, with
/// forward residuals.
CheckReport cover_check(const SuiteConfig& cfg, const bridge::CoverMap& map,
                        const std::string& label);

struct EvalResult {
  std::string quantity;
  std::string chart;
  std::vector<std::pair<std::string, double>> components;
};
const std::vector<std::string>& quantity_names();
/// chart ∈ {ks, cartesian, euler}. Unknown names or unsupported chart
/// combinations raise ConfigError; module errors propagate unchanged.
EvalResult eval_quantity(const std::string& quantity, const std::string& chart,
                         const Point<double>& point, double a);

std::string to_json(const SuiteConfig& cfg, const std::string& suite,
                    const std::vector<CheckReport>& checks);
std::string to_csv(const std::vector<CheckReport>& checks);
std::string eval_to_json(const EvalResult& r);
std::string eval_to_csv(const EvalResult& r);

/// 0 when every non-REPORT-ONLY check passed, 1 otherwise.
int exit_code(const std::vector<CheckReport>& checks);

}  // namespace lcs::harness
