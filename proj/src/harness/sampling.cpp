#include <charconv>
#include <numbers>

#include "common.hpp"

namespace lcs::harness {

namespace {

constexpr double kPi = std::numbers::pi;

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

void SuiteConfig::validate() const {
  auto require = [](bool ok, const std::string& what) {
    if (!ok) throw ConfigError("invalid configuration: " + what);
  };
  require(samples >= 1, "samples must be >= 1");
  require(roundtrip_samples >= 1 && ricci_samples >= 1 && cover_targets >= 1 && ledger_points >= 1,
          "sample counts must be >= 1");
  require(tol_first_order > 0.0 && tol_second_order > 0.0, "tolerances must be positive");
  require(!a_values.empty(), "a_values must not be empty");
  for (double a : a_values) require(a > 0.0 && std::isfinite(a), "a values must be positive");
  for (double a : ricci_a_values) require(a >= 0.0 && std::isfinite(a), "Ricci a values must be >= 0");
  require(t_min < t_max && r_min < r_max && phi_min < phi_max, "ranges must be nonempty");
  require(t_min >= delta_t, "t range must stay delta_t away from t = 0");
  require(r_min > 0.0, "r range must be positive");
  require(delta_theta > 0.0 && delta_theta < kPi / 4, "delta_theta out of range");
  require(r_min * r_min >= sigma_min, "r_min^2 must exceed sigma_min");
  require(threads >= 1, "threads must be >= 1");
}

std::string_view status_name(Status s) {
  switch (s) {
    case Status::Pass: return "PASS";
    case Status::Fail: return "FAIL";
    case Status::ReportOnly: return "REPORT-ONLY";
  }
  return "?";
}

int exit_code(const std::vector<CheckReport>& checks) {
  for (const auto& c : checks)
    if (c.status == Status::Fail) return 1;
  return 0;
}

Stream::Stream(std::uint64_t seed, std::string_view name)
    : engine_(splitmix(seed ^ splitmix(fnv1a(name)))) {}

double Stream::uniform(double lo, double hi) {
  const double u = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * u;
}

kerr::KSPoint sample_ks(Stream& s, const SuiteConfig& cfg) {
  kerr::KSPoint p;
  p.t = s.uniform(cfg.t_min, cfg.t_max);
  p.r = s.uniform(cfg.r_min, cfg.r_max);
  p.theta = s.uniform(cfg.delta_theta, kPi - cfg.delta_theta);
  p.phi = s.uniform(cfg.phi_min, cfg.phi_max);
  return p;
}

Point<double> sample_euler(Stream& s, const SuiteConfig& cfg) {
  const double t = s.uniform(cfg.t_min, cfg.t_max);
  const double alpha = s.uniform(-kPi, kPi);
  const double beta = s.uniform(cfg.delta_theta, kPi - cfg.delta_theta);
  const double gamma = s.uniform(-kPi, kPi);
  return {t, alpha, beta, gamma};
}

Point<double> sample_null(Stream& s, const SuiteConfig& cfg) {
  const kerr::KSPoint p = sample_ks(s, cfg);
  return {p.t, p.u(), p.theta, p.phi};
}

namespace detail {

std::string fmt(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string at_point(const Point<double>& p) {
  return "(" + fmt(p[0]) + ", " + fmt(p[1]) + ", " + fmt(p[2]) + ", " + fmt(p[3]) + ")";
}

std::string a_tag(double a) { return "[a=" + fmt(a) + "]"; }

CheckReport make_check(std::string name, std::string anchor, const Accum& acc, double tol,
                       std::string notes) {
  CheckReport r;
  r.name = std::move(name);
  r.anchor = std::move(anchor);
  r.samples = acc.samples;
  r.max_abs_residual = acc.max_abs;
  r.max_rel_residual = acc.max_rel;
  r.tolerance = tol;
  r.status = acc.max_abs <= tol ? Status::Pass : Status::Fail;  // NaN fails
  r.notes = std::move(notes);
  return r;
}

CheckReport make_count_check(std::string name, std::string anchor, std::size_t samples,
                             std::size_t violations, std::string notes) {
  Accum acc;
  acc.samples = samples;
  acc.max_abs = static_cast<double>(violations);
  acc.max_rel = samples ? static_cast<double>(violations) / static_cast<double>(samples) : 0.0;
  std::string n = "residual counts violating samples";
  if (!notes.empty()) n += "; " + notes;
  return make_check(std::move(name), std::move(anchor), acc, 0.0, std::move(n));
}

CheckReport make_ledger(std::string name, std::string anchor, std::vector<Comparison> rows,
                        std::string notes) {
  Accum acc;
  for (const auto& c : rows) {
    acc.add(c.printed - c.oracle, c.oracle);
    ++acc.samples;
  }
  CheckReport r = make_check(std::move(name), std::move(anchor), acc, 0.0, std::move(notes));
  r.status = Status::ReportOnly;
  r.comparisons = std::move(rows);
  return r;
}

}  // namespace detail

}  // namespace lcs::harness
