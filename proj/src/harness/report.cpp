#include <json.hpp>
#include <sstream>

#include "common.hpp"

namespace lcs::harness {

namespace {

using nlohmann::ordered_json;

// JSON has no NaN or infinity; such residuals are written as strings.
ordered_json number(double v) {
  if (std::isfinite(v)) return v;
  return detail::fmt(v);
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string to_json(const SuiteConfig& cfg, const std::string& suite,
                    const std::vector<CheckReport>& checks) {
  ordered_json config{
      {"suite", suite},
      {"seed", cfg.seed},
      {"samples", cfg.samples},
      {"tol_first_order", cfg.tol_first_order},
      {"tol_second_order", cfg.tol_second_order},
      {"a_values", cfg.a_values},
      {"delta_theta", cfg.delta_theta},
      {"delta_t", cfg.delta_t},
      {"sigma_min", cfg.sigma_min},
      {"t_range", {cfg.t_min, cfg.t_max}},
      {"r_range", {cfg.r_min, cfg.r_max}},
      {"phi_range", {cfg.phi_min, cfg.phi_max}},
      {"roundtrip_samples", cfg.roundtrip_samples},
      {"ricci_samples", cfg.ricci_samples},
      {"ricci_a_values", cfg.ricci_a_values},
      {"cover_targets", cfg.cover_targets},
  };
  ordered_json arr = ordered_json::array();
  for (const auto& c : checks) {
    ordered_json j{
        {"name", c.name},
        {"anchor", c.anchor},
        {"samples", c.samples},
        {"max_abs_residual", number(c.max_abs_residual)},
        {"max_rel_residual", number(c.max_rel_residual)},
        {"tolerance", c.status == Status::ReportOnly ? ordered_json(nullptr) : number(c.tolerance)},
        {"status", std::string(status_name(c.status))},
        {"notes", c.notes},
    };
    if (!c.comparisons.empty()) {
      ordered_json rows = ordered_json::array();
      for (const auto& r : c.comparisons) {
        rows.push_back({{"at", r.at},
                        {"quantity", r.label},
                        {"printed", number(r.printed)},
                        {"oracle", number(r.oracle)}});
      }
      j["comparisons"] = std::move(rows);
    }
    arr.push_back(std::move(j));
  }
  ordered_json doc{{"config", std::move(config)}, {"checks", std::move(arr)}};
  return doc.dump(2) + "\n";
}

std::string to_csv(const std::vector<CheckReport>& checks) {
  std::ostringstream os;
  os << "name,anchor,samples,max_abs_residual,max_rel_residual,tolerance,status,notes,comparisons\n";
  for (const auto& c : checks) {
    std::string cmp;
    for (const auto& r : c.comparisons) {
      if (!cmp.empty()) cmp += "; ";
      cmp += r.at + " " + r.label + ": printed " + detail::fmt(r.printed) + " oracle " +
             detail::fmt(r.oracle);
    }
    os << csv_field(c.name) << ',' << csv_field(c.anchor) << ',' << c.samples << ','
       << detail::fmt(c.max_abs_residual) << ',' << detail::fmt(c.max_rel_residual) << ','
       << (c.status == Status::ReportOnly ? "" : detail::fmt(c.tolerance)) << ','
       << status_name(c.status) << ',' << csv_field(c.notes) << ',' << csv_field(cmp) << '\n';
  }
  return os.str();
}

std::string eval_to_json(const EvalResult& r) {
  ordered_json comps = ordered_json::object();
  for (const auto& [k, v] : r.components) comps[k] = number(v);
  ordered_json doc{{"quantity", r.quantity}, {"chart", r.chart}, {"components", std::move(comps)}};
  return doc.dump(2) + "\n";
}

std::string eval_to_csv(const EvalResult& r) {
  std::string out = "quantity,chart,component,value\n";
  for (const auto& [k, v] : r.components) {
    out += csv_field(r.quantity) + "," + csv_field(r.chart) + "," + csv_field(k) + "," +
           detail::fmt(v) + "\n";
  }
  return out;
}

}  // namespace lcs::harness
