#include "common.hpp"

namespace lcs::harness {

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"mc", "lcs", "charts", "metric", "bridge", "cover", "all"};
  return names;
}

std::vector<CheckReport> run_suite(const SuiteConfig& cfg, const std::string& suite) {
  cfg.validate();
  using Runner = std::vector<CheckReport> (*)(const SuiteConfig&);
  static const std::vector<std::pair<std::string, Runner>> runners{
      {"mc", detail::suite_mc},         {"lcs", detail::suite_lcs},
      {"charts", detail::suite_charts}, {"metric", detail::suite_metric},
      {"bridge", detail::suite_bridge}, {"cover", detail::suite_cover},
  };
  std::vector<CheckReport> out;
  bool found = false;
  for (const auto& [name, run] : runners) {
    if (suite != "all" && suite != name) continue;
    found = true;
    for (auto& r : run(cfg)) out.push_back(std::move(r));
  }
  if (!found) {
    std::string known;
    for (const auto& n : suite_names()) known += (known.empty() ? "" : ", ") + n;
    throw ConfigError("unknown suite '" + suite + "' (expected one of: " + known + ")");
  }
  return out;
}

}  // namespace lcs::harness
