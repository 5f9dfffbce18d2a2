#include <doctest.h>

#include <algorithm>
#include <json.hpp>

#include "lcs/errors.hpp"
#include "lcs/harness.hpp"

using namespace lcs;
using namespace lcs::harness;

namespace {

double component(const EvalResult& r, const std::string& key) {
  for (const auto& [k, v] : r.components)
    if (k == key) return v;
  FAIL("missing component " << key);
  return 0.0;
}

SuiteConfig small() {
  SuiteConfig cfg;
  cfg.samples = 40;
  cfg.roundtrip_samples = 200;
  cfg.ricci_samples = 5;
  cfg.cover_targets = 20;
  return cfg;
}

}  // namespace

TEST_CASE("streams depend only on seed and name") {
  Stream a(1, "x"), b(1, "x"), c(1, "y"), d(2, "x");
  const double va = a.uniform(0, 1);
  CHECK(va == b.uniform(0, 1));
  CHECK(va != c.uniform(0, 1));
  CHECK(va != d.uniform(0, 1));
  for (int i = 0; i < 1000; ++i) {
    const double u = a.uniform(-2.0, 3.0);
    CHECK(u >= -2.0);
    CHECK(u < 3.0);
  }
}

TEST_CASE("samplers respect the margins") {
  const SuiteConfig cfg;
  Stream s(cfg.seed, "margins");
  for (int i = 0; i < 2000; ++i) {
    const auto p = sample_ks(s, cfg);
    CHECK(p.theta > cfg.delta_theta);
    CHECK(p.theta < 3.141592653589793 - cfg.delta_theta);
    CHECK(p.r >= cfg.r_min);
    CHECK(p.t >= cfg.t_min);
    const auto e = sample_euler(s, cfg);
    CHECK(e[2] > cfg.delta_theta);
  }
}

TEST_CASE("configuration validation") {
  SuiteConfig cfg;
  cfg.samples = 0;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg = SuiteConfig{};
  cfg.tol_first_order = -1.0;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg = SuiteConfig{};
  cfg.r_min = 5.0;
  cfg.r_max = 1.0;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  CHECK_THROWS_AS(run_suite(SuiteConfig{}, "nonexistent"), ConfigError);
}

TEST_CASE("reports are deterministic and thread-count independent") {
  SuiteConfig cfg = small();
  const auto one = to_json(cfg, "all", run_suite(cfg, "all"));
  CHECK(one == to_json(cfg, "all", run_suite(cfg, "all")));
  cfg.threads = 3;
  CHECK(one == to_json(cfg, "all", run_suite(cfg, "all")));
}

TEST_CASE("report schema") {
  const SuiteConfig cfg = small();
  const auto checks = run_suite(cfg, "bridge");
  const auto doc = nlohmann::json::parse(to_json(cfg, "bridge", checks));
  REQUIRE(doc.contains("config"));
  REQUIRE(doc["checks"].size() == checks.size());
  for (const auto& c : doc["checks"]) {
    for (const char* key : {"name", "anchor", "samples", "max_abs_residual", "max_rel_residual", "status", "notes"})
      CHECK(c.contains(key));
  }
  const std::string csv = to_csv(checks);
  CHECK(csv.rfind("name,anchor,samples,max_abs_residual,max_rel_residual,tolerance,status,notes", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == static_cast<long>(checks.size()) + 1);
}

TEST_CASE("exit code ignores report-only rows") {
  CheckReport pass{"p", "", 1, 0.0, 0.0, 1.0, Status::Pass, "", {}};
  CheckReport ledger{"l", "", 1, 5.0, 5.0, 0.0, Status::ReportOnly, "", {}};
  CheckReport fail{"f", "", 1, 2.0, 2.0, 1.0, Status::Fail, "", {}};
  CHECK(exit_code({pass, ledger}) == 0);
  CHECK(exit_code({pass, ledger, fail}) == 1);
}

TEST_CASE("every suite passes on the default configuration") {
  const auto checks = run_suite(small(), "all");
  for (const auto& c : checks) {
    INFO(c.name);
    CHECK(c.status != Status::Fail);
  }
  for (const char* ledger : {"ledger.dvol_exponent", "ledger.nu_chain", "ledger.x_norm_identity",
                             "ledger.dtl_wedge_constant", "ledger.mc_sign_convention",
                             "ledger.min_poly_constant"}) {
    INFO(ledger);
    const auto it = std::find_if(checks.begin(), checks.end(), [&](const CheckReport& c) { return c.name == ledger; });
    REQUIRE(it != checks.end());
    CHECK(it->status == Status::ReportOnly);
    CHECK(it->comparisons.size() >= 3);
  }
}

TEST_CASE("roundtrip and cover sweeps") {
  SuiteConfig cfg;
  cfg.roundtrip_samples = 2000;
  const CheckReport rt = roundtrip_sweep(cfg, 2.0);
  CHECK(rt.status == Status::Pass);
  CHECK(rt.samples == 2000);
  CHECK(cover_check(cfg, bridge::CoverMap::doubling(), "d").status == Status::Pass);
  CHECK(cover_check(cfg, bridge::CoverMap({{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}}), "i").status == Status::Pass);
}

TEST_CASE("eval") {
  CHECK(component(eval_quantity("nu", "ks", {0.0, 1.0, 3.141592653589793 / 3, 0.0}, 2.0), "nu") ==
        doctest::Approx(-0.5).epsilon(1e-15));
  const EvalResult l = eval_quantity("lambda", "ks", {0.0, 1.0, 3.141592653589793 / 2, 0.0}, 2.0);
  CHECK(component(l, "dt") == 1.0);
  CHECK(component(l, "dr") == 1.0);
  CHECK(component(l, "dtheta") == 0.0);
  CHECK(component(l, "dphi") == doctest::Approx(2.0));
  const EvalResult c = eval_quantity("cayley", "cartesian", {0.0, 0.0, 0.0, 0.0}, 1.0);
  CHECK(component(c, "U11.re") == -1.0);
  CHECK(component(c, "U22.re") == -1.0);
  CHECK(component(c, "U12.re") == 0.0);

  CHECK_THROWS_AS(eval_quantity("nope", "ks", {0.0, 1.0, 1.0, 0.0}, 1.0), ConfigError);
  CHECK_THROWS_AS(eval_quantity("ricci", "euler", {1.0, 1.0, 1.0, 0.0}, 1.0), ConfigError);
  CHECK_THROWS_AS(eval_quantity("omega", "ks", {0.0, 1.0, 1.0, 0.0}, 1.0), SingularityError);
  CHECK_THROWS_AS(eval_quantity("nu", "cartesian", {0.0, 2.0, 0.0, 0.0}, 2.0), SingularityError);
}
