// Command-line front end: verify, eval, roundtrip, cover.

#include <CLI11.hpp>
#include <charconv>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

#include "lcs/errors.hpp"
#include "lcs/harness.hpp"

namespace {

using namespace lcs;
using namespace lcs::harness;

constexpr int kExitUsage = 2;
constexpr int kExitDomain = 3;

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t");
  const auto e = s.find_last_not_of(" \t");
  return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
}

double parse_number(const std::string& tok) {
  if (tok == "pi" || tok == "π") return std::numbers::pi;
  double v = 0.0;
  const char* end = tok.data() + tok.size();
  auto [p, ec] = std::from_chars(tok.data(), end, v);
  if (ec != std::errc() || p != end) throw ConfigError("cannot parse number '" + tok + "'");
  return v;
}

// Accepts products and quotients of numbers and pi: "pi/3", "-2*pi/3", "0.25".
double parse_scalar(std::string s) {
  s = trim(s);
  if (s.empty()) throw ConfigError("empty coordinate");
  double sign = 1.0;
  if (s[0] == '-' || s[0] == '+') {
    if (s[0] == '-') sign = -1.0;
    s = trim(s.substr(1));
  }
  double value = 1.0;
  char op = '*';
  std::size_t pos = 0;
  while (true) {
    const std::size_t next = s.find_first_of("*/", pos);
    const double f = parse_number(trim(s.substr(pos, next == std::string::npos ? std::string::npos : next - pos)));
    value = op == '*' ? value * f : value / f;
    if (next == std::string::npos) break;
    op = s[next];
    pos = next + 1;
  }
  return sign * value;
}

std::vector<double> parse_list(const std::string& s, char sep) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(parse_scalar(item));
  return out;
}

Point<double> parse_point(const std::string& s) {
  const auto v = parse_list(s, ',');
  if (v.size() != 4) throw ConfigError("--point needs 4 comma-separated coordinates, got " + std::to_string(v.size()));
  return {v[0], v[1], v[2], v[3]};
}

bridge::CoverMap parse_matrix(const std::string& s) {
  if (s == "[2]" || s == "2") return bridge::CoverMap::doubling();
  if (s == "identity") return bridge::CoverMap({{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}});
  if (s == "diag2") return bridge::CoverMap({{{2, 0, 0}, {0, 2, 0}, {0, 0, 2}}});
  // "m00,m01,m02;m10,m11,m12;m20,m21,m22"
  std::stringstream ss(s);
  std::string row;
  bridge::Matrix3 m{};
  int i = 0;
  while (std::getline(ss, row, ';')) {
    if (i >= 3) throw ConfigError("--matrix has more than 3 rows");
    const auto v = parse_list(row, ',');
    if (v.size() != 3) throw ConfigError("--matrix rows need 3 entries");
    for (int j = 0; j < 3; ++j) m[i][j] = v[j];
    ++i;
  }
  if (i != 3) throw ConfigError("--matrix needs 3 rows");
  return bridge::CoverMap::from_real(m);
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot open report file '" + path + "'");
  f << text;
}

std::string render(const SuiteConfig& cfg, const std::string& suite,
                   const std::vector<CheckReport>& checks, const std::string& format) {
  return format == "csv" ? to_csv(checks) : to_json(cfg, suite, checks);
}

void summary(const std::vector<CheckReport>& checks) {
  std::size_t pass = 0, fail = 0, ledger = 0;
  for (const auto& c : checks) {
    if (c.status == Status::Pass) ++pass;
    else if (c.status == Status::Fail) ++fail;
    else ++ledger;
  }
  for (const auto& c : checks)
    if (c.status == Status::Fail) std::cerr << "FAIL " << c.name << " residual " << c.max_abs_residual << " > " << c.tolerance << "\n";
  std::cerr << pass << " passed, " << fail << " failed, " << ledger << " report-only\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical verifier for the Kerr / U(2) locally conformally symplectic comparison"};
  app.require_subcommand(1);

  SuiteConfig cfg;
  std::string suite = "all", report, format = "json", a_list;

  auto* verify = app.add_subcommand("verify", "Run a check suite and write a report");
  verify->add_option("--suite", suite, "mc, lcs, charts, metric, bridge, cover or all");
  verify->add_option("--a", a_list, "comma-separated spin parameters");
  verify->add_option("--samples", cfg.samples, "samples per check");
  verify->add_option("--seed", cfg.seed, "RNG seed");
  verify->add_option("--tol", cfg.tol_first_order, "first-order tolerance");
  verify->add_option("--report", report, "write the report here instead of stdout");
  verify->add_option("--format", format)->check(CLI::IsMember({"json", "csv"}));
  verify->add_option("--threads", cfg.threads, "worker threads");

  std::string quantity, chart = "ks", point;
  double a = 1.0;
  auto* eval = app.add_subcommand("eval", "Print one quantity at one point");
  eval->add_option("--quantity", quantity)->required();
  eval->add_option("--chart", chart)->check(CLI::IsMember({"ks", "cartesian", "euler"}));
  eval->add_option("--point", point, "t,r,θ,φ (or t,x,y,z / t,α,β,γ); pi expressions allowed")->required();
  eval->add_option("--a", a);
  eval->add_option("--format", format)->check(CLI::IsMember({"json", "csv"}));

  auto* roundtrip = app.add_subcommand("roundtrip", "Chart inverse round trip sweep");
  roundtrip->add_option("--a", a);
  roundtrip->add_option("--samples", cfg.roundtrip_samples);
  roundtrip->add_option("--seed", cfg.seed);
  roundtrip->add_option("--format", format)->check(CLI::IsMember({"json", "csv"}));

  std::string matrix = "[2]";
  auto* cover = app.add_subcommand("cover", "Torus covering preimage counts");
  cover->add_option("--matrix", matrix, "[2], identity, diag2 or \"r0;r1;r2\" with comma-separated rows");
  cover->add_option("--targets", cfg.cover_targets);
  cover->add_option("--seed", cfg.seed);
  cover->add_option("--format", format)->check(CLI::IsMember({"json", "csv"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  try {
    if (*verify) {
      if (!a_list.empty()) cfg.a_values = parse_list(a_list, ',');
      const auto checks = run_suite(cfg, suite);
      emit(render(cfg, suite, checks, format), report);
      summary(checks);
      return exit_code(checks);
    }
    if (*eval) {
      const EvalResult r = eval_quantity(quantity, chart, parse_point(point), a);
      std::cout << (format == "csv" ? eval_to_csv(r) : eval_to_json(r));
      return 0;
    }
    if (*roundtrip) {
      cfg.validate();
      const std::vector<CheckReport> checks{roundtrip_sweep(cfg, a)};
      std::cout << render(cfg, "roundtrip", checks, format);
      return exit_code(checks);
    }
    if (*cover) {
      cfg.validate();
      const std::vector<CheckReport> checks{cover_check(cfg, parse_matrix(matrix), "cli")};
      std::cout << render(cfg, "cover", checks, format);
      return exit_code(checks);
    }
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DomainError& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return kExitDomain;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return kExitUsage;
}
