#include "lcs/ad.hpp"

#include <sstream>

namespace lcs::ad {

void throw_domain(const char* fn, double value) {
  std::ostringstream os;
  os.precision(17);
  os << "ad: " << fn << " argument " << value << " outside its real domain";
  throw DomainError(os.str());
}

namespace {

void check_count(std::size_t n) {
  if (n < 1 || n > static_cast<std::size_t>(kMaxVars)) {
    throw ConfigError("ad: make_vars needs 1..4 values, got " + std::to_string(n));
  }
}

}  // namespace

std::vector<Scalar> make_vars(std::span<const double> values) {
  check_count(values.size());
  const int n = static_cast<int>(values.size());
  std::vector<Scalar> vars;
  vars.reserve(values.size());
  for (int i = 0; i < n; ++i) vars.push_back(Scalar::variable(values[i], i, n));
  return vars;
}

std::vector<Scalar2> make_nested_vars(std::span<const double> values) {
  check_count(values.size());
  const int n = static_cast<int>(values.size());
  std::vector<Scalar2> vars;
  vars.reserve(values.size());
  for (int i = 0; i < n; ++i) {
    vars.push_back(Scalar2::variable(Scalar::variable(values[i], i, n), i, n));
  }
  return vars;
}

std::vector<std::vector<double>> hessian(const Scalar2& y) {
  const int n = y.count();
  if (n == 0) throw ConfigError("ad: hessian of a scalar with no active variables");
  auto inner_ok = [n](const Scalar& s) { return s.count() == 0 || s.count() == n; };
  if (!inner_ok(y.value())) {
    throw ConfigError("ad: hessian inner variable set (" + std::to_string(y.value().count()) +
                      ") differs from outer (" + std::to_string(n) + ")");
  }
  std::vector<std::vector<double>> h(n, std::vector<double>(n, 0.0));
  for (int i = 0; i < n; ++i) {
    const Scalar& gi = y.partial(i);
    if (!inner_ok(gi)) {
      throw ConfigError("ad: hessian inner variable set (" + std::to_string(gi.count()) +
                        ") differs from outer (" + std::to_string(n) + ")");
    }
    for (int j = 0; j < n; ++j) h[i][j] = gi.partial(j);
  }
  return h;
}

std::vector<double> gradient(const Scalar& y) {
  std::vector<double> g(y.count());
  for (int i = 0; i < y.count(); ++i) g[i] = y.partial(i);
  return g;
}

}  // namespace lcs::ad
