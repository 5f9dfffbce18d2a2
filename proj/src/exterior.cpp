#include "lcs/exterior.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <vector>

namespace lcs {

std::string chart_name(Chart chart) {
  switch (chart) {
    case Chart::KerrSchild:
      return "ks";
    case Chart::KerrNull:
      return "ks-null";
    case Chart::Cartesian:
      return "cartesian";
    case Chart::Euler:
      return "euler";
  }
  return "?";
}

const std::array<std::string, 4>& coordinate_names(Chart chart) {
  static const std::array<std::string, 4> ks{"t", "r", "theta", "phi"};
  static const std::array<std::string, 4> null{"t", "u", "theta", "phi"};
  static const std::array<std::string, 4> cart{"t", "x", "y", "z"};
  static const std::array<std::string, 4> euler{"t", "alpha", "beta", "gamma"};
  switch (chart) {
    case Chart::KerrSchild:
      return ks;
    case Chart::KerrNull:
      return null;
    case Chart::Cartesian:
      return cart;
    case Chart::Euler:
      return euler;
  }
  return ks;
}

// ---------------------------------------------------------------------------

namespace {

struct IndexTables {
  std::array<std::vector<std::uint8_t>, 5> by_degree;
  std::array<int, 16> position{};

  IndexTables() {
    // Lexicographic order on increasing tuples: enumerate tuples directly.
    for (int k = 0; k <= 4; ++k) {
      std::vector<std::vector<int>> tuples;
      std::vector<int> cur;
      auto rec = [&](auto&& self, int start) -> void {
        if (static_cast<int>(cur.size()) == k) {
          tuples.push_back(cur);
          return;
        }
        for (int i = start; i < 4; ++i) {
          cur.push_back(i);
          self(self, i + 1);
          cur.pop_back();
        }
      };
      rec(rec, 0);
      for (const auto& t : tuples) {
        std::uint8_t m = 0;
        for (int i : t) m |= static_cast<std::uint8_t>(1u << i);
        position[m] = static_cast<int>(by_degree[k].size());
        by_degree[k].push_back(m);
      }
    }
  }
};

const IndexTables& tables() {
  static const IndexTables t;
  return t;
}

}  // namespace

int binom4(int k) {
  static constexpr int b[5] = {1, 4, 6, 4, 1};
  return (k >= 0 && k <= 4) ? b[k] : 0;
}

std::span<const std::uint8_t> index_masks(int degree) { return tables().by_degree.at(degree); }

int index_position(std::uint8_t mask) { return tables().position.at(mask & 0xF); }

int shuffle_sign(std::uint8_t i, std::uint8_t j) {
  int inversions = 0;
  for (int a = 0; a < 4; ++a) {
    if (!(i & (1u << a))) continue;
    for (int b = 0; b < a; ++b)
      if (j & (1u << b)) ++inversions;
  }
  return inversions % 2 == 0 ? 1 : -1;
}

std::uint8_t mask_of(std::initializer_list<int> indices) {
  std::uint8_t m = 0;
  for (int i : indices) {
    if (i < 0 || i > 3 || (m & (1u << i))) throw FormError("invalid or repeated form index");
    m |= static_cast<std::uint8_t>(1u << i);
  }
  return m;
}

std::string index_label(Chart chart, std::uint8_t mask) {
  if (mask == 0) return "1";
  const auto& names = coordinate_names(chart);
  std::string s;
  for (int i = 0; i < 4; ++i) {
    if (!(mask & (1u << i))) continue;
    if (!s.empty()) s += "^";
    s += "d" + names[i];
  }
  return s;
}

FormValue<double> operator+(const FormValue<double>& a, const FormValue<double>& b) {
  if (a.degree != b.degree) throw FormError("adding form values of different degree");
  FormValue<double> r{a.degree, {}};
  for (int i = 0; i < a.size(); ++i) r.c[i] = a.c[i] + b.c[i];
  return r;
}

FormValue<double> operator-(const FormValue<double>& a, const FormValue<double>& b) {
  return a + (-1.0) * b;
}

FormValue<double> operator*(double s, const FormValue<double>& a) {
  FormValue<double> r{a.degree, {}};
  for (int i = 0; i < a.size(); ++i) r.c[i] = s * a.c[i];
  return r;
}

double max_abs(const FormValue<double>& v) {
  double m = 0.0;
  for (int i = 0; i < v.size(); ++i) m = std::max(m, std::fabs(v.c[i]));
  return m;
}

namespace detail {

void throw_coefficient_count(int degree, std::size_t got) {
  throw FormError("a degree-" + std::to_string(degree) + " form needs " +
                  std::to_string(binom4(degree)) + " coefficients, got " + std::to_string(got));
}

namespace {

template <class S>
constexpr bool at_max_depth() {
  return std::is_same_v<S, D3>;
}

[[noreturn]] void throw_depth(const char* op) {
  throw ConfigError(std::string(op) +
                    ": AD nesting depth exceeded (at most three stacked d/pullback operations)");
}

class ZeroForm final : public Forwarding<ZeroForm, FormNode, FormResult> {
 public:
  using Forwarding::Forwarding;
  template <class S>
  FormValue<S> impl(const Point<S>&) const {
    FormValue<S> out;
    out.degree = degree;
    return out;
  }
};

class LinearCombination final : public Forwarding<LinearCombination, FormNode, FormResult> {
 public:
  LinearCombination(std::vector<std::pair<double, std::shared_ptr<const FormNode>>> terms)
      : Forwarding(terms.front().second->chart, terms.front().second->degree),
        terms_(std::move(terms)) {}

  template <class S>
  FormValue<S> impl(const Point<S>& p) const {
    FormValue<S> out;
    out.degree = degree;
    const int n = binom4(degree);
    for (const auto& [w, node] : terms_) {
      const FormValue<S> v = node->eval(p);
      for (int i = 0; i < n; ++i) out.c[i] = out.c[i] + w * v.c[i];
    }
    return out;
  }

 private:
  std::vector<std::pair<double, std::shared_ptr<const FormNode>>> terms_;
};

class Wedge final : public Forwarding<Wedge, FormNode, FormResult> {
 public:
  Wedge(std::shared_ptr<const FormNode> a, std::shared_ptr<const FormNode> b)
      : Forwarding(a->chart, a->degree + b->degree), a_(std::move(a)), b_(std::move(b)) {}

  template <class S>
  FormValue<S> impl(const Point<S>& p) const {
    const FormValue<S> va = a_->eval(p);
    const FormValue<S> vb = b_->eval(p);
    FormValue<S> out;
    out.degree = degree;
    for (std::uint8_t k : index_masks(degree)) {
      S acc(0.0);
      for (std::uint8_t i : index_masks(a_->degree)) {
        if ((i & k) != i) continue;
        const std::uint8_t j = static_cast<std::uint8_t>(k & ~i);
        const S term = va.at(i) * vb.at(j);
        acc = shuffle_sign(i, j) > 0 ? acc + term : acc - term;
      }
      out.at(k) = acc;
    }
    return out;
  }

 private:
  std::shared_ptr<const FormNode> a_;
  std::shared_ptr<const FormNode> b_;
};

class ExteriorDerivative final : public Forwarding<ExteriorDerivative, FormNode, FormResult> {
 public:
  explicit ExteriorDerivative(std::shared_ptr<const FormNode> a)
      : Forwarding(a->chart, a->degree + 1), a_(std::move(a)) {}

  template <class S>
  FormValue<S> impl(const Point<S>& p) const {
    if constexpr (at_max_depth<S>()) {
      throw_depth("ext_d");
    } else {
      const FormValue<ad::Dual<S>> va = a_->eval(seed(p));
      FormValue<S> out;
      out.degree = degree;
      for (std::uint8_t j : index_masks(degree)) {
        S acc(0.0);
        int below = 0;
        for (int bit = 0; bit < 4; ++bit) {
          if (!(j & (1u << bit))) continue;
          const std::uint8_t rest = static_cast<std::uint8_t>(j & ~(1u << bit));
          const S& partial = va.at(rest).partial(bit);
          acc = (below % 2 == 0) ? acc + partial : acc - partial;
          ++below;
        }
        out.at(j) = acc;
      }
      return out;
    }
  }

 private:
  std::shared_ptr<const FormNode> a_;
};

class Pullback final : public Forwarding<Pullback, FormNode, FormResult> {
 public:
  Pullback(std::shared_ptr<const MapNode> map, Chart source, std::shared_ptr<const FormNode> a)
      : Forwarding(source, a->degree), map_(std::move(map)), a_(std::move(a)) {}

  template <class S>
  FormValue<S> impl(const Point<S>& p) const {
    if constexpr (at_max_depth<S>()) {
      throw_depth("pullback");
    } else {
      const Point<ad::Dual<S>> y = map_->eval(seed(p));
      Point<S> image;
      Matrix4<S> jac{};
      for (int i = 0; i < 4; ++i) {
        image[i] = y[i].value();
        for (int j = 0; j < 4; ++j) jac[i][j] = y[i].partial(j);
      }
      const FormValue<S> va = a_->eval(image);
      FormValue<S> out;
      out.degree = degree;
      for (std::uint8_t jm : index_masks(degree)) {
        S acc(0.0);
        for (std::uint8_t im : index_masks(degree)) {
          acc = acc + va.at(im) * linalg::minor(jac, im, jm);
        }
        out.at(jm) = acc;
      }
      return out;
    }
  }

 private:
  std::shared_ptr<const MapNode> map_;
  std::shared_ptr<const FormNode> a_;
};

template <class S>
void check_metric_det(const S& det) {
  if (std::fabs(ad::value_of(det)) < kSingularMetricDet) {
    throw SingularityError("metric is singular at this point (|det g| = " +
                           std::to_string(std::fabs(ad::value_of(det))) + ")");
  }
}

class Hodge final : public Forwarding<Hodge, FormNode, FormResult> {
 public:
  Hodge(std::shared_ptr<const MetricNode> g, std::shared_ptr<const FormNode> a, int orientation)
      : Forwarding(a->chart, 4 - a->degree),
        g_(std::move(g)),
        a_(std::move(a)),
        orientation_(orientation) {}

  template <class S>
  FormValue<S> impl(const Point<S>& p) const {
    const Matrix4<S> g = g_->eval(p);
    const S det = linalg::det(g);
    check_metric_det(det);
    const Matrix4<S> ginv = linalg::inverse(g, det);
    const S vol = ad::sqrt(ad::abs(det));
    const FormValue<S> va = a_->eval(p);
    const int k = a_->degree;
    FormValue<S> out;
    out.degree = degree;
    for (std::uint8_t j : index_masks(degree)) {
      const std::uint8_t i = static_cast<std::uint8_t>(0xF & ~j);
      // Raised component alpha^I.
      S raised(0.0);
      for (std::uint8_t ip : index_masks(k)) raised = raised + linalg::minor(ginv, i, ip) * va.at(ip);
      const double sign = static_cast<double>(orientation_ * shuffle_sign(i, j));
      out.at(j) = sign * vol * raised;
    }
    return out;
  }

 private:
  std::shared_ptr<const MetricNode> g_;
  std::shared_ptr<const FormNode> a_;
  int orientation_;
};

class PullbackMetric final : public Forwarding<PullbackMetric, MetricNode, MatrixResult> {
 public:
  PullbackMetric(std::shared_ptr<const MapNode> map, std::shared_ptr<const MetricNode> g)
      : map_(std::move(map)), g_(std::move(g)) {}

  template <class S>
  Matrix4<S> impl(const Point<S>& p) const {
    if constexpr (at_max_depth<S>()) {
      throw_depth("pullback");
    } else {
      const Point<ad::Dual<S>> y = map_->eval(seed(p));
      Point<S> image;
      Matrix4<S> jac{};
      for (int i = 0; i < 4; ++i) {
        image[i] = y[i].value();
        for (int j = 0; j < 4; ++j) jac[i][j] = y[i].partial(j);
      }
      const Matrix4<S> g = g_->eval(image);
      Matrix4<S> out{};
      for (int a = 0; a < 4; ++a) {
        for (int b = a; b < 4; ++b) {
          S acc(0.0);
          for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) acc = acc + jac[i][a] * g[i][j] * jac[j][b];
          out[a][b] = acc;
          out[b][a] = acc;
        }
      }
      return out;
    }
  }

 private:
  std::shared_ptr<const MapNode> map_;
  std::shared_ptr<const MetricNode> g_;
};

}  // namespace
}  // namespace detail

// ---------------------------------------------------------------------------

ChartMap ChartMap::identity(Chart chart) {
  return make(
      chart, chart, [](const auto& p) { return p; },
      [](const Point<double>& p) { return p; });
}

Matrix4<double> ChartMap::jacobian(const Point<double>& p) const {
  const Point<D1> y = node_->eval(seed(p));
  Matrix4<double> j{};
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) j[a][b] = y[a].partial(b);
  return j;
}

Point<double> ChartMap::inverse(const Point<double>& y) const {
  if (!inverse_) throw FormError("chart map has no inverse");
  return inverse_(y);
}

double ChartMap::roundtrip_residual(const Point<double>& p) const {
  const Point<double> back = inverse((*this)(p));
  double r = 0.0;
  for (int i = 0; i < 4; ++i) r = std::max(r, std::fabs(back[i] - p[i]));
  return r;
}

double MetricField::determinant(const Point<double>& p) const { return linalg::det((*this)(p)); }

KFormField zero_form(Chart chart, int degree) {
  if (degree < 0 || degree > 4) throw FormError("form degree must be 0..4");
  return KFormField(std::make_shared<detail::ZeroForm>(chart, degree));
}

KFormField constant_function(Chart chart, double value) {
  return KFormField::from_coefficients(chart, 0, [value](const auto& p) {
    using S = scalar_of<decltype(p)>;
    return S(value);
  });
}

KFormField coordinate_differential(Chart chart, int i) {
  if (i < 0 || i > 3) throw FormError("coordinate index must be 0..3");
  return KFormField::from_coefficients(chart, 1, [i](const auto& p) {
    using S = scalar_of<decltype(p)>;
    std::array<S, 4> c{};
    c[i] = S(1.0);
    return c;
  });
}

namespace {

void require_same_chart(const KFormField& a, const KFormField& b, const char* op) {
  if (a.chart() != b.chart()) {
    throw FormError(std::string(op) + ": chart mismatch (" + chart_name(a.chart()) + " vs " +
                    chart_name(b.chart()) + ")");
  }
}

KFormField combine(std::vector<std::pair<double, KFormField>> terms) {
  std::vector<std::pair<double, std::shared_ptr<const detail::FormNode>>> nodes;
  for (auto& [w, f] : terms) nodes.emplace_back(w, f.node());
  return KFormField(std::make_shared<detail::LinearCombination>(std::move(nodes)));
}

}  // namespace

KFormField operator+(const KFormField& a, const KFormField& b) {
  require_same_chart(a, b, "+");
  if (a.degree() != b.degree()) throw FormError("+: degree mismatch");
  return combine({{1.0, a}, {1.0, b}});
}

KFormField operator-(const KFormField& a, const KFormField& b) {
  require_same_chart(a, b, "-");
  if (a.degree() != b.degree()) throw FormError("-: degree mismatch");
  return combine({{1.0, a}, {-1.0, b}});
}

KFormField operator*(double s, const KFormField& a) { return combine({{s, a}}); }

KFormField wedge(const KFormField& a, const KFormField& b) {
  require_same_chart(a, b, "wedge");
  if (a.degree() + b.degree() > 4) {
    throw FormError("wedge: degree " + std::to_string(a.degree() + b.degree()) +
                    " exceeds the chart dimension 4");
  }
  return KFormField(std::make_shared<detail::Wedge>(a.node(), b.node()));
}

KFormField ext_d(const KFormField& a) {
  if (a.degree() >= 4) throw FormError("ext_d: degree-4 form has no exterior derivative here");
  return KFormField(std::make_shared<detail::ExteriorDerivative>(a.node()));
}

KFormField pullback(const ChartMap& map, const KFormField& a) {
  if (a.chart() != map.target()) {
    throw FormError("pullback: form lives on " + chart_name(a.chart()) + ", map targets " +
                    chart_name(map.target()));
  }
  return KFormField(std::make_shared<detail::Pullback>(map.node(), map.source(), a.node()));
}

KFormField hodge_star(const MetricField& g, const KFormField& a, Orientation orientation) {
  if (g.chart() != a.chart()) throw FormError("hodge_star: metric and form charts differ");
  return KFormField(
      std::make_shared<detail::Hodge>(g.node(), a.node(), static_cast<int>(orientation)));
}

KFormField volume_form(const MetricField& g, Orientation orientation) {
  return hodge_star(g, constant_function(g.chart(), 1.0), orientation);
}

KFormField lee_form(Chart chart) {
  return KFormField::from_coefficients(chart, 1, [](const auto& p) {
    using S = scalar_of<decltype(p)>;
    if (std::fabs(ad::value_of(p[0])) < kLeeMargin) {
      throw SingularityError("Lee form t^-1 dt is singular at t = " +
                             std::to_string(ad::value_of(p[0])));
    }
    return std::array<S, 4>{S(1.0) / p[0], S(0.0), S(0.0), S(0.0)};
  });
}

MetricField minkowski_metric(Chart chart) {
  return MetricField::from_components(chart, [](const auto& p) {
    using S = scalar_of<decltype(p)>;
    Matrix4<S> g{};
    g[0][0] = S(-1.0);
    g[1][1] = g[2][2] = g[3][3] = S(1.0);
    return g;
  });
}

MetricField pullback(const ChartMap& map, const MetricField& g) {
  if (g.chart() != map.target()) throw FormError("pullback: metric chart mismatch");
  return MetricField(map.source(), std::make_shared<detail::PullbackMetric>(map.node(), g.node()));
}

namespace {

// Γ^a_bc at depth S from g evaluated one level deeper.
template <class S>
std::array<Matrix4<S>, 4> christoffel_at(const MetricField& field, const Point<S>& p) {
  const Matrix4<ad::Dual<S>> gd = field.eval(seed(p));
  Matrix4<S> g{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) g[i][j] = gd[i][j].value();
  const S det = linalg::det(g);
  detail::check_metric_det(det);
  const Matrix4<S> ginv = linalg::inverse(g, det);
  // dg[k][i][j] = ∂_k g_ij
  auto dg = [&](int k, int i, int j) -> const S& { return gd[i][j].partial(k); };
  std::array<Matrix4<S>, 4> gamma{};
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      for (int c = b; c < 4; ++c) {
        S acc(0.0);
        for (int d = 0; d < 4; ++d) {
          acc = acc + ginv[a][d] * (dg(b, d, c) + dg(c, d, b) - dg(d, b, c));
        }
        gamma[a][b][c] = 0.5 * acc;
        gamma[a][c][b] = gamma[a][b][c];
      }
    }
  }
  return gamma;
}

}  // namespace

std::array<Matrix4<double>, 4> christoffel(const MetricField& g, const Point<double>& p) {
  return christoffel_at(g, p);
}

Matrix4<double> ricci_tensor(const MetricField& g, const Point<double>& p) {
  // Γ carries its own first derivatives when computed at depth 1.
  const std::array<Matrix4<D1>, 4> gd = christoffel_at(g, seed(p));
  auto gamma = [&](int a, int b, int c) { return gd[a][b][c].value(); };
  auto dgamma = [&](int k, int a, int b, int c) { return gd[a][b][c].partial(k); };
  Matrix4<double> ric{};
  for (int b = 0; b < 4; ++b) {
    for (int d = b; d < 4; ++d) {
      double acc = 0.0;
      for (int a = 0; a < 4; ++a) {
        acc += dgamma(a, a, b, d) - dgamma(d, a, b, a);
        for (int e = 0; e < 4; ++e) {
          acc += gamma(a, a, e) * gamma(e, b, d) - gamma(a, d, e) * gamma(e, b, a);
        }
      }
      ric[b][d] = acc;
      ric[d][b] = acc;
    }
  }
  return ric;
}

}  // namespace lcs
