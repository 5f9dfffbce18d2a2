#pragma once

// Pointwise exterior calculus on 4-coordinate charts.
//
// A KFormField is an immutable expression over coefficient functions. Leaves
// are generic callables evaluated at any AD depth; d and pullback evaluate
// their operand one nesting level deeper, so identities such as d(d(w)) = 0
// are exact up to rounding rather than finite-difference noise. At most three
// derivative-taking operations may be stacked.

#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <type_traits>
#include <utility>

#include "lcs/ad.hpp"
#include "lcs/errors.hpp"
#include "lcs/linalg.hpp"

namespace lcs {

enum class Chart {
  KerrSchild,  // (t, r, theta, phi)
  KerrNull,    // (t, u, theta, phi), u = t + r
  Cartesian,   // (t, x, y, z)
  Euler,       // (t, alpha, beta, gamma)
};

std::string chart_name(Chart chart);
const std::array<std::string, 4>& coordinate_names(Chart chart);

template <class S>
using Point = std::array<S, 4>;

using D0 = double;
using D1 = ad::Dual<double>;
using D2 = ad::Dual<D1>;
using D3 = ad::Dual<D2>;

/// Scalar type of a point-like argument in generic coefficient lambdas.
template <class P>
using scalar_of = std::decay_t<decltype(std::declval<const P&>()[0])>;

/// Promotes p to the next nesting level with the four coordinates seeded.
template <class S>
Point<ad::Dual<S>> seed(const Point<S>& p) {
  Point<ad::Dual<S>> out;
  for (int i = 0; i < 4; ++i) out[i] = ad::Dual<S>::variable(p[i], i, 4);
  return out;
}

template <class S>
Point<S> lift(const Point<double>& p) {
  return {S(p[0]), S(p[1]), S(p[2]), S(p[3])};
}

inline Point<double> value_point(const Point<double>& p) { return p; }
template <class S>
Point<double> value_point(const Point<S>& p) {
  return {ad::value_of(p[0]), ad::value_of(p[1]), ad::value_of(p[2]), ad::value_of(p[3])};
}

// ---------------------------------------------------------------------------
// Multi-indices. A strictly increasing index tuple I ⊂ {0,1,2,3} is a 4-bit
// mask; tuples of one degree are ordered lexicographically.

int binom4(int k);
std::span<const std::uint8_t> index_masks(int degree);
/// Position of mask within index_masks(popcount(mask)).
int index_position(std::uint8_t mask);
/// Sign of the permutation sorting the concatenation (I, J), I and J disjoint.
int shuffle_sign(std::uint8_t i, std::uint8_t j);
std::uint8_t mask_of(std::initializer_list<int> indices);
/// "dt^dr" style label.
std::string index_label(Chart chart, std::uint8_t mask);

/// Coefficients of a k-form at one point.
template <class S>
struct FormValue {
  int degree = 0;
  std::array<S, 6> c{};

  int size() const { return binom4(degree); }
  S& operator[](int i) { return c[i]; }
  const S& operator[](int i) const { return c[i]; }
  S& at(std::uint8_t mask) { return c[index_position(mask)]; }
  const S& at(std::uint8_t mask) const { return c[index_position(mask)]; }
  const S& at(std::initializer_list<int> idx) const { return at(mask_of(idx)); }
};

FormValue<double> operator+(const FormValue<double>& a, const FormValue<double>& b);
FormValue<double> operator-(const FormValue<double>& a, const FormValue<double>& b);
FormValue<double> operator*(double s, const FormValue<double>& a);
/// Largest coefficient modulus.
double max_abs(const FormValue<double>& v);

// ---------------------------------------------------------------------------
// Type erasure over the four supported nesting depths.

namespace detail {

template <class Result>
class LevelDispatch {
 public:
  virtual ~LevelDispatch() = default;
  virtual typename Result::template at<D0> eval(const Point<D0>& p) const = 0;
  virtual typename Result::template at<D1> eval(const Point<D1>& p) const = 0;
  virtual typename Result::template at<D2> eval(const Point<D2>& p) const = 0;
  virtual typename Result::template at<D3> eval(const Point<D3>& p) const = 0;
};

struct FormResult {
  template <class S>
  using at = FormValue<S>;
};
struct PointResult {
  template <class S>
  using at = Point<S>;
};
struct MatrixResult {
  template <class S>
  using at = Matrix4<S>;
};

/// Implements the four virtual overloads by forwarding to Derived::impl<S>.
template <class Derived, class Base, class Result>
class Forwarding : public Base {
 public:
  using Base::Base;
  typename Result::template at<D0> eval(const Point<D0>& p) const final {
    return static_cast<const Derived*>(this)->impl(p);
  }
  typename Result::template at<D1> eval(const Point<D1>& p) const final {
    return static_cast<const Derived*>(this)->impl(p);
  }
  typename Result::template at<D2> eval(const Point<D2>& p) const final {
    return static_cast<const Derived*>(this)->impl(p);
  }
  typename Result::template at<D3> eval(const Point<D3>& p) const final {
    return static_cast<const Derived*>(this)->impl(p);
  }
};

class FormNode : public LevelDispatch<FormResult> {
 public:
  FormNode(Chart chart, int degree) : chart(chart), degree(degree) {}
  const Chart chart;
  const int degree;
};

class MapNode : public LevelDispatch<PointResult> {};
class MetricNode : public LevelDispatch<MatrixResult> {};

[[noreturn]] void throw_coefficient_count(int degree, std::size_t got);

template <class Fn>
class LeafForm final : public Forwarding<LeafForm<Fn>, FormNode, FormResult> {
 public:
  LeafForm(Chart chart, int degree, Fn fn)
      : Forwarding<LeafForm<Fn>, FormNode, FormResult>(chart, degree), fn_(std::move(fn)) {}

  template <class S>
  FormValue<S> impl(const Point<S>& p) const {
    FormValue<S> v;
    v.degree = this->degree;
    auto coeffs = fn_(p);
    if constexpr (std::is_convertible_v<decltype(coeffs), S>) {
      if (this->degree != 0) throw_coefficient_count(this->degree, 1);
      v.c[0] = coeffs;
    } else {
      constexpr std::size_t n = std::tuple_size_v<decltype(coeffs)>;
      if (static_cast<int>(n) != binom4(this->degree)) throw_coefficient_count(this->degree, n);
      for (std::size_t i = 0; i < n; ++i) v.c[i] = coeffs[i];
    }
    return v;
  }

 private:
  Fn fn_;
};

template <class Fn>
class LeafMap final : public Forwarding<LeafMap<Fn>, MapNode, PointResult> {
 public:
  explicit LeafMap(Fn fn) : fn_(std::move(fn)) {}
  template <class S>
  Point<S> impl(const Point<S>& p) const {
    return fn_(p);
  }

 private:
  Fn fn_;
};

template <class Fn>
class LeafMetric final : public Forwarding<LeafMetric<Fn>, MetricNode, MatrixResult> {
 public:
  explicit LeafMetric(Fn fn) : fn_(std::move(fn)) {}
  template <class S>
  Matrix4<S> impl(const Point<S>& p) const {
    Matrix4<S> g = fn_(p);
    // Stored once: the upper triangle is authoritative.
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < i; ++j) g[i][j] = g[j][i];
    return g;
  }

 private:
  Fn fn_;
};

}  // namespace detail

// ---------------------------------------------------------------------------

class KFormField {
 public:
  /// fn(point) returns std::array<S, C(4,degree)> in index_masks order (or a
  /// bare scalar for degree 0).
  template <class Fn>
  static KFormField from_coefficients(Chart chart, int degree, Fn fn) {
    if (degree < 0 || degree > 4) throw FormError("form degree must be 0..4");
    return KFormField(std::make_shared<detail::LeafForm<Fn>>(chart, degree, std::move(fn)));
  }

  Chart chart() const { return node_->chart; }
  int degree() const { return node_->degree; }

  template <class S>
  FormValue<S> eval(const Point<S>& p) const {
    return node_->eval(p);
  }
  FormValue<double> operator()(const Point<double>& p) const { return node_->eval(p); }

  explicit KFormField(std::shared_ptr<const detail::FormNode> node) : node_(std::move(node)) {}
  const std::shared_ptr<const detail::FormNode>& node() const { return node_; }

 private:
  std::shared_ptr<const detail::FormNode> node_;
};

/// Smooth map between 4-coordinate charts.
class ChartMap {
 public:
  using Inverse = std::function<Point<double>(const Point<double>&)>;

  template <class Fn>
  static ChartMap make(Chart source, Chart target, Fn fn, Inverse inverse = {}) {
    return ChartMap(source, target, std::make_shared<detail::LeafMap<Fn>>(std::move(fn)),
                    std::move(inverse));
  }
  static ChartMap identity(Chart chart);

  Chart source() const { return source_; }
  Chart target() const { return target_; }

  template <class S>
  Point<S> operator()(const Point<S>& p) const {
    return node_->eval(p);
  }
  Matrix4<double> jacobian(const Point<double>& p) const;

  bool has_inverse() const { return static_cast<bool>(inverse_); }
  Point<double> inverse(const Point<double>& y) const;
  /// max |inverse(F(p)) - p|
  double roundtrip_residual(const Point<double>& p) const;

  const std::shared_ptr<const detail::MapNode>& node() const { return node_; }

 private:
  ChartMap(Chart source, Chart target, std::shared_ptr<const detail::MapNode> node,
           Inverse inverse)
      : source_(source), target_(target), node_(std::move(node)), inverse_(std::move(inverse)) {}

  Chart source_;
  Chart target_;
  std::shared_ptr<const detail::MapNode> node_;
  Inverse inverse_;
};

/// Symmetric 4x4 metric field of signature (-,+,+,+).
class MetricField {
 public:
  /// fn(point) returns a Matrix4<S>; only the upper triangle is read.
  template <class Fn>
  static MetricField from_components(Chart chart, Fn fn) {
    return MetricField(chart, std::make_shared<detail::LeafMetric<Fn>>(std::move(fn)));
  }

  Chart chart() const { return chart_; }

  template <class S>
  Matrix4<S> eval(const Point<S>& p) const {
    return node_->eval(p);
  }
  Matrix4<double> operator()(const Point<double>& p) const { return node_->eval(p); }
  double determinant(const Point<double>& p) const;

  MetricField(Chart chart, std::shared_ptr<const detail::MetricNode> node)
      : chart_(chart), node_(std::move(node)) {}
  const std::shared_ptr<const detail::MetricNode>& node() const { return node_; }

 private:
  Chart chart_;
  std::shared_ptr<const detail::MetricNode> node_;
};

enum class Orientation : int { Positive = 1, Negative = -1 };

// Constructors.
KFormField zero_form(Chart chart, int degree);
KFormField constant_function(Chart chart, double value);
/// dx^i
KFormField coordinate_differential(Chart chart, int i);

// Algebra.
KFormField operator+(const KFormField& a, const KFormField& b);
KFormField operator-(const KFormField& a, const KFormField& b);
KFormField operator*(double s, const KFormField& a);

KFormField wedge(const KFormField& a, const KFormField& b);
KFormField ext_d(const KFormField& a);
KFormField pullback(const ChartMap& map, const KFormField& a);
KFormField hodge_star(const MetricField& g, const KFormField& a,
                      Orientation orientation = Orientation::Positive);
KFormField volume_form(const MetricField& g, Orientation orientation = Orientation::Positive);

MetricField minkowski_metric(Chart chart);
/// F^*g: J^T g(F(x)) J.
MetricField pullback(const ChartMap& map, const MetricField& g);

/// Christoffel symbols of the second kind, gamma[a][b][c] = Γ^a_bc.
std::array<Matrix4<double>, 4> christoffel(const MetricField& g, const Point<double>& p);
/// Ricci tensor from the coordinate formula with nested-AD second derivatives.
Matrix4<double> ricci_tensor(const MetricField& g, const Point<double>& p);

/// Lee form η = t⁻¹dt of the time coordinate x⁰. Evaluation throws
/// SingularityError when |t| < kLeeMargin.
KFormField lee_form(Chart chart);
inline constexpr double kLeeMargin = 1e-12;

/// Largest |det g| below which Hodge and curvature computations refuse.
inline constexpr double kSingularMetricDet = 1e-14;

}  // namespace lcs
