#include "common.hpp"
#include "lcs/unitary.hpp"

namespace lcs::harness {

namespace {

using kerr::CartesianEvent;
using kerr::KSPoint;

enum class ChartArg { Ks, Cartesian, Euler };

ChartArg parse_chart(const std::string& chart) {
  if (chart == "ks") return ChartArg::Ks;
  if (chart == "cartesian") return ChartArg::Cartesian;
  if (chart == "euler") return ChartArg::Euler;
  throw ConfigError("unknown chart '" + chart + "' (expected ks, cartesian or euler)");
}

[[noreturn]] void unsupported(const std::string& q, const std::string& chart) {
  throw ConfigError("quantity '" + q + "' is not available on chart '" + chart + "'");
}

void add_form(EvalResult& out, Chart chart, const FormValue<double>& v) {
  const auto masks = index_masks(v.degree);
  for (std::size_t i = 0; i < masks.size(); ++i) {
    out.components.emplace_back(index_label(chart, masks[i]), v[static_cast<int>(i)]);
  }
}

void add_matrix(EvalResult& out, Chart chart, const Matrix4<double>& m, const std::string& sym) {
  const auto& names = coordinate_names(chart);
  for (int i = 0; i < 4; ++i)
    for (int j = i; j < 4; ++j) out.components.emplace_back(sym + "_" + names[i] + names[j], m[i][j]);
}

void add_unitary(EvalResult& out, const CMatrix2& u) {
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      const std::string idx = "U" + std::to_string(i + 1) + std::to_string(j + 1);
      out.components.emplace_back(idx + ".re", u(i, j).re);
      out.components.emplace_back(idx + ".im", u(i, j).im);
    }
  }
}

struct Located {
  KSPoint ks;
  CartesianEvent event;
};

Located locate(ChartArg chart, const Point<double>& p, const kerr::KerrParams& params,
               const std::string& q, const std::string& chart_name) {
  if (chart == ChartArg::Ks) {
    const KSPoint ks = KSPoint::from(p);
    return {ks, kerr::ks_to_cartesian(ks, params)};
  }
  if (chart == ChartArg::Cartesian) {
    const CartesianEvent e = CartesianEvent::from(p);
    return {kerr::cartesian_to_ks(e, params), e};
  }
  unsupported(q, chart_name);
}

}  // namespace

const std::vector<std::string>& quantity_names() {
  static const std::vector<std::string> names{
      "lambda", "dlambda", "omega", "omega_wedge", "nu",    "oblateness", "kappa",
      "metric", "volume",  "divergence", "ricci", "mc_frame", "cayley"};
  return names;
}

EvalResult eval_quantity(const std::string& q, const std::string& chart_name,
                         const Point<double>& p, double a) {
  const ChartArg chart = parse_chart(chart_name);
  if (std::find(quantity_names().begin(), quantity_names().end(), q) == quantity_names().end()) {
    throw ConfigError("unknown quantity '" + q + "'");
  }
  EvalResult out{q, chart_name, {}};

  if (chart == ChartArg::Euler) {
    if (q == "mc_frame") {
      const auto f = unitary::mc_frame_closed_form();
      const std::array<std::pair<const char*, const KFormField*>, 3> forms{
          {{"alpha", &f.alpha}, {"beta", &f.beta}, {"gamma", &f.gamma}}};
      for (const auto& [name, form] : forms) {
        const FormValue<double> v = (*form)(p);
        for (int i = 0; i < 4; ++i) {
          out.components.emplace_back(std::string(name) + "." + index_label(Chart::Euler, 1u << i), v[i]);
        }
      }
    } else if (q == "omega") {
      add_form(out, Chart::Euler, unitary::omega_u2()(p));
    } else if (q == "omega_wedge") {
      const KFormField w = unitary::omega_u2();
      add_form(out, Chart::Euler, wedge(w, w)(p));
    } else {
      unsupported(q, chart_name);
    }
    return out;
  }

  const kerr::KerrParams params(a);
  const Chart form_chart = chart == ChartArg::Ks ? Chart::KerrSchild : Chart::Cartesian;

  if (q == "lambda" || q == "dlambda") {
    KFormField l = chart == ChartArg::Ks ? kerr::lambda_form(params) : kerr::lambda_cartesian_form(params);
    if (q == "dlambda") l = ext_d(l);
    add_form(out, form_chart, l(p));
  } else if (q == "omega" || q == "omega_wedge") {
    if (chart != ChartArg::Ks) unsupported(q, chart_name);
    const KFormField w = kerr::omega_kerr(params);
    add_form(out, form_chart, q == "omega" ? w(p) : wedge(w, w)(p));
  } else if (q == "metric") {
    const MetricField g = chart == ChartArg::Ks ? kerr::kerr_metric_ks(params)
                                                : kerr::kerr_metric_cartesian(params);
    add_matrix(out, form_chart, g(p), "g");
  } else if (q == "volume") {
    const MetricField g = chart == ChartArg::Ks ? kerr::kerr_metric_ks(params)
                                                : kerr::kerr_metric_cartesian(params);
    add_form(out, form_chart, volume_form(g)(p));
  } else if (q == "cayley" && chart == ChartArg::Cartesian) {
    add_unitary(out, unitary::cayley(unitary::hermitian_from_event(CartesianEvent::from(p))));
  } else {
    const Located loc = locate(chart, p, params, q, chart_name);
    if (q == "nu" || q == "oblateness" || q == "kappa") {
      const kerr::DerivedScalars d = kerr::derived_scalars(loc.ks, params);
      if (q == "nu") {
        out.components.emplace_back("nu", d.nu);
      } else {
        const auto& v = q == "oblateness" ? d.oblateness : d.kappa;
        if (!v) throw DomainError(q + " is undefined on z = 0");
        out.components.emplace_back(q, *v);
      }
    } else if (q == "divergence") {
      out.components.emplace_back("divergence", kerr::flat_divergence(params, loc.event));
    } else if (q == "ricci") {
      const kerr::RicciResult r = kerr::ricci_residual(params, loc.event);
      add_matrix(out, Chart::Cartesian, r.ricci, "R");
      out.components.emplace_back("max_abs", r.max_abs);
    } else if (q == "cayley") {
      add_unitary(out, unitary::cayley(unitary::hermitian_from_event(loc.event)));
    } else {
      unsupported(q, chart_name);
    }
  }
  return out;
}

}  // namespace lcs::harness
